#pragma once

#include <optional>
#include <vector>

#include "ainf/ainfty.hpp"
#include "ainf/hpl.hpp"

namespace ainf {

struct TStarModule {
  GradedModule module;  // rational coefficients
  GradedMatrix d;
  int n_alphas = 0;
  std::vector<GradedMatrix> iota;  // degree (-1, 0)
  std::vector<GradedMatrix> lie;   // degree (0, 0)
};

Report check_tstar(const TStarModule& m);

struct InvariantPart {
  GradedModule module;
  Mat<Rational> embed;  // C <- C^T, columns span the common kernel of the L_a
  Mat<Rational> proj;   // C^T <- C, projection along the chosen complement
  bool whole = false;   // every basis element is invariant
};

InvariantPart invariant_subcomplex(const TStarModule& m);

struct EquivariantComplex {
  InvariantPart inv;
  GradedModule module;  // invariant basis over Q[alpha]
  GradedMatrix d;       // d restricted, over Q[alpha]
  std::vector<GradedMatrix> iota;
  GradedMatrix D;       // d - sum alpha_a iota_a
};

EquivariantComplex cartan_complex(const TStarModule& m);

// x -> (-1)^{codim x} iota_a x as a linear component family of bar degree -1
Family iota_prime_family(const GradedMatrix& iota);
Family bracket(const Family& h1, const Family& h2, const GradedModule& mod, const Rational& cutoff, int k_max);

Report check_invariance(const AInftyStructure& a, const TStarModule& m, int k_max);
// same identity evaluated as [iota-hat', del] = 0 on words
Report check_invariance_bar(const AInftyStructure& a, const TStarModule& m, int k_max);

AInftyStructure equivariant_extend(const AInftyStructure& a, const TStarModule& m);
// specializations of a structure over Q[alpha]
AInftyStructure specialize_alpha_zero(const AInftyStructure& a);
AInftyStructure drop_energy(const AInftyStructure& a);
// DGA on the Cartan complex: D and the alpha-linear product
Dga cartan_weil_dga(const Dga& base, const TStarModule& m);

bool check_even_cohomology(const GradedMatrix& d);
// dim over Q of H(C, d) in each bidegree
std::map<Bidegree, int> cohomology_dims(const GradedMatrix& d);

struct ClosedLift {
  std::vector<Vec> lifts;  // D-closed, reducing to the base representatives at alpha = 0
  Cohomology base;         // cohomology of D at alpha = 0
};

// order-by-order lift; throws LiftObstructed and checks freeness
ClosedLift lift_closed(const GradedMatrix& D, const std::vector<Vec>& preferred = {});
ClosedLift lift_closed_basis(const EquivariantComplex& e);

// second half adjusted so that <w_i, w_{N+j}> = delta_ij
std::vector<Vec> normalize_basis(const GradedModule& mod, const std::vector<Vec>& lifts, const Pairing& p);

struct EquivariantRetraction {
  Retraction r;
  EquivariantComplex complex;
  std::optional<Pairing> pairing;
  std::optional<int> unit;
};

// base: retraction of the invariant complex over Q; pairing and unit refer to the invariant basis
EquivariantRetraction equivariant_retraction(const TStarModule& m, const Retraction& base,
                                             const Pairing* pairing = nullptr, std::optional<int> unit = std::nullopt);

TStarModule tensor(const TStarModule& a, const TStarModule& b);

struct KunnethResult {
  Report report;
  int rank1 = 0, rank2 = 0, rank = 0;
};

KunnethResult kunneth_check(const TStarModule& a, const TStarModule& b);

Pairing extend_pairing(const Pairing& p, const EquivariantComplex& e);

}  // namespace ainf
