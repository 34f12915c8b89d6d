#pragma once

#include <optional>

#include "ainf/ainfty.hpp"
#include "ainf/morphisms.hpp"

namespace ainf {

struct Retraction {
  GradedMatrix pi;    // C -> H
  GradedMatrix incl;  // H -> C
  GradedMatrix h;     // C -> C, degree (-1, 0)
  bool side_conditions = false;
  bool cyclic = false;
  bool unital = false;

  const GradedModule& h_module() const { return pi.target(); }
};

// d' x = (-1)^{codim x} d x
inline GradedMatrix dprime(const GradedMatrix& d) { return sign_twist(d); }

Retraction retraction_from_splitting(const GradedMatrix& d, const Pairing* pairing = nullptr,
                                     std::optional<int> unit = std::nullopt);
// verifies the retraction identities and sets the flags of r
Report check_retraction(Retraction& r, const GradedMatrix& d, const Pairing* pairing = nullptr,
                        std::optional<int> unit = std::nullopt);
Retraction correct_side_conditions(const GradedMatrix& d, const GradedMatrix& pi, const GradedMatrix& incl,
                                   const GradedMatrix& h0, const Pairing* pairing = nullptr,
                                   std::optional<int> unit = std::nullopt);

struct TransferResult {
  StructurePtr can;
  AInftyMorphism incl;  // H -> C
  AInftyMorphism proj;  // C -> H
  AInftyHomotopy homotopy;  // id => incl o proj
  int arity = 0;            // components are computed up to this arity
};

// series bound used when no cap is given: 3 * max(k, floor(cutoff / E_min) + 1)
int default_length_cap(int k, const Rational& cutoff, const GappedMonoid& g);

class Transfer {
 public:
  Transfer(const AInftyStructure& a, const Retraction& r, std::optional<int> length_cap = std::nullopt);

  std::map<Beta, Vec> can_component(std::span<const int> x) const;
  std::map<Beta, Vec> incl_component(std::span<const int> x) const;
  std::map<Beta, Vec> proj_component(std::span<const int> x) const;
  std::map<Beta, Vec> homotopy_component(std::span<const int> x) const;

  TransferResult run(int k_max) const;
  // arity needed for checks up to k_max
  int arity_for(int k_max) const;
  const GradedModule& h_module() const { return r_.h_module(); }

 private:
  int cap(int k) const;
  BarElem del(const BarElem& w) const;
  BarElem hhat(const BarElem& w) const;
  std::map<Beta, Vec> proj_length_one(const BarElem& e) const;

  AInftyStructure a_;
  Retraction r_;
  std::optional<int> length_cap_;
  Family i_, p_, h_, ip_, id_;
};

TransferResult transfer(const AInftyStructure& a, const Retraction& r, int k_max,
                        std::optional<int> length_cap = std::nullopt);

// <I x, I y> on H
Pairing induced_pairing(const Pairing& p, const GradedMatrix& incl);

}  // namespace ainf
