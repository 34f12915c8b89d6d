#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ainf/grading.hpp"
#include "ainf/linalg.hpp"
#include "ainf/novikov.hpp"
#include "ainf/words.hpp"

namespace ainf {

struct Violation {
  std::string check;
  int k = -1;
  Beta beta;
  std::vector<int> inputs;
  std::string detail;
};

struct Report {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string check, int k, Beta beta, std::vector<int> inputs, std::string detail);
  void absorb(const Report& r);
  void sort();  // by (k, beta, inputs, check)
  std::string str(const GradedModule& mod) const;
};

// <e_i, e_j> = gram(i, j); values in R[-p, q]
struct Pairing {
  Bidegree degree;
  Mat<Poly> gram;
  const Poly& operator()(int i, int j) const { return gram(i, j); }
  Poly eval(const Vec& u, const Vec& v) const;
};

struct AInftyStructure {
  GradedModule module;
  GappedMonoid monoid;
  Rational cutoff = 0;
  Family ops;  // degree-1 components m_{k,beta}
  std::optional<int> unit;
  std::optional<Pairing> pairing;

  const Ring& ring() const { return module.ring(); }
  // d with m_{1,0} x = (-1)^{codim x} d x
  GradedMatrix differential() const;
  bool has_linear_part() const;
};

bool operator==(const Pairing& a, const Pairing& b);
bool operator==(const AInftyStructure& a, const AInftyStructure& b);

AInftyStructure empty_structure(const GradedModule& mod, const GappedMonoid& g, const Rational& cutoff);

struct Dga {
  GradedModule module;
  GradedMatrix d;
  std::map<std::pair<int, int>, Vec> product;  // (x, y) -> x ^ y
  std::optional<std::vector<Poly>> integral;   // value on each basis element
  Bidegree pairing_degree;
  std::optional<int> unit;
};

Vec dga_product(const Dga& a, const Vec& x, const Vec& y);
AInftyStructure from_dga(const Dga& a, const GappedMonoid& g = {}, const Rational& cutoff = 0);

// expected degree of f_{k,beta}(x_1..x_k) for a component family of bar degree d
Bidegree component_degree(const GradedModule& mod, std::span<const int> in, int d, const Beta& b);
void check_family_degrees(Report& rep, const Family& f, const GradedModule& source, const GradedModule& target,
                          const std::string& what);

Report validate_structure(const AInftyStructure& a, int k_max, bool maslov_terms = true);
Report validate_unit(const AInftyStructure& a, int e, int k_max);
Report validate_cyclic(const AInftyStructure& a, const Pairing& p, int k_max);

struct Cohomology {
  GradedModule h;
  GradedMatrix pi;    // C -> H
  GradedMatrix incl;  // H -> C
  Splitting split;
};

Cohomology cohomology(const AInftyStructure& a);
// cohomology of a field-coefficient complex with representatives tried from `preferred` first
Cohomology cohomology_of(const GradedMatrix& d, const std::vector<Vec>& preferred = {});

}  // namespace ainf
