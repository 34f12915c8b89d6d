#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "ainf/grading.hpp"
#include "ainf/novikov.hpp"

namespace ainf {

struct Label {
  int k = 0;
  Beta beta;
  friend bool operator==(const Label&, const Label&) = default;
  friend std::strong_ordering operator<=>(const Label& a, const Label& b) {
    if (auto c = a.k <=> b.k; c != 0) return c;
    return a.beta <=> b.beta;
  }
};

// Sparse family of multilinear components f_{k,beta}(x_1..x_k), stored on basis
// tuples. `degree` is the degree of the induced map on the bar construction
// (1 for a differential, 0 for a morphism, -1 for a homotopy).
class Family {
 public:
  using Table = std::unordered_map<std::uint64_t, Vec>;

  Family() = default;
  Family(int source_dim, int degree) : dim_(source_dim), degree_(degree) {}

  int source_dim() const { return dim_; }
  int degree() const { return degree_; }

  void set(const Label& l, std::span<const int> in, Vec out);
  void add(const Label& l, std::span<const int> in, const Vec& out);
  const Vec* get(const Label& l, const int* in) const;
  const Vec* get(const Label& l, std::span<const int> in) const { return get(l, in.data()); }

  const std::map<Label, Table>& table() const { return table_; }
  std::vector<int> decode(std::uint64_t code, int k) const;
  int max_arity() const;
  bool empty() const { return table_.empty(); }
  Family restricted(int max_k) const;
  Family without(const Label& l) const;

  friend bool operator==(const Family& a, const Family& b);

 private:
  std::uint64_t code(const int* in, int k) const;
  int dim_ = 0;
  int degree_ = 0;
  std::map<Label, Table> table_;
};

// Visits every stored component in deterministic (label, tuple) order.
template <class F>
void for_each_component(const Family& f, F&& fn) {
  for (const auto& [label, tab] : f.table()) {
    std::vector<std::pair<std::vector<int>, const Vec*>> rows;
    rows.reserve(tab.size());
    for (const auto& [c, v] : tab) rows.push_back({f.decode(c, label.k), &v});
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [in, v] : rows) fn(label, in, *v);
  }
}

// A bar-construction word x_1 (x) ... (x) x_n with its Novikov monomial moved to
// the right end: (x_1..x_n) eps^mu T^E.
struct Word {
  Beta beta;
  std::vector<int> letters;
  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.letters.size() <=> b.letters.size(); c != 0) return c;
    if (auto c = a.beta <=> b.beta; c != 0) return c;
    return a.letters <=> b.letters;
  }
};

using BarElem = std::map<Word, Poly>;

void add_term(BarElem& e, const Word& w, const Poly& c);
void add_scaled(BarElem& acc, const BarElem& x, const Poly& c);
BarElem single_word(std::vector<int> letters, Beta beta = {}, const Poly& c = Poly(1));
BarElem project_length(const BarElem& e, int len);
BarElem times_monomial(const BarElem& e, const Beta& b, const Rational& cutoff);
std::string bar_str(const GradedModule& mod, const BarElem& e);

// parity of an element for the epsilon crossing sign: codim + ls + 1
inline int crossing_parity(Bidegree d) { return d.codim + d.ls + 1; }

// canonical form of eps^mu T^E y (scalar written on the left)
BarElem letter_term(const GradedModule& mod, const Vec& y, const Beta& b);
// u (x) v over the Novikov ring; `mod` grades the letters of v
BarElem concat(const GradedModule& mod, const BarElem& u, const BarElem& v, const Rational& cutoff);

// coderivation of degree rho.degree() generated by the components rho
BarElem extend_to_coderivation(const Family& rho, const GradedModule& mod, const BarElem& w,
                               const Rational& cutoff, bool skip_linear = false);
// coalgebra morphism generated by f
BarElem apply_morphism(const Family& f, const GradedModule& target, const BarElem& w, const Rational& cutoff);
// (f1, f2)-coderivation generated by rho; f1 acts left of the hit slot, f2 right of it
BarElem apply_fcoderivation(const Family& f1, const Family& f2, const Family& rho, const GradedModule& source,
                            const GradedModule& target, const BarElem& w, const Rational& cutoff);

// length-one part read back as components with the scalar on the left
std::map<Beta, Vec> left_components(const GradedModule& mod, const BarElem& e);

// Sum over insertion positions of outer(x_1..x_{i-1}, inner(x_i..), ..) with the
// sign d_in * sum_{j<i}(codim x_j - 1) + mu_in * (sum_{j<i}(codim x_j + ls x_j + 1) + d_out),
// grouped by total monoid element. With maslov_terms false the mu-dependent part
// of the sign is dropped.
std::map<Beta, Vec> insertion_sum(const Family& outer, const Family& inner, const GradedModule& mod,
                                  std::span<const int> x, const Rational& cutoff, bool maslov_terms = true);

Family linear_family(const GradedMatrix& m, int degree);
Family identity_family(int dim);

// pi_1 op(x_1..x_k) on every basis tuple with k <= k_max, read back as components
Family collect_components(int source_dim, const GradedModule& target, int degree, int k_max,
                          const std::function<BarElem(const BarElem&)>& op);

// all tuples of length k over dim basis elements, lexicographic
std::vector<std::vector<int>> all_tuples(int dim, int k);

}  // namespace ainf
