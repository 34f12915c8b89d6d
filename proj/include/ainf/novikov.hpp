#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "ainf/poly.hpp"

namespace ainf {

// monoid element: energy E and Maslov index mu
struct Beta {
  Rational E = 0;
  int mu = 0;

  Beta operator+(const Beta& o) const { return {E + o.E, mu + o.mu}; }
  Beta operator-(const Beta& o) const { return {E - o.E, mu - o.mu}; }
  bool is_zero() const { return sgn(E) == 0 && mu == 0; }
  friend bool operator==(const Beta& a, const Beta& b) { return a.E == b.E && a.mu == b.mu; }
  friend std::strong_ordering operator<=>(const Beta& a, const Beta& b) {
    int c = cmp(a.E, b.E);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.mu <=> b.mu;
  }
};

std::string to_string(const Beta& b);  // "E=p/q,mu=m"
Beta parse_beta(const std::string& s);

struct GappedMonoid {
  std::vector<Beta> generators;

  void validate() const;  // throws InvalidGenerator
  bool operator==(const GappedMonoid& o) const { return generators == o.generators; }
};

std::vector<Beta> enumerate_monoid(const GappedMonoid& g, const Rational& e_max);
Rational min_positive_energy(const GappedMonoid& g);  // 0 for the trivial monoid

// (-1)^{(codim + ls + 1) * r1}: moving eps^{r1} across an element of that degree
int left_action_sign(int codim, int ls, int r1);

// truncated sum over monoid elements of a_beta eps^mu T^E
struct NovikovScalar {
  std::map<Beta, Poly> coeffs;
  Rational cutoff = 0;

  void add(const Beta& b, const Poly& c);
  bool is_zero() const { return coeffs.empty(); }
  friend bool operator==(const NovikovScalar& a, const NovikovScalar& b) { return a.coeffs == b.coeffs; }
  std::string str() const;
};

NovikovScalar novikov_mul(const NovikovScalar& a, const NovikovScalar& b, const Rational& e_max);
NovikovScalar novikov_mul(const NovikovScalar& a, const NovikovScalar& b);

}  // namespace ainf
