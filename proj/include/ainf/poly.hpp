#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ainf {

using Rational = mpq_class;

Rational parse_rational(std::string_view s);
std::string to_string(const Rational& r);

// Sparse polynomial in alpha_1..alpha_n with rational coefficients. Exponent
// vectors are stored without trailing zeros, so the constant monomial is the
// empty vector and lexicographic order on the stored vectors is a monomial order.
class Poly {
 public:
  using Exps = std::vector<int>;
  struct Term {
    Exps e;
    Rational c;
  };

  Poly() = default;
  Poly(int v);  // NOLINT(google-explicit-constructor)
  Poly(const Rational& r);  // NOLINT(google-explicit-constructor)

  static Poly monomial(Exps e, const Rational& c);
  static Poly alpha(int j, int power = 1);  // j is 1-based

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].e.empty()); }
  Rational constant_term() const;
  int num_vars() const;
  // total alpha-degree when homogeneous, nullopt for zero or inhomogeneous
  std::optional<int> homogeneous_degree() const;
  int max_degree() const;
  Poly part_of_degree(int t) const;
  Poly evaluate(const std::vector<Rational>& point) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(int s);
  Poly& negate();
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string str() const;
  static Poly parse(std::string_view s);

 private:
  std::vector<Term> terms_;
};

// exact quotient a / b; throws if b does not divide a
Poly exact_div(Poly a, const Poly& b);
Poly inverse_constant(const Poly& p);

inline int sign_of_parity(long x) { return (x % 2 == 0) ? 1 : -1; }

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

}  // namespace ainf

namespace Eigen {
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 10, AddCost = 10, MulCost = 10 };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};
template <>
struct NumTraits<ainf::Poly> : GenericNumTraits<ainf::Poly> {
  typedef ainf::Poly Real;
  typedef ainf::Poly NonInteger;
  typedef ainf::Poly Nested;
  typedef ainf::Poly Literal;
  enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 20, AddCost = 20, MulCost = 40 };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
