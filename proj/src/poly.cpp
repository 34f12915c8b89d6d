#include "ainf/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "ainf/error.hpp"

namespace ainf {

Rational parse_rational(std::string_view s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) throw Error("ParseError", "empty rational literal");
  if (t[0] == '+') t.erase(0, 1);
  for (size_t i = 0; i < t.size(); ++i) {
    char ch = t[i];
    bool ok = std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || (ch == '-' && i == 0);
    if (!ok) throw Error("ParseError", "bad rational literal '" + std::string(s) + "'");
  }
  Rational r;
  if (r.set_str(t, 10) != 0 || t.back() == '/') throw Error("ParseError", "bad rational literal '" + std::string(s) + "'");
  if (r.get_den() == 0) throw Error("ParseError", "zero denominator in '" + std::string(s) + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

static void trim(Poly::Exps& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

Poly::Poly(int v) {
  if (v != 0) terms_.push_back({{}, Rational(v)});
}

Poly::Poly(const Rational& r) {
  if (sgn(r) != 0) terms_.push_back({{}, r});
}

Poly Poly::monomial(Exps e, const Rational& c) {
  Poly p;
  trim(e);
  if (sgn(c) != 0) p.terms_.push_back({std::move(e), c});
  return p;
}

Poly Poly::alpha(int j, int power) {
  Exps e(j, 0);
  e[j - 1] = power;
  return monomial(std::move(e), Rational(1));
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_[0].e.empty()) return terms_[0].c;
  return Rational(0);
}

int Poly::num_vars() const {
  int n = 0;
  for (const auto& t : terms_) n = std::max<int>(n, static_cast<int>(t.e.size()));
  return n;
}

static int total(const Poly::Exps& e) {
  int s = 0;
  for (int x : e) s += x;
  return s;
}

std::optional<int> Poly::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = total(terms_[0].e);
  for (const auto& t : terms_)
    if (total(t.e) != d) return std::nullopt;
  return d;
}

int Poly::max_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, total(t.e));
  return d;
}

Poly Poly::part_of_degree(int t) const {
  Poly p;
  for (const auto& term : terms_)
    if (total(term.e) == t) p.terms_.push_back(term);
  return p;
}

Poly Poly::evaluate(const std::vector<Rational>& point) const {
  Rational s = 0;
  for (const auto& t : terms_) {
    Rational m = t.c;
    for (size_t j = 0; j < t.e.size(); ++j)
      for (int k = 0; k < t.e[j]; ++k) m *= point.at(j);
    s += m;
  }
  return Poly(s);
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].e < o.terms_[j].e)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].e < terms_[i].e) {
      out.push_back(o.terms_[j++]);
    } else {
      Rational c = terms_[i].c + o.terms_[j].c;
      if (sgn(c) != 0) out.push_back({std::move(terms_[i].e), c});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly& Poly::negate() {
  for (auto& t : terms_) t.c = -t.c;
  return *this;
}

Poly Poly::operator-() const {
  Poly p = *this;
  return p.negate();
}

Poly& Poly::operator*=(int s) {
  if (s == 0) {
    terms_.clear();
  } else if (s == -1) {
    negate();
  } else if (s != 1) {
    for (auto& t : terms_) t.c *= s;
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.terms_.empty() || b.terms_.empty()) return Poly();
  if (a.is_constant()) {
    Poly p = b;
    for (auto& t : p.terms_) t.c *= a.terms_[0].c;
    return p;
  }
  if (b.is_constant()) {
    Poly p = a;
    for (auto& t : p.terms_) t.c *= b.terms_[0].c;
    return p;
  }
  std::map<Poly::Exps, Rational> acc;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      Poly::Exps e(std::max(x.e.size(), y.e.size()), 0);
      for (size_t k = 0; k < x.e.size(); ++k) e[k] += x.e[k];
      for (size_t k = 0; k < y.e.size(); ++k) e[k] += y.e[k];
      acc[e] += x.c * y.c;
    }
  Poly p;
  for (auto& [e, c] : acc)
    if (sgn(c) != 0) p.terms_.push_back({e, c});
  return p;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].e != b.terms_[i].e || a.terms_[i].c != b.terms_[i].c) return false;
  return true;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest monomial first reads better
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rational c = it->c;
    if (!first) {
      os << (sgn(c) < 0 ? " - " : " + ");
      c = abs(c);
    }
    os << c.get_str();
    for (size_t j = 0; j < it->e.size(); ++j) {
      if (it->e[j] == 0) continue;
      os << "*a" << (j + 1);
      if (it->e[j] != 1) os << "^" << it->e[j];
    }
    first = false;
  }
  return os.str();
}

namespace {

struct PolyParser {
  std::string s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw Error("ParseError", msg + " in polynomial '" + s + "' at offset " + std::to_string(i));
  }

  Poly factor() {
    skip();
    if (i < s.size() && s[i] == '(') {
      ++i;
      Poly p = sum();
      skip();
      if (i >= s.size() || s[i] != ')') fail("expected ')'");
      ++i;
      return p;
    }
    if (i < s.size() && s[i] == 'a') {
      ++i;
      size_t st = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (st == i) fail("expected alpha index");
      int j = std::stoi(s.substr(st, i - st));
      if (j < 1) fail("alpha index must be positive");
      int pw = 1;
      skip();
      if (i < s.size() && s[i] == '^') {
        ++i;
        skip();
        size_t e0 = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (e0 == i) fail("expected exponent");
        pw = std::stoi(s.substr(e0, i - e0));
      }
      return Poly::alpha(j, pw);
    }
    size_t st = i;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
    if (st == i) fail("unexpected character");
    return Poly(parse_rational(s.substr(st, i - st)));
  }

  Poly product() {
    Poly p = factor();
    for (;;) {
      skip();
      if (i < s.size() && s[i] == '*') {
        ++i;
        p *= factor();
      } else {
        return p;
      }
    }
  }

  Poly sum() {
    skip();
    Poly p;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
      neg = s[i] == '-';
      ++i;
    }
    Poly t = product();
    p += neg ? -t : t;
    for (;;) {
      skip();
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        bool n = s[i] == '-';
        ++i;
        Poly u = product();
        p += n ? -u : u;
      } else {
        return p;
      }
    }
  }
};

}  // namespace

Poly Poly::parse(std::string_view s) {
  PolyParser p{std::string(s)};
  Poly r = p.sum();
  p.skip();
  if (p.i != p.s.size()) p.fail("trailing characters");
  return r;
}

Poly exact_div(Poly a, const Poly& b) {
  if (b.is_zero()) throw Error("DivisionByZero", "polynomial division by zero");
  const auto& lb = b.terms().back();
  Poly q;
  while (!a.is_zero()) {
    const auto& la = a.terms().back();
    Poly::Exps e(std::max(la.e.size(), lb.e.size()), 0);
    for (size_t k = 0; k < e.size(); ++k) {
      int x = k < la.e.size() ? la.e[k] : 0;
      int y = k < lb.e.size() ? lb.e[k] : 0;
      if (x < y) throw Error("NotDivisible", "inexact polynomial division");
      e[k] = x - y;
    }
    Poly t = Poly::monomial(e, la.c / lb.c);
    q += t;
    a -= t * b;
  }
  return q;
}

Poly inverse_constant(const Poly& p) {
  if (!p.is_constant() || p.is_zero()) throw Error("NotInvertible", "only nonzero constants are invertible: " + p.str());
  return Poly(Rational(1) / p.constant_term());
}

}  // namespace ainf
