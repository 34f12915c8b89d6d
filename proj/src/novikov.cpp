#include "ainf/novikov.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ainf/error.hpp"

namespace ainf {

std::string to_string(const Beta& b) { return "E=" + b.E.get_str() + ",mu=" + std::to_string(b.mu); }

Beta parse_beta(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  auto comma = t.find(',');
  if (comma == std::string::npos) throw Error("ParseError", "monoid element needs 'E,mu': " + s);
  std::string e = t.substr(0, comma), m = t.substr(comma + 1);
  if (e.rfind("E=", 0) == 0) e = e.substr(2);
  if (m.rfind("mu=", 0) == 0) m = m.substr(3);
  Beta b;
  b.E = parse_rational(e);
  try {
    size_t used = 0;
    b.mu = std::stoi(m, &used);
    if (used != m.size()) throw std::invalid_argument(m);
  } catch (const std::exception&) {
    throw Error("ParseError", "bad Maslov index '" + m + "'");
  }
  return b;
}

void GappedMonoid::validate() const {
  for (const auto& g : generators)
    if (sgn(g.E) <= 0) throw Error("InvalidGenerator", "generator " + to_string(g) + " needs positive energy");
}

std::vector<Beta> enumerate_monoid(const GappedMonoid& g, const Rational& e_max) {
  g.validate();
  std::set<Beta> seen{Beta{}};
  std::vector<Beta> frontier{Beta{}};
  while (!frontier.empty()) {
    std::vector<Beta> next;
    for (const auto& b : frontier)
      for (const auto& gen : g.generators) {
        Beta c = b + gen;
        if (c.E <= e_max && seen.insert(c).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

Rational min_positive_energy(const GappedMonoid& g) {
  Rational m = 0;
  for (const auto& gen : g.generators)
    if (sgn(m) == 0 || gen.E < m) m = gen.E;
  return m;
}

int left_action_sign(int codim, int ls, int r1) {
  return sign_of_parity(static_cast<long>(codim + ls + 1) * r1);
}

void NovikovScalar::add(const Beta& b, const Poly& c) {
  if (b.E > cutoff || c.is_zero()) return;
  auto& slot = coeffs[b];
  slot += c;
  if (slot.is_zero()) coeffs.erase(b);
}

std::string NovikovScalar::str() const {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, c] : coeffs) {
    if (!first) os << " + ";
    os << "(" << c.str() << ")[" << to_string(b) << "]";
    first = false;
  }
  return os.str();
}

NovikovScalar novikov_mul(const NovikovScalar& a, const NovikovScalar& b, const Rational& e_max) {
  NovikovScalar r;
  r.cutoff = std::min({a.cutoff, b.cutoff, e_max});
  for (const auto& [x, cx] : a.coeffs)
    for (const auto& [y, cy] : b.coeffs) r.add(x + y, cx * cy);
  return r;
}

NovikovScalar novikov_mul(const NovikovScalar& a, const NovikovScalar& b) {
  return novikov_mul(a, b, std::min(a.cutoff, b.cutoff));
}

}  // namespace ainf
