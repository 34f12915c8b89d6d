#include "ainf/grading.hpp"

#include <algorithm>
#include <sstream>

#include "ainf/error.hpp"

namespace ainf {

int koszul_sign(int d, std::span<const Bidegree> degrees) {
  long s = 0;
  for (const auto& b : degrees) s += b.codim - 1;
  return sign_of_parity(static_cast<long>(d) * s);
}

GradedModule::GradedModule(Ring ring, std::vector<std::string> names, std::vector<Bidegree> degrees)
    : ring_(ring), names_(std::move(names)), degrees_(std::move(degrees)) {
  if (names_.size() != degrees_.size()) throw Error("InvalidModule", "names and degrees differ in length");
  for (size_t i = 0; i < names_.size(); ++i) {
    if (!lookup_.emplace(names_[i], static_cast<int>(i)).second)
      throw Error("InvalidModule", "duplicate basis name '" + names_[i] + "'");
    degrees_[i].ls = ((degrees_[i].ls % 2) + 2) % 2;
  }
}

int GradedModule::index(const std::string& name) const {
  auto it = lookup_.find(name);
  if (it == lookup_.end()) throw Error("UnknownBasis", "no basis element '" + name + "'");
  return it->second;
}

void add_to(Vec& v, int i, const Poly& c) {
  if (c.is_zero()) return;
  auto it = v.find(i);
  if (it == v.end()) {
    v.emplace(i, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
}

void axpy(Vec& v, const Poly& c, const Vec& x) {
  if (c.is_zero()) return;
  for (const auto& [i, a] : x) add_to(v, i, c * a);
}

Vec scaled(const Vec& v, int s) {
  Vec r = v;
  for (auto& [i, a] : r) a *= s;
  return r;
}

std::string vec_str(const GradedModule& m, const Vec& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : v) {
    if (!first) os << " + ";
    bool simple = c.is_constant();
    if (simple) {
      os << c.str() << "*" << m.name(i);
    } else {
      os << "(" << c.str() << ")*" << m.name(i);
    }
    first = false;
  }
  return os.str();
}

static void check_entry(const GradedModule& s, const GradedModule& t, Bidegree deg, int r, int c, const Poly& p) {
  if (p.is_zero()) return;
  auto hd = p.homogeneous_degree();
  Bidegree want = s.degree(c) + deg;
  bool ok = hd.has_value() && t.degree(r).codim + 2 * *hd == want.codim && t.degree(r).ls == want.ls;
  if (ok && t.ring().num_alphas < p.num_vars()) ok = false;
  if (!ok)
    throw Error("DegreeMismatch", "entry (" + t.name(r) + ", " + s.name(c) + ") = " + p.str() +
                                      " is not degree-consistent");
}

GradedMatrix::GradedMatrix(GradedModule source, GradedModule target, Bidegree degree, Mat<Poly> m)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), m_(std::move(m)) {
  degree_.ls = ((degree_.ls % 2) + 2) % 2;
  if (m_.rows() != target_.dim() || m_.cols() != source_.dim())
    throw Error("DimensionMismatch", "matrix shape does not match modules");
  for (int r = 0; r < m_.rows(); ++r)
    for (int c = 0; c < m_.cols(); ++c) check_entry(source_, target_, degree_, r, c, m_(r, c));
}

GradedMatrix GradedMatrix::zero(const GradedModule& source, const GradedModule& target, Bidegree degree) {
  Mat<Poly> m(target.dim(), source.dim());
  m.setConstant(Poly());
  return GradedMatrix(source, target, degree, std::move(m));
}

GradedMatrix GradedMatrix::identity(const GradedModule& mod) {
  Mat<Poly> m(mod.dim(), mod.dim());
  m.setConstant(Poly());
  for (int i = 0; i < mod.dim(); ++i) m(i, i) = Poly(1);
  return GradedMatrix(mod, mod, {0, 0}, std::move(m));
}

Vec GradedMatrix::apply(const Vec& x) const {
  Vec out;
  for (const auto& [c, a] : x)
    for (int r = 0; r < m_.rows(); ++r)
      if (!m_(r, c).is_zero()) add_to(out, r, a * m_(r, c));
  return out;
}

Vec GradedMatrix::column(int c) const {
  Vec out;
  for (int r = 0; r < m_.rows(); ++r)
    if (!m_(r, c).is_zero()) out.emplace(r, m_(r, c));
  return out;
}

bool GradedMatrix::is_zero() const {
  for (int r = 0; r < m_.rows(); ++r)
    for (int c = 0; c < m_.cols(); ++c)
      if (!m_(r, c).is_zero()) return false;
  return true;
}

GradedMatrix GradedMatrix::retarget(const GradedModule& source, const GradedModule& target) const {
  return GradedMatrix(source, target, degree_, m_);
}

bool operator==(const GradedMatrix& a, const GradedMatrix& b) {
  if (!(a.source_ == b.source_) || !(a.target_ == b.target_) || a.degree_ != b.degree_) return false;
  for (int r = 0; r < a.m_.rows(); ++r)
    for (int c = 0; c < a.m_.cols(); ++c)
      if (a.m_(r, c) != b.m_(r, c)) return false;
  return true;
}

GradedMatrix compose(const GradedMatrix& b, const GradedMatrix& a) {
  if (!(a.target() == b.source())) throw Error("DimensionMismatch", "compose: modules do not match");
  Mat<Poly> m(b.target().dim(), a.source().dim());
  m.setConstant(Poly());
  for (int r = 0; r < m.rows(); ++r)
    for (int k = 0; k < b.m().cols(); ++k) {
      if (b(r, k).is_zero()) continue;
      for (int c = 0; c < m.cols(); ++c)
        if (!a(k, c).is_zero()) m(r, c) += b(r, k) * a(k, c);
    }
  return GradedMatrix(a.source(), b.target(), a.degree() + b.degree(), std::move(m));
}

GradedMatrix operator+(const GradedMatrix& a, const GradedMatrix& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()))
    throw Error("DimensionMismatch", "sum: modules do not match");
  Mat<Poly> m = a.m();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m(r, c) += b(r, c);
  // a zero summand carries no degree information
  Bidegree d = a.is_zero() ? b.degree() : a.degree();
  return GradedMatrix(a.source(), a.target(), d, std::move(m));
}

GradedMatrix operator-(const GradedMatrix& a, const GradedMatrix& b) { return a + scaled(b, Poly(-1)); }

GradedMatrix scaled(const GradedMatrix& a, const Poly& s) {
  Mat<Poly> m = a.m();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) m(r, c) = s * m(r, c);
  Bidegree d = a.degree();
  if (auto t = s.homogeneous_degree(); t && *t > 0) d.codim += 2 * *t;
  return GradedMatrix(a.source(), a.target(), d, std::move(m));
}

GradedMatrix sign_twist(const GradedMatrix& f) {
  Mat<Poly> m = f.m();
  for (int c = 0; c < m.cols(); ++c)
    if (f.source().degree(c).codim % 2 != 0)
      for (int r = 0; r < m.rows(); ++r) m(r, c).negate();
  return GradedMatrix(f.source(), f.target(), f.degree(), std::move(m));
}

GradedMatrix unipotent_inverse(const GradedMatrix& m) {
  const auto& mod = m.source();
  if (!(m.source() == m.target()) || m.degree() != Bidegree{0, 0})
    throw Error("NotUnipotent", "unipotent_inverse needs a square degree-(0,0) matrix");
  GradedMatrix id = GradedMatrix::identity(mod);
  GradedMatrix n = id - m;
  for (int r = 0; r < mod.dim(); ++r)
    for (int c = 0; c < mod.dim(); ++c)
      if (!n(r, c).is_zero() && sgn(n(r, c).constant_term()) != 0)
        throw Error("NotUnipotent", "Identity - M has a constant entry at (" + mod.name(r) + ", " + mod.name(c) + ")");
  int lo = 0, hi = 0;
  if (mod.dim() > 0) {
    lo = mod.degree(0).codim;
    hi = lo;
    for (int i = 0; i < mod.dim(); ++i) {
      lo = std::min(lo, mod.degree(i).codim);
      hi = std::max(hi, mod.degree(i).codim);
    }
  }
  int max_terms = (hi - lo) / 2 + 1;
  GradedMatrix sum = id;
  GradedMatrix power = id;
  for (int k = 1; k <= max_terms; ++k) {
    power = compose(power, n);
    if (power.is_zero()) return sum;
    sum = sum + power;
  }
  power = compose(power, n);
  if (!power.is_zero()) throw Error("NotNilpotent", "Neumann series did not terminate");
  return sum;
}

}  // namespace ainf
