#include "ainf/linalg.hpp"

#include "ainf/error.hpp"

namespace ainf {

Mat<Rational> to_rational(const Mat<Poly>& m) {
  Mat<Rational> r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_constant()) throw Error("NotAField", "entry " + m(i, j).str() + " is not a rational");
      r(i, j) = m(i, j).constant_term();
    }
  return r;
}

Mat<Poly> to_poly(const Mat<Rational>& m) {
  Mat<Poly> r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = Poly(m(i, j));
  return r;
}

Mat<Poly> evaluate(const Mat<Poly>& m, const std::vector<Rational>& point) {
  Mat<Poly> r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).evaluate(point);
  return r;
}

namespace {

struct Bareiss {
  int rank = 0;
  int swaps = 0;
  Poly last;
};

Bareiss bareiss(Mat<Poly> a) {
  Bareiss out;
  int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
  Poly prev(1);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!a(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) {
      a.row(p).swap(a.row(r));
      ++out.swaps;
    }
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) a(i, j) = exact_div(a(r, c) * a(i, j) - a(i, c) * a(r, j), prev);
      a(i, c) = Poly();
    }
    prev = a(r, c);
    ++r;
  }
  out.rank = r;
  out.last = prev;
  return out;
}

}  // namespace

int rank_over_fraction_field(const Mat<Poly>& m) { return bareiss(m).rank; }

Poly determinant(const Mat<Poly>& m) {
  if (m.rows() != m.cols()) throw Error("DimensionMismatch", "determinant of a non-square matrix");
  if (m.rows() == 0) return Poly(1);
  auto b = bareiss(m);
  if (b.rank < m.rows()) return Poly();
  return b.swaps % 2 ? -b.last : b.last;
}

Splitting split_complex(const Mat<Rational>& d, const std::vector<Mat<Rational>>& preferred) {
  int n = static_cast<int>(d.rows());
  Splitting s;
  auto e = rref<Rational>(d);
  int r = static_cast<int>(e.pivots.size());
  s.others = Mat<Rational>::Zero(n, r);
  s.image = Mat<Rational>(n, r);
  for (int j = 0; j < r; ++j) {
    s.others(e.pivots[j], j) = 1;
    s.image.col(j) = d.col(e.pivots[j]);
  }
  Mat<Rational> ker = nullspace<Rational>(d);
  int h = static_cast<int>(ker.cols()) - r;
  std::vector<Mat<Rational>> candidates = preferred;
  for (int j = 0; j < ker.cols(); ++j) candidates.push_back(ker.col(j));
  Mat<Rational> span = s.image;
  std::vector<Mat<Rational>> chosen;
  for (const auto& v : candidates) {
    if (static_cast<int>(chosen.size()) == h) break;
    Mat<Rational> dv = d * v;
    bool closed = true;
    for (int i = 0; i < n; ++i)
      if (dv(i, 0) != 0) closed = false;
    if (!closed) continue;
    Mat<Rational> trial(n, span.cols() + 1);
    trial << span, v;
    if (rank<Rational>(trial) == trial.cols()) {
      span = trial;
      chosen.push_back(v);
    }
  }
  s.reps = Mat<Rational>(n, h);
  for (int j = 0; j < h; ++j) s.reps.col(j) = chosen[j];
  Mat<Rational> basis(n, n);
  basis << s.reps, s.image, s.others;
  auto inv = inverse<Rational>(basis);
  if (!inv) throw Error("InternalError", "splitting basis is singular");
  s.coords = *inv;
  return s;
}

}  // namespace ainf
