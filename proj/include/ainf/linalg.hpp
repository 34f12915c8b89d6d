#pragma once

#include <optional>
#include <vector>

#include "ainf/grading.hpp"

namespace ainf {

// Exact elimination over a field scalar S (Rational in practice).
template <class S>
struct Echelon {
  Mat<S> r;                 // reduced row echelon form
  std::vector<int> pivots;  // pivot column of each nonzero row
};

template <class S>
Echelon<S> rref(Mat<S> a) {
  Echelon<S> out;
  int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
  int row = 0;
  for (int c = 0; c < cols && row < rows; ++c) {
    int p = -1;
    for (int r = row; r < rows; ++r)
      if (a(r, c) != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    a.row(p).swap(a.row(row));
    S inv = S(1) / a(row, c);
    for (int k = 0; k < cols; ++k) a(row, k) *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == row || a(r, c) == 0) continue;
      S f = a(r, c);
      for (int k = 0; k < cols; ++k) a(r, k) -= f * a(row, k);
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.r = std::move(a);
  return out;
}

template <class S>
int rank(const Mat<S>& a) {
  return static_cast<int>(rref<S>(a).pivots.size());
}

// columns form a basis of the kernel, one per free column (that entry set to 1)
template <class S>
Mat<S> nullspace(const Mat<S>& a) {
  auto e = rref<S>(a);
  int cols = static_cast<int>(a.cols());
  std::vector<bool> is_pivot(cols, false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<int> free;
  for (int c = 0; c < cols; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Mat<S> n(cols, static_cast<int>(free.size()));
  n.setConstant(S(0));
  for (size_t j = 0; j < free.size(); ++j) {
    n(free[j], j) = S(1);
    for (size_t i = 0; i < e.pivots.size(); ++i) n(e.pivots[i], j) = -e.r(i, free[j]);
  }
  return n;
}

// some X with A X = B, or nullopt when inconsistent
template <class S>
std::optional<Mat<S>> solve(const Mat<S>& a, const Mat<S>& b) {
  int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
  Mat<S> aug(rows, cols + b.cols());
  aug << a, b;
  auto e = rref<S>(aug);
  Mat<S> x(cols, b.cols());
  x.setConstant(S(0));
  for (size_t i = 0; i < e.pivots.size(); ++i) {
    int p = e.pivots[i];
    if (p >= cols) return std::nullopt;
    for (int j = 0; j < b.cols(); ++j) x(p, j) = e.r(i, cols + j);
  }
  return x;
}

template <class S>
std::optional<Mat<S>> inverse(const Mat<S>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  Mat<S> id = Mat<S>::Identity(a.rows(), a.cols());
  if (rank<S>(a) != a.rows()) return std::nullopt;
  return solve<S>(a, id);
}

Mat<Rational> to_rational(const Mat<Poly>& m);  // throws NotAField on non-constants
Mat<Poly> to_poly(const Mat<Rational>& m);
Mat<Poly> evaluate(const Mat<Poly>& m, const std::vector<Rational>& point);

// rank over the fraction field, by fraction-free elimination
int rank_over_fraction_field(const Mat<Poly>& m);
Poly determinant(const Mat<Poly>& m);

// Data of a splitting C = H + im(d) + O for a field-coefficient differential.
struct Splitting {
  Mat<Rational> reps;    // columns: representatives of a cohomology basis
  Mat<Rational> image;   // columns: d(o_j)
  Mat<Rational> others;  // columns: o_j
  Mat<Rational> coords;  // inverse of [reps | image | others]
};

// `preferred` lists closed vectors to try first as cohomology representatives.
Splitting split_complex(const Mat<Rational>& d, const std::vector<Mat<Rational>>& preferred = {});

}  // namespace ainf
