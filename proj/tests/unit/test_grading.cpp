#include <doctest.h>

#include "ainf/error.hpp"
#include "ainf/linalg.hpp"

using namespace ainf;

namespace {

// sign straight from the exponent, no shortcuts
int naive_koszul(int d, const std::vector<Bidegree>& xs) {
  long e = 0;
  for (const auto& x : xs) e += static_cast<long>(d) * (x.codim - 1);
  return (e % 2 == 0) ? 1 : -1;
}

Mat<Poly> poly_mat(std::initializer_list<std::initializer_list<Poly>> rows) {
  Mat<Poly> m(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
  int r = 0;
  for (const auto& row : rows) {
    int c = 0;
    for (const auto& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

}  // namespace

TEST_SUITE("grading") {
  TEST_CASE("bidegree arithmetic") {
    Bidegree a{3, 1}, b{-1, 1};
    CHECK(a + b == Bidegree{2, 0});
    CHECK(a.shift(2, 1) == Bidegree{5, 0});
    CHECK(a.shift(-4, 3) == Bidegree{-1, 0});
  }

  TEST_CASE("koszul sign examples") {
    std::vector<Bidegree> any = {{2, 0}, {5, 1}};
    CHECK(koszul_sign(0, any) == 1);
    std::vector<Bidegree> one = {{2, 0}};
    CHECK(koszul_sign(1, one) == -1);
    std::vector<Bidegree> two = {{1, 0}, {3, 1}};
    CHECK(koszul_sign(1, two) == 1);
  }

  TEST_CASE("koszul sign is multiplicative under concatenation") {
    std::vector<Bidegree> pool = {{0, 0}, {1, 0}, {2, 1}, {3, 0}, {-1, 1}, {4, 1}};
    for (int d = -2; d <= 2; ++d)
      for (size_t i = 0; i < pool.size(); ++i)
        for (size_t j = 0; j < pool.size(); ++j) {
          std::vector<Bidegree> xs = {pool[i]}, ys = {pool[j], pool[(i + j) % pool.size()]};
          std::vector<Bidegree> all = xs;
          all.insert(all.end(), ys.begin(), ys.end());
          CHECK(koszul_sign(d, all) == koszul_sign(d, xs) * koszul_sign(d, ys));
          CHECK(koszul_sign(d, all) == naive_koszul(d, all));
        }
  }

  TEST_CASE("poly literals round-trip") {
    for (const char* s : {"0", "1", "-3/4", "a1", "2*a1^2*a2", "1/2*a1 - a2^3 + 7"}) {
      Poly p = Poly::parse(s);
      CHECK(Poly::parse(p.str()) == p);
    }
    CHECK(Poly::parse("a1 + a1") == Poly::parse("2*a1"));
    CHECK(Poly::parse("a1^0") == Poly(1));
  }

  TEST_CASE("poly arithmetic") {
    Poly a = Poly::alpha(1), b = Poly::alpha(2);
    Poly s = a + b;
    CHECK(s * s == a * a + Poly(2) * a * b + b * b);
    CHECK((s * (a - b)) == a * a - b * b);
    CHECK(exact_div(a * a - b * b, a - b) == a + b);
    CHECK_THROWS(exact_div(a * a + Poly(1), a));
    CHECK((a * a * b).homogeneous_degree() == 3);
    CHECK(!(a + Poly(1)).homogeneous_degree());
    CHECK((a * Poly(3) + Poly(2)).evaluate({Rational(1, 3)}) == Poly(3));
  }

  TEST_CASE("rationals") {
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("-2") == Rational(-2));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("x"));
  }

  TEST_CASE("graded matrix rejects degree-inconsistent entries") {
    GradedModule m(Ring{1}, {"x", "y"}, {{0, 0}, {2, 0}});
    Mat<Poly> ok = poly_mat({{Poly(0), Poly(0)}, {Poly(1), Poly(0)}});
    CHECK_NOTHROW(GradedMatrix(m, m, {2, 0}, ok));
    // alpha * x sits in degree 2, so y -> alpha * x has degree 0
    Mat<Poly> alpha = poly_mat({{Poly(0), Poly::alpha(1)}, {Poly(0), Poly(0)}});
    CHECK_THROWS_AS(GradedMatrix(m, m, {0, 0}, Mat<Poly>(alpha.transpose())), Error);
    CHECK_NOTHROW(GradedMatrix(m, m, {0, 0}, alpha));
    CHECK_THROWS_WITH_AS(GradedMatrix(m, m, {1, 0}, ok), doctest::Contains("DegreeMismatch"), Error);
  }

  TEST_CASE("unipotent inverse") {
    GradedModule m(Ring{1}, {"x", "y"}, {{0, 0}, {2, 0}});
    auto id = GradedMatrix::identity(m);
    CHECK(unipotent_inverse(id) == id);
    GradedMatrix u(m, m, {0, 0}, poly_mat({{Poly(1), Poly::alpha(1)}, {Poly(0), Poly(1)}}));
    GradedMatrix expect(m, m, {0, 0}, poly_mat({{Poly(1), -Poly::alpha(1)}, {Poly(0), Poly(1)}}));
    CHECK(unipotent_inverse(u) == expect);
    CHECK(compose(u, unipotent_inverse(u)) == id);
    CHECK(compose(unipotent_inverse(u), u) == id);
  }

  TEST_CASE("unipotent inverse agrees with a separate Neumann sum") {
    GradedModule m(Ring{2}, {"x", "y", "z", "t"}, {{0, 0}, {2, 1}, {4, 0}, {6, 1}});
    Poly a = Poly::alpha(1), b = Poly::alpha(2);
    Mat<Poly> raw = poly_mat({{Poly(1), Poly(0), a * b, Poly(0)},
                              {Poly(0), Poly(1), Poly(0), (Poly(3) * a - b) * a},
                              {Poly(0), Poly(0), Poly(1), Poly(0)},
                              {Poly(0), Poly(0), Poly(0), Poly(1)}});
    GradedMatrix u(m, m, {0, 0}, raw);
    Mat<Poly> n = Mat<Poly>::Identity(4, 4) - raw;
    Mat<Poly> sum = Mat<Poly>::Identity(4, 4), power = Mat<Poly>::Identity(4, 4);
    for (int i = 0; i < 4; ++i) {
      power = Mat<Poly>(power * n);
      sum = Mat<Poly>(sum + power);
    }
    CHECK(unipotent_inverse(u).m() == sum);
  }

  TEST_CASE("unipotent inverse errors") {
    GradedModule m(Ring{1}, {"x", "y"}, {{0, 0}, {0, 0}});
    GradedMatrix twice(m, m, {0, 0}, poly_mat({{Poly(2), Poly(0)}, {Poly(0), Poly(1)}}));
    CHECK_THROWS_WITH_AS(unipotent_inverse(twice), doctest::Contains("NotUnipotent"), Error);
  }

  TEST_CASE("exact linear algebra") {
    Mat<Rational> a(3, 3);
    a << 1, 2, 3, 2, 4, 6, 1, 0, 1;
    CHECK(rank<Rational>(a) == 2);
    Mat<Rational> n = nullspace<Rational>(a);
    REQUIRE(n.cols() == 1);
    CHECK(Mat<Rational>(a * n) == Mat<Rational>::Zero(3, 1));
    Mat<Rational> b(2, 2);
    b << 2, 1, 1, 1;
    auto inv = inverse<Rational>(b);
    REQUIRE(inv);
    CHECK(Mat<Rational>(b * *inv) == Mat<Rational>::Identity(2, 2));
    CHECK(!inverse<Rational>(a));
    Mat<Poly> p = poly_mat({{Poly::alpha(1), Poly(1)}, {Poly(1), Poly::alpha(1)}});
    CHECK(determinant(p) == Poly::alpha(1) * Poly::alpha(1) - Poly(1));
    CHECK(rank_over_fraction_field(p) == 2);
  }
}
