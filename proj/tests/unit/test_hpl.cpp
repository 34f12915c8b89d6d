#include <doctest.h>

#include "ainf/error.hpp"
#include "ainf/fixtures.hpp"
#include "ainf/io.hpp"
#include "ainf/hpl.hpp"

using namespace ainf;

namespace {

Vec vec(const GradedModule& m, const std::string& s) { return parse_vec(m, s); }

GradedMatrix with_entry(const GradedMatrix& h, int row, int col, int v) {
  Mat<Poly> k = h.m();
  k(row, col) += Poly(v);
  return GradedMatrix(h.source(), h.target(), h.degree(), k);
}

std::map<Beta, Vec> nonzero(std::map<Beta, Vec> m) {
  std::erase_if(m, [](const auto& kv) { return kv.second.empty(); });
  return m;
}

}  // namespace

TEST_SUITE("hpl") {
  TEST_CASE("retraction of a point") {
    auto pt = build_fixture("PT").structure;
    Retraction r = retraction_from_splitting(pt.differential(), &*pt.pairing, pt.unit);
    CHECK(r.h.is_zero());
    CHECK(r.pi.m() == GradedMatrix::identity(pt.module).m());
    CHECK(r.incl.m() == GradedMatrix::identity(pt.module).m());
    CHECK(r.side_conditions);
    CHECK(r.cyclic);
    CHECK(r.unital);
  }

  TEST_CASE("retraction of M6") {
    auto m6 = build_fixture("M6").structure;
    const auto& mod = m6.module;
    for (bool with_pairing : {false, true}) {
      Retraction r = retraction_from_splitting(m6.differential(), with_pairing ? &*m6.pairing : nullptr, m6.unit);
      CHECK(r.h.column(mod.index("b")) == vec(mod, "a"));
      CHECK(r.h.column(mod.index("q")) == vec(mod, "-1*p"));
      for (const char* n : {"1", "a", "p", "w"}) CHECK(r.h.column(mod.index(n)).empty());
      CHECK(r.side_conditions);
      CHECK(r.unital);
      CHECK(r.cyclic == with_pairing);
      // the same identities, checked from scratch
      GradedMatrix dp = dprime(m6.differential());
      GradedMatrix lhs = compose(dp, r.h) + compose(r.h, dp);
      CHECK(lhs == compose(r.incl, r.pi) - GradedMatrix::identity(mod));
      CHECK(compose(r.pi, r.incl) == GradedMatrix::identity(r.h_module()));
    }
  }

  TEST_CASE("check_retraction flags a homotopy that hits the image of I") {
    auto m6 = build_fixture("M6").structure;
    const auto& mod = m6.module;
    GradedMatrix d = m6.differential();
    Retraction r = retraction_from_splitting(d);
    Mat<Poly> k = r.h.m();
    k(mod.index("q"), mod.index("w")) = Poly(1);
    Retraction bad{r.pi, r.incl, GradedMatrix(mod, mod, {-1, 0}, k)};
    Report rep = check_retraction(bad, d);
    CHECK(!rep.ok());
    CHECK(!bad.side_conditions);
  }

  TEST_CASE("correcting side conditions") {
    auto m6 = build_fixture("M6").structure;
    const auto& mod = m6.module;
    GradedMatrix d = m6.differential();
    Retraction r = retraction_from_splitting(d, &*m6.pairing, m6.unit);
    GradedMatrix tilde = with_entry(r.h, mod.index("1"), mod.index("a"), 1);
    Retraction fixed = correct_side_conditions(d, r.pi, r.incl, tilde, &*m6.pairing, m6.unit);
    CHECK(fixed.h == r.h);
    CHECK(check_retraction(fixed, d, &*m6.pairing, m6.unit).ok());
    CHECK(fixed.side_conditions);

    Retraction again = correct_side_conditions(d, r.pi, r.incl, r.h, &*m6.pairing, m6.unit);
    CHECK(check_retraction(again, d, &*m6.pairing, m6.unit).ok());

    GradedMatrix broken = with_entry(r.h, mod.index("a"), mod.index("b"), 1);
    CHECK_THROWS_WITH_AS(correct_side_conditions(d, r.pi, r.incl, broken), doctest::Contains("NotAHomotopy"), Error);
  }

  TEST_CASE("transfer preconditions") {
    auto m6 = build_fixture("M6").structure;
    const auto& mod = m6.module;
    Retraction r = retraction_from_splitting(m6.differential());
    Retraction loose{r.pi, r.incl, with_entry(r.h, mod.index("1"), mod.index("a"), 1)};
    CHECK_THROWS_WITH_AS(Transfer(m6, loose), doctest::Contains("SideConditionsMissing"), Error);
    auto s1 = build_fixture("S1").structure;
    Retraction other = retraction_from_splitting(s1.differential());
    CHECK_THROWS_WITH_AS(Transfer(m6, other), doctest::Contains("NotAPerturbation"), Error);
    auto shifted = m6;
    shifted.ops = shifted.ops.without({1, {}});
    CHECK_THROWS_WITH_AS(Transfer(shifted, r), doctest::Contains("NotAPerturbation"), Error);
  }

  TEST_CASE("curvature of DEF-E survives transfer") {
    auto a = build_fixture("DEF-E").structure;
    Retraction r = retraction_from_splitting(a.differential(), nullptr, a.unit);
    Transfer t(a, r);
    auto c = nonzero(t.can_component(std::vector<int>{}));
    REQUIRE(c.size() == 1);
    CHECK(c.begin()->first == Beta{1, 2});
    CHECK(c.begin()->second == vec(r.h_module(), "1*" + r.h_module().name(0)));
  }

  TEST_CASE("M6 minimal model is its cohomology ring") {
    auto a = build_fixture("M6").structure;
    Retraction r = retraction_from_splitting(a.differential(), &*a.pairing, a.unit);
    TransferResult res = transfer(a, r, 4);
    const auto& can = *res.can;
    for (const auto& [l, tab] : can.ops.table()) {
      CHECK(l.beta.is_zero());
      if (l.k != 2) {
        bool all_zero = true;
        for (const auto& [c, v] : tab) all_zero = all_zero && v.empty();
        CHECK(all_zero);
      }
    }
    CHECK(validate_structure(can, 4).ok());
    // the top class pairs to 1 with the unit class
    int top = can.module.degree(0).codim == 0 ? 1 : 0;
    CHECK(can.pairing->gram(1 - top, top) != Poly(0));
  }

  TEST_CASE("the default length cap") {
    CHECK(default_length_cap(2, 0, {}) == 6);
    CHECK(default_length_cap(1, 2, {{{1, 2}}}) == 9);
    CHECK(default_length_cap(4, Rational(5, 2), {{{Rational(1, 2), 1}}}) == 18);
  }
}
