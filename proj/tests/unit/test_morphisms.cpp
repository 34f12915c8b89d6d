#include <doctest.h>

#include <cstdlib>

#include "ainf/error.hpp"
#include "ainf/fixtures.hpp"
#include "ainf/hpl.hpp"

using namespace ainf;

namespace {

unsigned seed() {
  const char* s = std::getenv("AINF_SEED");
  return s ? static_cast<unsigned>(std::strtoul(s, nullptr, 10)) : 7u;
}

StructurePtr ptr(const AInftyStructure& a) { return std::make_shared<const AInftyStructure>(a); }

GradedMatrix matrix(const GradedModule& m, std::initializer_list<std::tuple<int, int, int>> entries) {
  Mat<Poly> x(m.dim(), m.dim());
  x.setConstant(Poly());
  for (const auto& [r, c, v] : entries) x(r, c) = Poly(v);
  return GradedMatrix(m, m, {0, 0}, x);
}

}  // namespace

TEST_SUITE("morphisms") {
  TEST_CASE("identity morphism") {
    for (const char* n : {"M6", "DEF-O", "N3"}) {
      auto a = ptr(build_fixture(n).structure);
      auto id = identity_morphism(a);
      CHECK(check_morphism(id, 3).ok());
      BarElem w = single_word({0, 1, 2});
      CHECK(id.apply(w) == w);
      CHECK(check_unital_morphism(id, *a->unit, *a->unit).ok());
      if (a->pairing) CHECK(check_cyclic_morphism(id, *a->pairing, *a->pairing, 3).ok());
    }
  }

  TEST_CASE("a linear morphism acts letterwise") {
    auto a = ptr(build_fixture("S1").structure);
    auto f = linear_morphism(a, a, matrix(a->module, {{0, 0, 1}, {1, 1, 3}}));
    BarElem w = single_word({0, 1});
    BarElem expect = single_word({0, 1}, {}, Poly(3));
    CHECK(f.apply(w) == expect);
  }

  TEST_CASE("composition of linear morphisms is the matrix product") {
    auto a = ptr(build_fixture("S1").structure);
    GradedMatrix f = matrix(a->module, {{0, 0, 2}, {1, 1, 3}});
    GradedMatrix g = matrix(a->module, {{0, 0, 5}, {1, 1, -1}});
    auto gf = compose(linear_morphism(a, a, g), linear_morphism(a, a, f), 3);
    CHECK(families_agree(gf.comps, linear_family(compose(g, f), 0), 3));
  }

  TEST_CASE("composition with the identity and associativity on words") {
    auto a = build_fixture("N3").structure;
    Retraction r = retraction_from_splitting(a.differential());
    TransferResult t = transfer(a, r, 3);
    auto id = identity_morphism(t.incl.target);
    CHECK(families_agree(compose(id, t.incl, 3).comps, t.incl.comps, 3));
    auto pi_i = compose(t.proj, t.incl, 3);
    CHECK(check_morphism(pi_i, 3).ok());
    auto ip = compose(t.incl, t.proj, 3);
    CHECK(check_morphism(ip, 3).ok());
    for (int k = 1; k <= 3; ++k)
      for (const auto& x : all_tuples(a.module.dim(), k)) {
        BarElem w = single_word(x);
        CHECK(project_length(ip.apply(w), 1) == project_length(t.incl.apply(t.proj.apply(w)), 1));
      }
  }

  TEST_CASE("a non-chain linear map is caught") {
    auto a = ptr(build_fixture("M6").structure);
    int ia = a->module.index("a");
    auto f = linear_morphism(a, a, matrix(a->module, {{ia, ia, 1}}));
    Report r = check_morphism(f, 2);
    REQUIRE(!r.ok());
    CHECK(r.violations.front().k == 1);
  }

  TEST_CASE("unital morphism check") {
    auto a = ptr(build_fixture("M6").structure);
    auto two = linear_morphism(a, a, scaled(GradedMatrix::identity(a->module), Poly(2)));
    CHECK(!check_unital_morphism(two, *a->unit, *a->unit).ok());
  }

  TEST_CASE("homotopy checks") {
    auto a = ptr(build_fixture("M6").structure);
    auto id = identity_morphism(a);
    AInftyHomotopy same{id, id, Family(a->module.dim(), -1)};
    CHECK(check_homotopy(same, 3).ok());
    auto two = linear_morphism(a, a, scaled(GradedMatrix::identity(a->module), Poly(2)));
    AInftyHomotopy apart{id, two, Family(a->module.dim(), -1)};
    CHECK(!check_homotopy(apart, 3).ok());
  }

  TEST_CASE("projection is not cyclic when the differential is nonzero") {
    auto m6 = build_fixture("M6").structure;
    Retraction r = retraction_from_splitting(m6.differential(), &*m6.pairing, m6.unit);
    TransferResult t = transfer(m6, r, 3);
    CHECK(!check_cyclic_morphism(t.proj, *m6.pairing, *t.can->pairing, 3).ok());
  }

  TEST_CASE("gauge transforms") {
    auto m6 = build_fixture("M6").structure;
    auto same = gauge_transform(m6, identity_family(m6.module.dim()), 3);
    CHECK(families_agree(same.ops, m6.ops, 3));
    for (unsigned s = seed(); s < seed() + 4; ++s) {
      Family g = random_unipotent_gauge(m6.module, s);
      INFO("seed " << s);
      auto b = gauge_transform(m6, g, 4);
      CHECK(validate_structure(b, 4).ok());
      Family ginv = inverse_family(g, m6.module, m6.cutoff, m6.monoid, 4);
      auto back = gauge_transform(b, ginv, 4);
      CHECK(families_agree(back.ops, m6.ops, 4));
    }
    auto defo = build_fixture("DEF-O").structure;
    Family g = random_unipotent_gauge(defo.module, seed());
    CHECK(validate_structure(gauge_transform(defo, g, 3), 3).ok());
    CHECK_THROWS_WITH_AS(gauge_transform(m6, Family(m6.module.dim(), 0), 2), doctest::Contains("NotInvertible"), Error);
  }
}
