#include <doctest.h>

#include <set>

#include "ainf/equivariant.hpp"
#include "ainf/error.hpp"
#include "ainf/fixtures.hpp"

using namespace ainf;

namespace {

GradedMatrix table(const GradedModule& m, Bidegree deg, std::initializer_list<std::tuple<int, int, Poly>> entries) {
  Mat<Poly> x(m.dim(), m.dim());
  x.setConstant(Poly());
  for (const auto& [r, c, v] : entries) x(r, c) = v;
  return GradedMatrix(m, m, deg, x);
}

TStarModule trivial_action(const GradedModule& mod, const GradedMatrix& d) {
  TStarModule m;
  m.module = mod;
  m.d = d;
  m.n_alphas = 1;
  m.iota.push_back(GradedMatrix::zero(mod, mod, {-1, 0}));
  m.lie.push_back(GradedMatrix::zero(mod, mod, {0, 0}));
  return m;
}

std::set<std::tuple<int, Beta, std::vector<int>>> sites(const Report& r) {
  std::set<std::tuple<int, Beta, std::vector<int>>> s;
  for (const auto& v : r.violations) s.insert({v.k, v.beta, v.inputs});
  return s;
}

Family nonempty(const Family& f, int n, int deg) {
  Family out(n, deg);
  for_each_component(f, [&](const Label& l, const std::vector<int>& in, const Vec& v) {
    if (!v.empty()) out.set(l, in, v);
  });
  return out;
}

}  // namespace

TEST_SUITE("equivariant") {
  TEST_CASE("T*-module identities") {
    CHECK(check_tstar(*build_fixture("S1").tstar).ok());
    CHECK(check_tstar(*build_fixture("M6i").tstar).ok());
    CHECK(check_tstar(*build_fixture("ROT").tstar).ok());
    GradedModule mod(Ring{}, {"z", "y", "x"}, {{0, 0}, {1, 0}, {2, 0}});
    TStarModule bad = trivial_action(mod, GradedMatrix::zero(mod, mod, {1, 0}));
    bad.iota[0] = table(mod, {-1, 0}, {{1, 2, Poly(1)}, {0, 1, Poly(1)}});
    bad.lie[0] = compose(bad.d, bad.iota[0]) + compose(bad.iota[0], bad.d);
    CHECK(!check_tstar(bad).ok());
  }

  TEST_CASE("invariant subcomplex") {
    auto m6 = invariant_subcomplex(*build_fixture("M6i").tstar);
    CHECK(m6.module.dim() == 6);
    CHECK(m6.whole);
    CHECK(invariant_subcomplex(*build_fixture("ROT").tstar).module.dim() == 0);
    auto pt = build_fixture("PT");
    CHECK(invariant_subcomplex(trivial_action(pt.structure.module, pt.dga->d)).whole);
  }

  TEST_CASE("Cartan differential") {
    EquivariantComplex e = cartan_complex(*build_fixture("M6i").tstar);
    const auto& mod = e.module;
    Poly al = Poly::alpha(1);
    auto col = [&](const char* n) { return e.D.column(mod.index(n)); };
    CHECK(col("a") == Vec{{mod.index("b"), Poly(1)}, {mod.index("1"), -al}});
    CHECK(col("w") == Vec{{mod.index("q"), -al}});
    CHECK(col("p") == Vec{{mod.index("q"), Poly(1)}});
    for (const char* n : {"1", "b", "q"}) CHECK(col(n).empty());
    CHECK(compose(e.D, e.D).is_zero());

    EquivariantComplex s = cartan_complex(*build_fixture("S1").tstar);
    CHECK(s.D.column(s.module.index("e")) == Vec{{s.module.index("1"), -al}});

    auto m6 = build_fixture("M6");
    EquivariantComplex flat = cartan_complex(trivial_action(m6.structure.module, m6.dga->d));
    CHECK(flat.D.m() == flat.d.m());
  }

  TEST_CASE("invariance") {
    auto s1 = build_fixture("S1");
    CHECK(check_invariance(s1.structure, *s1.tstar, 4).ok());
    auto m6i = build_fixture("M6i");
    Report bad = check_invariance(m6i.structure, *m6i.tstar, 3);
    CHECK(!bad.ok());
    auto m6 = build_fixture("M6");
    CHECK(check_invariance(m6.structure, trivial_action(m6.structure.module, m6.dga->d), 4).ok());
  }

  TEST_CASE("invariance in components agrees with the bar form") {
    auto m6i = build_fixture("M6i");
    auto defo = build_fixture("DEF-O");
    auto s1 = build_fixture("S1");
    std::vector<std::pair<AInftyStructure, TStarModule>> cases = {
        {s1.structure, *s1.tstar}, {m6i.structure, *m6i.tstar}, {defo.structure, *m6i.tstar}};
    for (const auto& [a, m] : cases) {
      Report lit = check_invariance(a, m, 3), bar = check_invariance_bar(a, m, 3);
      CHECK(lit.ok() == bar.ok());
      CHECK(sites(lit) == sites(bar));
    }
  }

  TEST_CASE("brackets") {
    auto m6i = build_fixture("M6i");
    const auto& mod = m6i.structure.module;
    int n = mod.dim();
    Family m = m6i.structure.ops;
    Family ip = iota_prime_family(m6i.tstar->iota[0]);
    Family g = random_unipotent_gauge(mod, 11).without({1, {}});
    // odd square of a differential vanishes, even self-bracket vanishes
    CHECK(nonempty(bracket(m, m, mod, 0, 3), n, 2).empty());
    CHECK(nonempty(bracket(g, g, mod, 0, 3), n, 0).empty());
    // graded antisymmetry
    for (const auto& [x, y] : std::vector<std::pair<Family, Family>>{{m, ip}, {ip, g}, {m, g}}) {
      int s = ((x.degree() * y.degree()) % 2 == 0) ? -1 : 1;
      Family xy = bracket(x, y, mod, 0, 3), yx = bracket(y, x, mod, 0, 3);
      Family sum(n, xy.degree());
      for_each_component(xy, [&](const Label& l, const std::vector<int>& in, const Vec& v) { sum.add(l, in, v); });
      for_each_component(yx, [&](const Label& l, const std::vector<int>& in, const Vec& v) {
        Vec w = v;
        for (auto& [i, c] : w) c *= -s;
        sum.add(l, in, w);
      });
      CHECK(nonempty(sum, n, xy.degree()).empty());
    }
    // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
    Family a = m, b = ip, c = g;
    int sab = (a.degree() * b.degree()) % 2 == 0 ? 1 : -1;
    Family lhs = bracket(a, bracket(b, c, mod, 0, 3), mod, 0, 3);
    Family r1 = bracket(bracket(a, b, mod, 0, 3), c, mod, 0, 3);
    Family r2 = bracket(b, bracket(a, c, mod, 0, 3), mod, 0, 3);
    Family res(n, lhs.degree());
    for_each_component(lhs, [&](const Label& l, const std::vector<int>& in, const Vec& v) { res.add(l, in, v); });
    for_each_component(r1, [&](const Label& l, const std::vector<int>& in, const Vec& v) { res.add(l, in, scaled(v, -1)); });
    for_each_component(r2, [&](const Label& l, const std::vector<int>& in, const Vec& v) { res.add(l, in, scaled(v, -sab)); });
    CHECK(nonempty(res, n, lhs.degree()).empty());
  }

  TEST_CASE("Cartan identity in bracket form") {
    auto s1 = build_fixture("S1");
    const auto& mod = s1.structure.module;
    Family d = linear_family(dprime(s1.tstar->d), 1);
    Family ip = iota_prime_family(s1.tstar->iota[0]);
    CHECK(nonempty(bracket(d, ip, mod, 0, 3), mod.dim(), 0).empty());
    auto rot = build_fixture("ROT");
    Family dr = linear_family(dprime(rot.tstar->d), 1);
    Family ir = iota_prime_family(rot.tstar->iota[0]);
    CHECK(!nonempty(bracket(dr, ir, rot.structure.module, 0, 1), 2, 0).empty());
  }

  TEST_CASE("equivariant extension") {
    auto s1 = build_fixture("S1");
    AInftyStructure ext = equivariant_extend(s1.structure, *s1.tstar);
    const auto& mod = ext.module;
    CHECK(ext.ring().num_alphas == 1);
    int e = mod.index("e");
    CHECK(*ext.ops.get({1, {}}, std::vector<int>{e}) == Vec{{mod.index("1"), Poly::alpha(1)}});
    CHECK(ext.unit == s1.structure.unit);
    CHECK(validate_structure(ext, 3).ok());

    auto defe = build_fixture("DEF-E");
    auto flat = trivial_action(defe.structure.module, defe.dga->d);
    AInftyStructure curved = equivariant_extend(defe.structure, flat);
    CHECK(*curved.ops.get({0, {1, 2}}, std::vector<int>{}) == Vec{{0, Poly(1)}});
    CHECK(specialize_alpha_zero(curved) == defe.structure);

    auto m6i = build_fixture("M6i");
    CHECK_THROWS_WITH_AS(equivariant_extend(m6i.structure, *m6i.tstar), doctest::Contains("NotInvariant"), Error);
  }

  TEST_CASE("even cohomology") {
    CHECK(check_even_cohomology(build_fixture("PT").structure.differential()));
    CHECK(!check_even_cohomology(build_fixture("S1").structure.differential()));
    CHECK(check_even_cohomology(build_fixture("M6").structure.differential()));
    auto dims = cohomology_dims(build_fixture("M6").structure.differential());
    int total = 0;
    for (const auto& [deg, n] : dims) total += n;
    CHECK(total == 2);
    CHECK(dims[Bidegree{2, 1}] == 1);
  }

  TEST_CASE("closed lifts") {
    auto pt = build_fixture("PT");
    EquivariantComplex e = cartan_complex(trivial_action(pt.structure.module, pt.dga->d));
    auto lift = lift_closed_basis(e);
    CHECK(lift.lifts == std::vector<Vec>{{{0, Poly(1)}}});
    EquivariantComplex m = cartan_complex(*build_fixture("M6i").tstar);
    for (const auto& v : lift_closed_basis(m).lifts) CHECK(m.D.apply(v).empty());
    CHECK_THROWS_WITH_AS(lift_closed_basis(cartan_complex(*build_fixture("S1").tstar)),
                         doctest::Contains("LiftObstructed"), Error);
  }

  TEST_CASE("normalizing the pairing on lifts") {
    EquivariantComplex e = cartan_complex(*build_fixture("M6i").tstar);
    auto lifts = lift_closed_basis(e).lifts;
    Pairing p = extend_pairing(*build_fixture("M6").structure.pairing, e);
    CHECK(normalize_basis(e.module, lifts, p) == lifts);
    CHECK(p.eval(lifts[0], lifts[1]) == Poly(1));

    GradedModule mod(Ring{1}, {"u1", "u2", "v1", "v2"}, {{0, 0}, {-2, 0}, {4, 0}, {6, 0}});
    Pairing q{{4, 0}, Mat<Poly>(4, 4)};
    q.gram.setConstant(Poly());
    q.gram(0, 2) = q.gram(2, 0) = Poly(1);
    q.gram(1, 3) = q.gram(3, 1) = Poly(1);
    q.gram(0, 3) = q.gram(3, 0) = Poly::alpha(1);
    std::vector<Vec> basis = {{{0, Poly(1)}}, {{1, Poly(1)}}, {{2, Poly(1)}}, {{3, Poly(1)}}};
    auto out = normalize_basis(mod, basis, q);
    CHECK(out[0] == basis[0]);
    CHECK(out[1] == basis[1]);
    CHECK(out[2] == basis[2]);
    CHECK(out[3] == Vec{{3, Poly(1)}, {2, -Poly::alpha(1)}});
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(q.eval(out[i], out[2 + j]) == Poly(i == j ? 1 : 0));
  }

  TEST_CASE("tensor products") {
    auto m6i = *build_fixture("M6i").tstar;
    auto pt = build_fixture("PT");
    auto k1 = kunneth_check(m6i, trivial_action(pt.structure.module, pt.dga->d));
    CHECK(k1.report.ok());
    CHECK(k1.rank == 2);
    auto t = tensor(m6i, m6i);
    CHECK(t.module.dim() == 36);
    CHECK(check_tstar(t).ok());
    auto s1 = *build_fixture("S1").tstar;
    CHECK(!kunneth_check(s1, s1).report.ok());
  }
}
