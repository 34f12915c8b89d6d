#include "ainf/fixtures.hpp"

#include "ainf/error.hpp"

namespace ainf {

namespace {

struct Table {
  GradedModule mod;
  std::vector<std::tuple<std::string, std::string, int>> d;  // source, target, coefficient
  std::vector<std::tuple<std::string, std::string, std::string, int>> prod;
  std::vector<std::pair<std::string, int>> integral;
  Bidegree pairing_degree;
};

GradedMatrix matrix(const GradedModule& mod, Bidegree deg,
                    const std::vector<std::tuple<std::string, std::string, int>>& entries) {
  Mat<Poly> m(mod.dim(), mod.dim());
  m.setConstant(Poly());
  for (const auto& [s, t, c] : entries) m(mod.index(t), mod.index(s)) += Poly(c);
  return GradedMatrix(mod, mod, deg, m);
}

Dga make_dga(const Table& t) {
  Dga a;
  a.module = t.mod;
  a.d = matrix(t.mod, {1, 0}, t.d);
  int u = t.mod.index("1");
  for (int i = 0; i < t.mod.dim(); ++i) {
    a.product[{u, i}] = {{i, Poly(1)}};
    a.product[{i, u}] = {{i, Poly(1)}};
  }
  for (const auto& [x, y, z, c] : t.prod) add_to(a.product[{t.mod.index(x), t.mod.index(y)}], t.mod.index(z), Poly(c));
  std::vector<Poly> integ(t.mod.dim());
  for (const auto& [x, c] : t.integral) integ[t.mod.index(x)] = Poly(c);
  a.integral = integ;
  a.pairing_degree = t.pairing_degree;
  a.unit = u;
  return a;
}

TStarModule tstar(const GradedModule& mod, const GradedMatrix& d,
                  const std::vector<std::tuple<std::string, std::string, int>>& iota) {
  TStarModule m;
  m.module = mod;
  m.d = d;
  m.n_alphas = 1;
  m.iota.push_back(matrix(mod, {-1, 0}, iota));
  m.lie.push_back(compose(d, m.iota[0]) + compose(m.iota[0], d));
  return m;
}

Table pt() {
  Table t;
  t.mod = GradedModule(Ring{}, {"1"}, {{0, 0}});
  t.integral = {{"1", 1}};
  t.pairing_degree = {0, 0};
  return t;
}

Table s1() {
  Table t;
  t.mod = GradedModule(Ring{}, {"1", "e"}, {{0, 0}, {1, 0}});
  t.integral = {{"e", 1}};
  t.pairing_degree = {1, 0};
  return t;
}

Table m6() {
  Table t;
  t.mod = GradedModule(Ring{}, {"1", "a", "b", "p", "q", "w"}, {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}});
  t.d = {{"a", "b", 1}, {"p", "q", 1}};
  t.prod = {{"a", "q", "w", 1}, {"q", "a", "w", -1}, {"b", "p", "w", 1}, {"p", "b", "w", 1}};
  t.integral = {{"w", 1}};
  t.pairing_degree = {2, 1};
  return t;
}

Table n3() {
  // exterior algebra on x1, x2, y; basis indexed by bitmask
  const std::vector<std::pair<int, std::string>> basis = {{0, "1"},      {1, "x1"},     {2, "x2"},     {4, "y"},
                                                          {3, "x1x2"},   {5, "x1y"},    {6, "x2y"},    {7, "x1x2y"}};
  std::map<int, std::string> name;
  std::vector<std::string> names;
  std::vector<Bidegree> degs;
  for (const auto& [mask, n] : basis) {
    name[mask] = n;
    names.push_back(n);
    degs.push_back({__builtin_popcount(mask), 0});
  }
  Table t;
  t.mod = GradedModule(Ring{}, names, degs);
  for (const auto& [m1, n1] : basis)
    for (const auto& [m2, n2] : basis) {
      if (m1 == 0 || m2 == 0 || (m1 & m2)) continue;
      int swaps = 0;
      for (int i = 0; i < 3; ++i)
        if (m2 & (1 << i)) swaps += __builtin_popcount(m1 >> (i + 1));
      t.prod.emplace_back(n1, n2, name[m1 | m2], swaps % 2 ? -1 : 1);
    }
  // d(u y) = (-1)^{|u|} u x1 x2, nonzero only for u = 1
  t.d = {{"y", "x1x2", 1}};
  t.integral = {{"x1x2y", 1}};
  t.pairing_degree = {3, 0};
  return t;
}

Fixture from_table(const std::string& name, const Table& t, const GappedMonoid& g = {}, const Rational& cutoff = 0) {
  Fixture f;
  f.name = name;
  f.dga = make_dga(t);
  f.structure = from_dga(*f.dga, g, cutoff);
  return f;
}

void add_curvature(AInftyStructure& a, const Beta& b, const std::string& target) {
  a.ops.set({0, b}, std::vector<int>{}, {{a.module.index(target), Poly(1)}});
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"PT", "S1", "M6", "M6i", "N3", "DEF-E", "DEF-O", "CW", "ROT"};
  return names;
}

Fixture build_fixture(const std::string& name) {
  if (name == "PT") return from_table(name, pt());
  if (name == "S1") {
    Fixture f = from_table(name, s1());
    f.tstar = tstar(f.dga->module, f.dga->d, {{"e", "1", 1}});
    return f;
  }
  if (name == "M6") return from_table(name, m6());
  if (name == "M6i") {
    Fixture f = from_table(name, m6());
    f.tstar = tstar(f.dga->module, f.dga->d, {{"a", "1", 1}, {"w", "q", 1}});
    return f;
  }
  if (name == "N3") return from_table(name, n3());
  if (name == "DEF-E") {
    Beta b0{1, 2};
    Fixture f = from_table(name, pt(), GappedMonoid{{b0}}, 2);
    add_curvature(f.structure, b0, "1");
    return f;
  }
  if (name == "DEF-O") {
    Beta b1{1, 1};
    Fixture f = from_table(name, m6(), GappedMonoid{{b1}}, 2);
    add_curvature(f.structure, b1, "q");
    return f;
  }
  if (name == "CW") {
    Fixture base = build_fixture("M6i");
    EquivariantComplex e = cartan_complex(*base.tstar);
    Fixture f;
    f.name = name;
    f.tstar = base.tstar;
    Beta b0{1, 2}, b1{1, 1};
    AInftyStructure& a = f.structure;
    a = empty_structure(e.module, GappedMonoid{{b0, b1}}, 2);
    GradedMatrix dp = dprime(e.D);
    for (int c = 0; c < e.module.dim(); ++c) {
      Vec col = dp.column(c);
      if (!col.empty()) a.ops.set({1, {}}, std::vector<int>{c}, col);
    }
    add_curvature(a, b0, "1");
    add_curvature(a, b1, "q");
    a.pairing = extend_pairing(*base.structure.pairing, e);
    return f;
  }
  if (name == "ROT") {
    Fixture f;
    f.name = name;
    GradedModule mod(Ring{}, {"u", "v"}, {{0, 0}, {1, 0}});
    GradedMatrix d = matrix(mod, {1, 0}, {{"u", "v", 1}});
    f.tstar = tstar(mod, d, {{"v", "u", 1}});
    f.structure = empty_structure(mod, {}, 0);
    f.structure.ops.set({1, {}}, std::vector<int>{0}, {{1, Poly(1)}});
    return f;
  }
  throw Error("UnknownFixture", "no fixture named '" + name + "'");
}

}  // namespace ainf
