#include "ainf/ainfty.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ainf/equivariant.hpp"
#include "ainf/error.hpp"

namespace ainf {

void Report::add(std::string check, int k, Beta beta, std::vector<int> inputs, std::string detail) {
  violations.push_back({std::move(check), k, beta, std::move(inputs), std::move(detail)});
}

void Report::absorb(const Report& r) {
  violations.insert(violations.end(), r.violations.begin(), r.violations.end());
}

void Report::sort() {
  std::stable_sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
    if (a.k != b.k) return a.k < b.k;
    if (a.beta != b.beta) return a.beta < b.beta;
    if (a.inputs != b.inputs) return a.inputs < b.inputs;
    return a.check < b.check;
  });
}

std::string Report::str(const GradedModule& mod) const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << v.check;
    if (v.k >= 0) {
      os << " k=" << v.k << " " << to_string(v.beta) << " (";
      for (size_t i = 0; i < v.inputs.size(); ++i) {
        int j = v.inputs[i];
        os << (i ? "," : "") << (j >= 0 && j < mod.dim() ? mod.name(j) : std::to_string(j));
      }
      os << ")";
    }
    if (!v.detail.empty()) os << ": " << v.detail;
    os << "\n";
  }
  return os.str();
}

Poly Pairing::eval(const Vec& u, const Vec& v) const {
  Poly s;
  for (const auto& [i, a] : u)
    for (const auto& [j, b] : v)
      if (!gram(i, j).is_zero()) s += a * b * gram(i, j);
  return s;
}

GradedMatrix AInftyStructure::differential() const {
  Mat<Poly> m(module.dim(), module.dim());
  m.setConstant(Poly());
  for (int c = 0; c < module.dim(); ++c) {
    const Vec* y = ops.get({1, {}}, &c);
    if (!y) continue;
    int s = sign_of_parity(module.degree(c).codim);
    for (const auto& [r, a] : *y) m(r, c) = a * Poly(s);
  }
  return GradedMatrix(module, module, {1, 0}, std::move(m));
}

bool AInftyStructure::has_linear_part() const { return ops.table().count({1, {}}) != 0; }

bool operator==(const Pairing& a, const Pairing& b) {
  if (a.degree != b.degree || a.gram.rows() != b.gram.rows() || a.gram.cols() != b.gram.cols()) return false;
  for (int i = 0; i < a.gram.rows(); ++i)
    for (int j = 0; j < a.gram.cols(); ++j)
      if (a.gram(i, j) != b.gram(i, j)) return false;
  return true;
}

bool operator==(const AInftyStructure& a, const AInftyStructure& b) {
  return a.module == b.module && a.monoid == b.monoid && a.cutoff == b.cutoff && a.ops == b.ops &&
         a.unit == b.unit && a.pairing == b.pairing;
}

AInftyStructure empty_structure(const GradedModule& mod, const GappedMonoid& g, const Rational& cutoff) {
  AInftyStructure a;
  a.module = mod;
  a.monoid = g;
  a.cutoff = cutoff;
  a.ops = Family(mod.dim(), 1);
  return a;
}

Vec dga_product(const Dga& a, const Vec& x, const Vec& y) {
  Vec out;
  for (const auto& [i, ci] : x)
    for (const auto& [j, cj] : y) {
      auto it = a.product.find({i, j});
      if (it != a.product.end()) axpy(out, ci * cj, it->second);
    }
  return out;
}

AInftyStructure from_dga(const Dga& a, const GappedMonoid& g, const Rational& cutoff) {
  const auto& mod = a.module;
  int n = mod.dim();
  if (a.d.degree() != Bidegree{1, 0}) throw Error("NotADifferential", "d must have degree (1,0)");
  if (!compose(a.d, a.d).is_zero()) throw Error("NotADifferential", "d^2 != 0");
  auto basis = [](int i) { return Vec{{i, Poly(1)}}; };
  for (const auto& [xy, v] : a.product) {
    Bidegree want = mod.degree(xy.first) + mod.degree(xy.second);
    for (const auto& [j, c] : v) {
      auto t = c.homogeneous_degree();
      if (!t || mod.degree(j).codim + 2 * *t != want.codim || mod.degree(j).ls != want.ls)
        throw Error("DegreeMismatch", "product " + mod.name(xy.first) + "^" + mod.name(xy.second) + " has wrong degree");
    }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      Vec xy = dga_product(a, basis(x), basis(y));
      Vec lhs = a.d.apply(xy);
      Vec rhs = dga_product(a, a.d.column(x), basis(y));
      axpy(rhs, Poly(sign_of_parity(mod.degree(x).codim)), dga_product(a, basis(x), a.d.column(y)));
      if (lhs != rhs) throw Error("LeibnizFailure", "d(" + mod.name(x) + "^" + mod.name(y) + ") fails the Leibniz rule");
      for (int z = 0; z < n; ++z) {
        Vec l = dga_product(a, xy, basis(z));
        Vec r = dga_product(a, basis(x), dga_product(a, basis(y), basis(z)));
        if (l != r)
          throw Error("NotAssociative", "(" + mod.name(x) + "^" + mod.name(y) + ")^" + mod.name(z) + " differs");
      }
    }
  AInftyStructure out = empty_structure(mod, g, cutoff);
  for (int c = 0; c < n; ++c) {
    Vec col = a.d.column(c);
    if (col.empty()) continue;
    out.ops.set({1, {}}, std::span<const int>(&c, 1), scaled(col, sign_of_parity(mod.degree(c).codim)));
  }
  for (const auto& [xy, v] : a.product) {
    if (v.empty()) continue;
    long cx = mod.degree(xy.first).codim, cy = mod.degree(xy.second).codim;
    int in[2] = {xy.first, xy.second};
    out.ops.set({2, {}}, in, scaled(v, sign_of_parity(cx + cx * cy)));
  }
  out.unit = a.unit;
  if (a.integral) {
    Pairing p;
    p.degree = a.pairing_degree;
    p.gram = Mat<Poly>(n, n);
    p.gram.setConstant(Poly());
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        Poly s;
        for (const auto& [j, c] : dga_product(a, basis(x), basis(y))) s += c * (*a.integral)[j];
        long cx = mod.degree(x).codim, cy = mod.degree(y).codim;
        s *= sign_of_parity(cx * cy + cx);
        p.gram(x, y) = s;
      }
    out.pairing = p;
  }
  return out;
}

Bidegree component_degree(const GradedModule& mod, std::span<const int> in, int d, const Beta& b) {
  Bidegree s{d + 1 - static_cast<int>(in.size()) - b.mu, ((b.mu % 2) + 2) % 2};
  for (int x : in) s = s + mod.degree(x);
  return s;
}

void check_family_degrees(Report& rep, const Family& f, const GradedModule& source, const GradedModule& target,
                          const std::string& what) {
  for_each_component(f, [&](const Label& l, const std::vector<int>& in, const Vec& out) {
    Bidegree want = component_degree(source, in, f.degree(), l.beta);
    for (const auto& [j, c] : out) {
      auto t = c.homogeneous_degree();
      if (!t || target.degree(j).codim + 2 * *t != want.codim || target.degree(j).ls != want.ls) {
        rep.add(what, l.k, l.beta, in, "output " + target.name(j) + " has the wrong degree");
        return;
      }
    }
  });
}

Report validate_structure(const AInftyStructure& a, int k_max, bool maslov_terms) {
  Report rep;
  auto elems = enumerate_monoid(a.monoid, a.cutoff);
  std::set<Beta> members(elems.begin(), elems.end());
  for (const auto& [l, tab] : a.ops.table()) {
    if (l.k == 0 && l.beta.is_zero()) rep.add("tameness", 0, l.beta, {}, "m_{0,0} is nonzero");
    if (l.beta.E > a.cutoff) rep.add("cutoff", l.k, l.beta, {}, "label above the energy cutoff");
    else if (!members.count(l.beta)) rep.add("monoid", l.k, l.beta, {}, "label not in the monoid");
  }
  check_family_degrees(rep, a.ops, a.module, a.module, "degree");
  for (int k = 0; k <= k_max; ++k)
    for (const auto& x : all_tuples(a.module.dim(), k)) {
      auto res = insertion_sum(a.ops, a.ops, a.module, x, a.cutoff, maslov_terms);
      for (const auto& [b, v] : res) rep.add("relation", k, b, x, vec_str(a.module, v));
    }
  rep.sort();
  return rep;
}

Report validate_unit(const AInftyStructure& a, int e, int /*k_max*/) {
  Report rep;
  const auto& mod = a.module;
  if (mod.degree(e) != Bidegree{0, 0}) rep.add("unit-degree", -1, {}, {}, mod.name(e) + " is not of degree (0,0)");
  for (int x = 0; x < mod.dim(); ++x) {
    Vec want{{x, Poly(1)}};
    int l[2] = {e, x}, r[2] = {x, e};
    const Vec* ml = a.ops.get({2, {}}, l);
    const Vec* mr = a.ops.get({2, {}}, r);
    Vec vl = ml ? *ml : Vec{};
    Vec vr = mr ? scaled(*mr, sign_of_parity(mod.degree(x).codim)) : Vec{};
    if (vl != want) rep.add("unit-left", 2, {}, {e, x}, vec_str(mod, vl));
    if (vr != want) rep.add("unit-right", 2, {}, {x, e}, vec_str(mod, vr));
  }
  for_each_component(a.ops, [&](const Label& lab, const std::vector<int>& in, const Vec& out) {
    if (lab.k == 2 && lab.beta.is_zero()) return;
    if (std::find(in.begin(), in.end(), e) != in.end()) rep.add("unit-insertion", lab.k, lab.beta, in, vec_str(mod, out));
  });
  rep.sort();
  return rep;
}

namespace {

void check_perfect(Report& rep, const AInftyStructure& a, const Pairing& p) {
  const auto& mod = a.module;
  std::vector<Vec> basis;
  if (!a.has_linear_part()) {
    for (int i = 0; i < mod.dim(); ++i) basis.push_back({{i, Poly(1)}});
  } else if (a.ring().is_field()) {
    auto h = cohomology(a);
    for (int i = 0; i < h.h.dim(); ++i) basis.push_back(h.incl.column(i));
  } else {
    try {
      basis = lift_closed(a.differential()).lifts;
    } catch (const Error& err) {
      rep.add("perfect", -1, {}, {}, std::string(err.name()) + ": " + err.what());
      return;
    }
  }
  int n = static_cast<int>(basis.size());
  Mat<Poly> g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = p.eval(basis[i], basis[j]);
  if (a.ring().is_field()) {
    if (rank_over_fraction_field(g) != n) rep.add("perfect", -1, {}, {}, "induced pairing on cohomology is degenerate");
  } else {
    Poly det = determinant(g);
    if (det.is_zero() || !det.is_constant())
      rep.add("perfect", -1, {}, {}, "Gram determinant on cohomology is " + det.str() + ", not a unit");
  }
}

}  // namespace

Report validate_cyclic(const AInftyStructure& a, const Pairing& p, int k_max) {
  Report rep;
  const auto& mod = a.module;
  int n = mod.dim();
  if (p.gram.rows() != n || p.gram.cols() != n) {
    rep.add("pairing-shape", -1, {}, {}, "pairing matrix does not match the module");
    return rep;
  }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      long cu = mod.degree(u).codim, cv = mod.degree(v).codim;
      Poly rhs = p(v, u);
      rhs *= sign_of_parity(1 + (cu - 1) * (cv - 1));
      if (p(u, v) != rhs) rep.add("antisymmetry", 2, {}, {u, v}, p(u, v).str() + " vs " + rhs.str());
      if (!p(u, v).is_zero()) {
        auto t = p(u, v).homogeneous_degree();
        if (!t || cu + cv != p.degree.codim + 2 * *t || (mod.degree(u).ls + mod.degree(v).ls) % 2 != p.degree.ls)
          rep.add("pairing-degree", 2, {}, {u, v}, "value " + p(u, v).str() + " has the wrong degree");
      }
    }
  if (rank_over_fraction_field(p.gram) != n) rep.add("nondegenerate", -1, {}, {}, "pairing matrix is singular");
  std::set<std::pair<Label, std::vector<int>>> seen;
  auto side = [&](const Label& l, const std::vector<int>& in, int last) {
    const Vec* y = a.ops.get(l, in.data());
    return y ? p.eval(*y, Vec{{last, Poly(1)}}) : Poly();
  };
  for_each_component(a.ops, [&](const Label& l, const std::vector<int>& in, const Vec&) {
    if (l.k > k_max) return;
    for (int z = 0; z < n; ++z)
      for (int pos = 0; pos < 2; ++pos) {
        std::vector<int> x;  // x_0 .. x_k
        if (pos == 0) {
          x.push_back(z);
          x.insert(x.end(), in.begin(), in.end());
        } else {
          x = in;
          x.push_back(z);
        }
        if (!seen.insert({l, x}).second) continue;
        std::vector<int> tail(x.begin() + 1, x.end()), head(x.begin(), x.end() - 1);
        long s = 0;
        for (int j = 1; j <= l.k; ++j) s += mod.degree(x[j]).codim - 1;
        long tri = (mod.degree(x[0]).codim - 1) * s + static_cast<long>(l.beta.mu) * mod.degree(x[0]).ls;
        Poly lhs = side(l, tail, x[0]);
        Poly rhs = side(l, head, x[l.k]);
        rhs *= sign_of_parity(tri);
        if (lhs != rhs) rep.add("cyclic", l.k, l.beta, x, lhs.str() + " vs " + rhs.str());
      }
  });
  check_perfect(rep, a, p);
  rep.sort();
  return rep;
}

Cohomology cohomology_of(const GradedMatrix& d, const std::vector<Vec>& preferred) {
  const auto& mod = d.source();
  if (!mod.ring().is_field()) throw Error("NotAField", "cohomology needs rational coefficients");
  int n = mod.dim();
  Mat<Rational> dq = to_rational(d.m());
  std::vector<Mat<Rational>> pref;
  for (const auto& v : preferred) {
    Mat<Rational> col = Mat<Rational>::Zero(n, 1);
    for (const auto& [i, c] : v) col(i, 0) = c.constant_term();
    pref.push_back(col);
  }
  Cohomology out;
  out.split = split_complex(dq, pref);
  const auto& reps = out.split.reps;
  int h = static_cast<int>(reps.cols());
  std::vector<std::string> names;
  std::vector<Bidegree> degs;
  std::set<std::string> used;
  for (int j = 0; j < h; ++j) {
    int lead = -1;
    for (int i = 0; i < n && lead < 0; ++i)
      if (reps(i, j) != 0) lead = i;
    std::string name = "H_" + mod.name(lead);
    while (!used.insert(name).second) name += "'";
    names.push_back(name);
    degs.push_back(mod.degree(lead));
  }
  out.h = GradedModule(mod.ring(), names, degs);
  out.incl = GradedMatrix(out.h, mod, {0, 0}, to_poly(reps));
  out.pi = GradedMatrix(mod, out.h, {0, 0}, to_poly(Mat<Rational>(out.split.coords.topRows(h))));
  return out;
}

Cohomology cohomology(const AInftyStructure& a) {
  std::vector<Vec> pref;
  if (a.unit) pref.push_back({{*a.unit, Poly(1)}});
  return cohomology_of(a.differential(), pref);
}

}  // namespace ainf
