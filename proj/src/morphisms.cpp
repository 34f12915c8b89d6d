#include "ainf/morphisms.hpp"

#include <random>

#include "ainf/error.hpp"

namespace ainf {

BarElem AInftyMorphism::apply(const BarElem& w) const {
  return apply_morphism(comps, target->module, w, std::min(source->cutoff, target->cutoff));
}

AInftyMorphism identity_morphism(const StructurePtr& a) { return {a, a, identity_family(a->module.dim())}; }

AInftyMorphism linear_morphism(const StructurePtr& source, const StructurePtr& target, const GradedMatrix& f) {
  return {source, target, linear_family(f, 0)};
}

static std::map<Beta, Vec> length_one(const GradedModule& mod, const BarElem& e) {
  return left_components(mod, project_length(e, 1));
}

static void diff_into(Report& rep, const std::string& what, int k, const std::vector<int>& x,
                      const std::map<Beta, Vec>& lhs, const std::map<Beta, Vec>& rhs, const GradedModule& mod) {
  std::map<Beta, Vec> d = lhs;
  for (const auto& [b, v] : rhs) {
    axpy(d[b], Poly(-1), v);
    if (d[b].empty()) d.erase(b);
  }
  for (const auto& [b, v] : d)
    if (!v.empty()) rep.add(what, k, b, x, vec_str(mod, v));
}

Report check_morphism(const AInftyMorphism& f, int k_max) {
  Report rep;
  const auto& src = *f.source;
  const auto& tgt = *f.target;
  Rational cut = std::min(src.cutoff, tgt.cutoff);
  for (const auto& [l, t] : f.comps.table())
    if (l.k == 0 && l.beta.is_zero()) rep.add("tameness", 0, l.beta, {}, "f_{0,0} is nonzero");
  check_family_degrees(rep, f.comps, src.module, tgt.module, "degree");
  if (!rep.ok()) return rep;
  for (int k = 0; k <= k_max; ++k)
    for (const auto& x : all_tuples(src.module.dim(), k)) {
      BarElem w = single_word(x);
      auto lhs = length_one(tgt.module, f.apply(extend_to_coderivation(src.ops, src.module, w, cut)));
      auto rhs = length_one(tgt.module, extend_to_coderivation(tgt.ops, tgt.module, f.apply(w), cut));
      diff_into(rep, "morphism", k, x, lhs, rhs, tgt.module);
    }
  rep.sort();
  return rep;
}

AInftyMorphism compose(const AInftyMorphism& g, const AInftyMorphism& f, int k_max) {
  if (!(f.target->module == g.source->module)) throw Error("StructureMismatch", "compose: target of f is not the source of g");
  AInftyMorphism out{f.source, g.target, {}};
  out.comps = collect_components(f.source->module.dim(), g.target->module, 0, k_max,
                                 [&](const BarElem& w) { return g.apply(f.apply(w)); });
  return out;
}

Report check_homotopy(const AInftyHomotopy& h, int k_max) {
  Report rep;
  const auto& src = *h.f1.source;
  const auto& tgt = *h.f1.target;
  Rational cut = std::min(src.cutoff, tgt.cutoff);
  check_family_degrees(rep, h.comps, src.module, tgt.module, "degree");
  for (int k = 0; k <= k_max; ++k)
    for (const auto& x : all_tuples(src.module.dim(), k)) {
      BarElem w = single_word(x);
      auto hw = [&](const BarElem& e) {
        return apply_fcoderivation(h.f1.comps, h.f2.comps, h.comps, src.module, tgt.module, e, cut);
      };
      BarElem lhs = extend_to_coderivation(tgt.ops, tgt.module, hw(w), cut);
      add_scaled(lhs, hw(extend_to_coderivation(src.ops, src.module, w, cut)), Poly(1));
      BarElem rhs = h.f2.apply(w);
      add_scaled(rhs, h.f1.apply(w), Poly(-1));
      diff_into(rep, "homotopy", k, x, length_one(tgt.module, lhs), length_one(tgt.module, rhs), tgt.module);
    }
  rep.sort();
  return rep;
}

Report check_cyclic_morphism(const AInftyMorphism& f, const Pairing& source, const Pairing& target, int k_max) {
  Report rep;
  const auto& smod = f.source->module;
  for (int k = 0; k <= k_max; ++k)
    for (const auto& x : all_tuples(smod.dim(), k)) {
      std::map<Beta, Poly> val;
      for (const auto& [w, c] : f.apply(single_word(x))) {
        if (w.letters.size() != 2) continue;
        Poly p = c * target(w.letters[0], w.letters[1]);
        if (!p.is_zero()) val[w.beta] += p;
      }
      if (k == 2) val[Beta{}] -= source(x[0], x[1]);
      for (const auto& [b, p] : val)
        if (!p.is_zero()) rep.add("cyclic-morphism", k, b, x, p.str());
    }
  rep.sort();
  return rep;
}

Report check_unital_morphism(const AInftyMorphism& f, int e, int e_target) {
  Report rep;
  const Vec* fe = f.comps.get({1, {}}, &e);
  Vec want{{e_target, Poly(1)}};
  if (!fe || *fe != want) rep.add("unital", 1, {}, {e}, fe ? vec_str(f.target->module, *fe) : "0");
  for_each_component(f.comps, [&](const Label& l, const std::vector<int>& in, const Vec& out) {
    if (l.k == 1 && l.beta.is_zero()) return;
    if (std::find(in.begin(), in.end(), e) != in.end())
      rep.add("unital", l.k, l.beta, in, vec_str(f.target->module, out));
  });
  rep.sort();
  return rep;
}

Family inverse_family(const Family& g, const GradedModule& mod, const Rational& cutoff, const GappedMonoid& monoid,
                      int k_max) {
  int n = mod.dim();
  Mat<Poly> a(n, n);
  a.setConstant(Poly());
  for (int c = 0; c < n; ++c)
    if (const Vec* y = g.get({1, {}}, &c))
      for (const auto& [r, v] : *y) a(r, c) = v;
  std::optional<Mat<Rational>> ainv;
  try {
    ainv = inverse<Rational>(to_rational(a));
  } catch (const Error&) {
    throw Error("NotInvertible", "g_{1,0} is not a constant matrix");
  }
  if (!ainv) throw Error("NotInvertible", "g_{1,0} is singular");
  Family inv(n, 0);
  for (const auto& b : enumerate_monoid(monoid, cutoff))
    for (int k = 0; k <= k_max; ++k) {
      if (k == 0 && b.is_zero()) continue;
      for (const auto& x : all_tuples(n, k)) {
        auto comps = left_components(mod, project_length(apply_morphism(g, mod, apply_morphism(inv, mod, single_word(x), cutoff), cutoff), 1));
        Vec rest = comps.count(b) ? comps[b] : Vec{};
        Vec rhs;
        if (k == 1 && b.is_zero()) rhs[x[0]] = Poly(1);
        axpy(rhs, Poly(-1), rest);
        Vec sol;
        for (const auto& [j, c] : rhs)
          for (int r = 0; r < n; ++r)
            if ((*ainv)(r, j) != 0) add_to(sol, r, c * Poly((*ainv)(r, j)));
        inv.set({k, b}, x, std::move(sol));
      }
    }
  return inv;
}

AInftyStructure gauge_transform(const AInftyStructure& a, const Family& g, int k_max) {
  for (const auto& [l, t] : g.table())
    if (l.k == 0 && l.beta.is_zero()) throw Error("NotInvertible", "gauge is not tame");
  Family ginv = inverse_family(g, a.module, a.cutoff, a.monoid, k_max);
  AInftyStructure out = a;
  out.ops = collect_components(a.module.dim(), a.module, 1, k_max, [&](const BarElem& w) {
    BarElem v = apply_morphism(ginv, a.module, w, a.cutoff);
    v = extend_to_coderivation(a.ops, a.module, v, a.cutoff);
    return apply_morphism(g, a.module, v, a.cutoff);
  });
  out.pairing.reset();
  return out;
}

Family random_unipotent_gauge(const GradedModule& mod, unsigned seed) {
  std::mt19937 rng(seed);
  int n = mod.dim();
  Family g = identity_family(n);
  std::vector<std::tuple<int, int, int>> slots;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        int in[2] = {x, y};
        Bidegree want = component_degree(mod, in, 0, {});
        if (mod.degree(z) == want) slots.emplace_back(x, y, z);
      }
  if (slots.empty()) return g;
  std::uniform_int_distribution<size_t> pick(0, slots.size() - 1);
  std::uniform_int_distribution<int> coef(1, 5);
  auto [x, y, z] = slots[pick(rng)];
  int in[2] = {x, y};
  g.set({2, {}}, in, Vec{{z, Poly(coef(rng))}});
  return g;
}

bool families_agree(const Family& a, const Family& b, int k_max) { return a.restricted(k_max) == b.restricted(k_max); }

}  // namespace ainf
