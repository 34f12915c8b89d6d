#include "ainf/hpl.hpp"

#include "ainf/error.hpp"

namespace ainf {

namespace {

void zero_columns(Report& rep, const std::string& what, const GradedMatrix& m) {
  for (int c = 0; c < m.source().dim(); ++c) {
    Vec col = m.column(c);
    if (!col.empty()) rep.add(what, 1, {}, {c}, vec_str(m.target(), col));
  }
}

bool is_flag_check(const std::string& s) { return s == "cyclic" || s == "unital"; }
bool is_side_check(const std::string& s) { return s.rfind("side-", 0) == 0; }

}  // namespace

Report check_retraction(Retraction& r, const GradedMatrix& d, const Pairing* pairing, std::optional<int> unit) {
  Report rep;
  const GradedModule& c = d.source();
  const GradedModule& hm = r.pi.target();
  GradedMatrix dp = dprime(d);
  if (r.h.degree() != Bidegree{-1, 0} && !r.h.is_zero()) rep.add("degree", -1, {}, {}, "h must have degree (-1,0)");
  zero_columns(rep, "pi-d", compose(r.pi, dp));
  zero_columns(rep, "d-incl", compose(dp, r.incl));
  zero_columns(rep, "pi-incl", compose(r.pi, r.incl) - GradedMatrix::identity(hm));
  GradedMatrix lhs = compose(dp, r.h) + compose(r.h, dp);
  GradedMatrix rhs = compose(r.incl, r.pi) - GradedMatrix::identity(c);
  zero_columns(rep, "homotopy", lhs - rhs);
  Report side;
  zero_columns(side, "side-hh", compose(r.h, r.h));
  zero_columns(side, "side-pih", compose(r.pi, r.h));
  zero_columns(side, "side-hi", compose(r.h, r.incl));
  r.side_conditions = side.ok();
  rep.absorb(side);
  if (pairing) {
    Report cyc;
    for (int x = 0; x < c.dim(); ++x)
      for (int y = 0; y < c.dim(); ++y) {
        Poly v = pairing->eval(r.h.column(x), {{y, Poly(1)}});
        Poly w = pairing->eval({{x, Poly(1)}}, r.h.column(y));
        w *= sign_of_parity(c.degree(x).codim);
        v += w;
        if (!v.is_zero()) cyc.add("cyclic", 2, {}, {x, y}, v.str());
      }
    r.cyclic = cyc.ok();
    rep.absorb(cyc);
  } else {
    r.cyclic = false;
  }
  if (unit) {
    Vec he = r.h.column(*unit);
    r.unital = he.empty();
    if (!he.empty()) rep.add("unital", 1, {}, {*unit}, vec_str(c, he));
  } else {
    r.unital = false;
  }
  rep.sort();
  return rep;
}

Retraction retraction_from_splitting(const GradedMatrix& d, const Pairing* pairing, std::optional<int> unit) {
  const GradedModule& c = d.source();
  if (!c.ring().is_field()) throw Error("NotAField", "splitting needs rational coefficients");
  int n = c.dim();
  std::vector<Vec> pref;
  if (unit) pref.push_back({{*unit, Poly(1)}});
  Cohomology coh = cohomology_of(d, pref);
  Mat<Rational> dq = to_rational(d.m());
  Mat<Rational> reps = coh.split.reps;
  Mat<Rational> image = coh.split.image;
  Mat<Rational> others = coh.split.others;
  int hd = static_cast<int>(reps.cols()), r = static_cast<int>(image.cols());
  auto degree_of = [&](const Mat<Rational>& v) {
    for (int i = 0; i < n; ++i)
      if (v(i, 0) != 0) return c.degree(i);
    return Bidegree{};
  };
  if (pairing) {
    Mat<Rational> g = to_rational(pairing->gram);
    if (rank<Rational>(Mat<Rational>(reps.transpose() * g * reps)) != hd)
      throw Error("NoOrthogonalComplement", "pairing is degenerate on the cohomology representatives");
    Mat<Rational> w = nullspace<Rational>(Mat<Rational>(reps.transpose() * g));
    Mat<Rational> chk = reps.transpose() * g * image;
    for (int i = 0; i < chk.rows(); ++i)
      for (int j = 0; j < chk.cols(); ++j)
        if (chk(i, j) != 0) throw Error("NoOrthogonalComplement", "exact elements are not orthogonal to cohomology");
    std::vector<Mat<Rational>> chosen;
    Mat<Rational> imgs(n, 0);
    for (int j = 0; j < w.cols() && static_cast<int>(chosen.size()) < r; ++j) {
      Mat<Rational> v = w.col(j);
      Mat<Rational> trial(n, imgs.cols() + 1);
      if (imgs.cols() > 0) trial.leftCols(imgs.cols()) = imgs;
      trial.col(imgs.cols()) = dq * v;
      if (rank<Rational>(trial) == trial.cols()) {
        imgs = trial;
        chosen.push_back(v);
      }
    }
    if (static_cast<int>(chosen.size()) != r) throw Error("NoOrthogonalComplement", "no complement of the exact part");
    // o_i -> o_i + sum_k c_ik d o_k, solved so that the o's become isotropic
    std::vector<std::pair<int, int>> unknowns;
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < r; ++k)
        if (degree_of(chosen[i]) == degree_of(imgs.col(k))) unknowns.emplace_back(i, k);
    int nu = static_cast<int>(unknowns.size());
    Mat<Rational> sys = Mat<Rational>::Zero(r * r, nu);
    Mat<Rational> rhs = Mat<Rational>::Zero(r * r, 1);
    auto pair = [&](const Mat<Rational>& u, const Mat<Rational>& v) { return Rational((u.transpose() * g * v)(0, 0)); };
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        int row = i * r + j;
        rhs(row, 0) = -pair(chosen[i], chosen[j]);
        for (int u = 0; u < nu; ++u) {
          auto [a, k] = unknowns[u];
          if (a == j) sys(row, u) += pair(chosen[i], imgs.col(k));
          if (a == i) sys(row, u) += pair(imgs.col(k), chosen[j]);
        }
      }
    auto sol = nu > 0 ? solve<Rational>(sys, rhs) : std::optional<Mat<Rational>>();
    if (nu == 0) {
      bool zero = true;
      for (int i = 0; i < rhs.rows(); ++i)
        if (rhs(i, 0) != 0) zero = false;
      if (zero) sol = Mat<Rational>::Zero(0, 1);
    }
    if (!sol) throw Error("NoOrthogonalComplement", "no isotropic complement of the exact part");
    for (int u = 0; u < nu; ++u) {
      auto [i, k] = unknowns[u];
      chosen[i] += (*sol)(u, 0) * imgs.col(k);
    }
    image = imgs;
    others = Mat<Rational>(n, r);
    for (int i = 0; i < r; ++i) others.col(i) = chosen[i];
  }
  Mat<Rational> basis(n, n);
  if (hd > 0) basis.leftCols(hd) = reps;
  if (r > 0) {
    basis.middleCols(hd, r) = image;
    basis.rightCols(r) = others;
  }
  auto inv = inverse<Rational>(basis);
  if (!inv) throw Error("InternalError", "splitting basis is singular");
  Mat<Rational> hq = Mat<Rational>::Zero(n, n);
  for (int j = 0; j < r; ++j) {
    Mat<Rational> o = others.col(j);
    int s = sign_of_parity(degree_of(o).codim + 1);
    hq += Rational(s) * o * inv->row(hd + j);
  }
  Retraction out;
  out.pi = GradedMatrix(c, coh.h, {0, 0}, to_poly(Mat<Rational>(inv->topRows(hd))));
  out.incl = GradedMatrix(coh.h, c, {0, 0}, to_poly(reps));
  out.h = GradedMatrix(c, c, {-1, 0}, to_poly(hq));
  check_retraction(out, d, pairing, unit);
  return out;
}

Retraction correct_side_conditions(const GradedMatrix& d, const GradedMatrix& pi, const GradedMatrix& incl,
                                   const GradedMatrix& h0, const Pairing* pairing, std::optional<int> unit) {
  const GradedModule& c = d.source();
  GradedMatrix dp = dprime(d);
  GradedMatrix id = GradedMatrix::identity(c);
  GradedMatrix lhs = compose(dp, h0) + compose(h0, dp);
  if (!(lhs - (compose(incl, pi) - id)).is_zero()) throw Error("NotAHomotopy", "d'h + hd' != I Pi - id");
  GradedMatrix q = id - compose(incl, pi);
  GradedMatrix h = h0;
  for (int round = 0; round < 3; ++round) {
    GradedMatrix h1 = compose(q, compose(h, q));
    GradedMatrix next;
    for (int s : {-1, 1}) {
      Retraction r{pi, incl, scaled(compose(h1, compose(dp, h1)), Poly(s))};
      Report rep = check_retraction(r, d, pairing, unit);
      bool core = true;
      for (const auto& v : rep.violations)
        if (!is_flag_check(v.check)) core = false;
      if (core) return r;
      if (s == -1) next = r.h;
    }
    h = next;
  }
  throw Error("CorrectionDiverged", "side conditions not reached after 3 rounds");
}

int default_length_cap(int k, const Rational& cutoff, const GappedMonoid& g) {
  Rational emin = min_positive_energy(g);
  int n = k;
  if (sgn(emin) > 0) {
    mpz_class q = cutoff.get_num() * emin.get_den();
    mpz_class dd = cutoff.get_den() * emin.get_num();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_mpz_t(), dd.get_mpz_t());
    n = std::max(k, static_cast<int>(fl.get_si()) + 1);
  }
  return 3 * n;
}

Transfer::Transfer(const AInftyStructure& a, const Retraction& r, std::optional<int> length_cap)
    : a_(a), r_(r), length_cap_(length_cap) {
  if (!(r.h.source() == a.module)) throw Error("NotAPerturbation", "retraction lives on a different module");
  Retraction chk = r;
  Report rep = check_retraction(chk, a.differential());
  for (const auto& v : rep.violations) {
    if (is_side_check(v.check)) throw Error("SideConditionsMissing", "retraction fails " + v.check);
    if (!is_flag_check(v.check)) throw Error("NotAPerturbation", "m_{1,0} does not match the retraction (" + v.check + ")");
  }
  i_ = linear_family(r.incl, 0);
  p_ = linear_family(r.pi, 0);
  h_ = linear_family(r.h, -1);
  ip_ = linear_family(compose(r.incl, r.pi), 0);
  id_ = identity_family(a.module.dim());
}

int Transfer::cap(int k) const { return length_cap_ ? *length_cap_ : default_length_cap(k, a_.cutoff, a_.monoid); }

BarElem Transfer::del(const BarElem& w) const { return extend_to_coderivation(a_.ops, a_.module, w, a_.cutoff, true); }

BarElem Transfer::hhat(const BarElem& w) const {
  return apply_fcoderivation(id_, ip_, h_, a_.module, a_.module, w, a_.cutoff);
}

std::map<Beta, Vec> Transfer::proj_length_one(const BarElem& e) const {
  return left_components(h_module(), apply_morphism(p_, h_module(), project_length(e, 1), a_.cutoff));
}

static void merge(std::map<Beta, Vec>& acc, const std::map<Beta, Vec>& x) {
  for (const auto& [b, v] : x) {
    axpy(acc[b], Poly(1), v);
    if (acc[b].empty()) acc.erase(b);
  }
}

std::map<Beta, Vec> Transfer::can_component(std::span<const int> x) const {
  std::map<Beta, Vec> acc;
  BarElem cur = apply_morphism(i_, a_.module, single_word({x.begin(), x.end()}), a_.cutoff);
  int n = cap(static_cast<int>(x.size()));
  for (int step = 0; step <= n && !cur.empty(); ++step) {
    BarElem t = del(cur);
    merge(acc, proj_length_one(t));
    cur = hhat(t);
  }
  return acc;
}

std::map<Beta, Vec> Transfer::incl_component(std::span<const int> x) const {
  std::map<Beta, Vec> acc;
  BarElem cur = apply_morphism(i_, a_.module, single_word({x.begin(), x.end()}), a_.cutoff);
  int n = cap(static_cast<int>(x.size()));
  for (int step = 0; step <= n && !cur.empty(); ++step) {
    merge(acc, left_components(a_.module, project_length(cur, 1)));
    cur = hhat(del(cur));
  }
  return acc;
}

std::map<Beta, Vec> Transfer::proj_component(std::span<const int> x) const {
  std::map<Beta, Vec> acc;
  BarElem cur = single_word({x.begin(), x.end()});
  int n = cap(static_cast<int>(x.size()));
  for (int step = 0; step <= n && !cur.empty(); ++step) {
    merge(acc, proj_length_one(cur));
    cur = del(hhat(cur));
  }
  return acc;
}

std::map<Beta, Vec> Transfer::homotopy_component(std::span<const int> x) const {
  std::map<Beta, Vec> acc;
  BarElem cur = hhat(single_word({x.begin(), x.end()}));
  int n = cap(static_cast<int>(x.size()));
  for (int step = 0; step <= n && !cur.empty(); ++step) {
    merge(acc, left_components(a_.module, project_length(cur, 1)));
    cur = hhat(del(cur));
  }
  return acc;
}

int Transfer::arity_for(int k_max) const {
  for (const auto& [l, t] : a_.ops.table())
    if (l.k == 0) return k_max + 1;
  return k_max;
}

TransferResult Transfer::run(int k_max) const {
  int kk = arity_for(k_max);
  const GradedModule& hm = h_module();
  const GradedModule& cm = a_.module;
  auto fill = [&](Family& f, int dim, auto&& comp) {
    for (int k = 0; k <= kk; ++k)
      for (const auto& x : all_tuples(dim, k))
        for (auto& [b, v] : comp(x)) f.set({k, b}, x, std::move(v));
  };
  auto can = std::make_shared<AInftyStructure>(empty_structure(hm, a_.monoid, a_.cutoff));
  fill(can->ops, hm.dim(), [&](const std::vector<int>& x) { return can_component(x); });
  if (a_.unit) {
    Vec pe = r_.pi.column(*a_.unit);
    if (pe.size() == 1 && pe.begin()->second == Poly(1)) can->unit = pe.begin()->first;
  }
  if (a_.pairing) can->pairing = induced_pairing(*a_.pairing, r_.incl);
  auto src = std::make_shared<AInftyStructure>(a_);
  TransferResult out;
  out.can = can;
  out.arity = kk;
  out.incl = AInftyMorphism{can, src, Family(hm.dim(), 0)};
  fill(out.incl.comps, hm.dim(), [&](const std::vector<int>& x) { return incl_component(x); });
  out.proj = AInftyMorphism{src, can, Family(cm.dim(), 0)};
  fill(out.proj.comps, cm.dim(), [&](const std::vector<int>& x) { return proj_component(x); });
  out.homotopy.f1 = identity_morphism(src);
  out.homotopy.f2 = compose(out.incl, out.proj, kk);
  out.homotopy.comps = Family(cm.dim(), -1);
  fill(out.homotopy.comps, cm.dim(), [&](const std::vector<int>& x) { return homotopy_component(x); });
  return out;
}

TransferResult transfer(const AInftyStructure& a, const Retraction& r, int k_max, std::optional<int> length_cap) {
  return Transfer(a, r, length_cap).run(k_max);
}

Pairing induced_pairing(const Pairing& p, const GradedMatrix& incl) {
  int n = incl.source().dim();
  Pairing out;
  out.degree = p.degree;
  out.gram = Mat<Poly>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.gram(i, j) = p.eval(incl.column(i), incl.column(j));
  return out;
}

}  // namespace ainf
