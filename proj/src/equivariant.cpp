#include "ainf/equivariant.hpp"

#include <set>

#include "ainf/error.hpp"

namespace ainf {

namespace {

void zero_columns(Report& rep, const std::string& what, const GradedMatrix& m) {
  for (int c = 0; c < m.source().dim(); ++c) {
    Vec col = m.column(c);
    if (!col.empty()) rep.add(what, 1, {}, {c}, vec_str(m.target(), col));
  }
}

bool is_zero_mat(const Mat<Rational>& m) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) return false;
  return true;
}

GradedMatrix over(const GradedMatrix& m, const Ring& ring) {
  return GradedMatrix(m.source().with_ring(ring), m.target().with_ring(ring), m.degree(), m.m());
}

Vec to_vec(const Mat<Rational>& col) {
  Vec v;
  for (int i = 0; i < col.rows(); ++i)
    if (col(i, 0) != 0) v.emplace(i, Poly(col(i, 0)));
  return v;
}

// degree of a homogeneous element over Q[alpha]
Bidegree vec_degree(const GradedModule& mod, const Vec& v) {
  for (const auto& [i, c] : v) {
    auto t = c.homogeneous_degree();
    if (!t) throw Error("DegreeMismatch", "element is not homogeneous");
    Bidegree d = mod.degree(i);
    d.codim += 2 * *t;
    return d;
  }
  throw Error("DegreeMismatch", "zero element has no degree");
}

std::vector<std::vector<int>> monomials(int n, int t) {
  std::vector<std::vector<int>> out;
  if (n == 0) {
    if (t == 0) out.push_back({});
    return out;
  }
  std::vector<int> e(n, 0);
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == n - 1) {
      e[j] = left;
      out.push_back(e);
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[j] = a;
      rec(j + 1, left - a);
    }
  };
  rec(0, t);
  return out;
}

std::vector<int> trimmed(std::vector<int> e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
  return e;
}

std::vector<int> padded(std::vector<int> e, int n) {
  e.resize(n, 0);
  return e;
}

// D = sum_J alpha^J D_J with rational D_J
std::map<std::vector<int>, Mat<Rational>> split_monomials(const Mat<Poly>& d, int n_al) {
  std::map<std::vector<int>, Mat<Rational>> parts;
  for (int r = 0; r < d.rows(); ++r)
    for (int c = 0; c < d.cols(); ++c)
      for (const auto& t : d(r, c).terms()) {
        auto key = padded(t.e, n_al);
        auto it = parts.find(key);
        if (it == parts.end()) it = parts.emplace(key, Mat<Rational>::Zero(d.rows(), d.cols())).first;
        it->second(r, c) += t.c;
      }
  return parts;
}

Vec eval_multilinear(const Family& f, const Label& l, const std::vector<Vec>& in) {
  Vec out;
  std::vector<int> idx(in.size());
  std::function<void(size_t, Poly)> rec = [&](size_t j, Poly c) {
    if (j == in.size()) {
      if (const Vec* y = f.get(l, idx.data())) axpy(out, c, *y);
      return;
    }
    for (const auto& [i, a] : in[j]) {
      idx[j] = i;
      rec(j + 1, c * a);
    }
  };
  rec(0, Poly(1));
  return out;
}

// inverse of a degree-(0,0) matrix whose constant part is invertible
GradedMatrix graded_inverse(const GradedMatrix& t) {
  const auto& mod = t.source();
  Mat<Rational> t0 = to_rational(evaluate(t.m(), std::vector<Rational>(mod.ring().num_alphas, 0)));
  auto t0inv = inverse<Rational>(t0);
  if (!t0inv) throw Error("NotUnipotent", "constant part is singular");
  GradedMatrix t0i(mod, mod, {0, 0}, to_poly(*t0inv));
  return compose(unipotent_inverse(compose(t0i, t)), t0i);
}

Mat<Rational> kron_left(const Mat<Rational>& a, int nb) {
  int na = static_cast<int>(a.rows());
  Mat<Rational> m = Mat<Rational>::Zero(na * nb, na * nb);
  for (int r = 0; r < na; ++r)
    for (int c = 0; c < na; ++c)
      if (a(r, c) != 0)
        for (int j = 0; j < nb; ++j) m(r * nb + j, c * nb + j) = a(r, c);
  return m;
}

Mat<Rational> kron_right(const Mat<Rational>& b, const GradedModule& a, int parity) {
  int na = a.dim(), nb = static_cast<int>(b.rows());
  Mat<Rational> m = Mat<Rational>::Zero(na * nb, na * nb);
  for (int i = 0; i < na; ++i) {
    int s = sign_of_parity(static_cast<long>(parity) * a.degree(i).codim);
    for (int r = 0; r < nb; ++r)
      for (int c = 0; c < nb; ++c)
        if (b(r, c) != 0) m(i * nb + r, i * nb + c) = s * b(r, c);
  }
  return m;
}

}  // namespace

Report check_tstar(const TStarModule& m) {
  Report rep;
  if (static_cast<int>(m.iota.size()) != m.n_alphas || static_cast<int>(m.lie.size()) != m.n_alphas) {
    rep.add("shape", -1, {}, {}, "need one iota and one L per alpha");
    return rep;
  }
  zero_columns(rep, "d-squared", compose(m.d, m.d));
  for (int a = 0; a < m.n_alphas; ++a) {
    const auto& ia = m.iota[a];
    const auto& la = m.lie[a];
    zero_columns(rep, "cartan", compose(m.d, ia) + compose(ia, m.d) - la);
    zero_columns(rep, "lie-d", compose(la, m.d) - compose(m.d, la));
    for (int b = 0; b < m.n_alphas; ++b) {
      zero_columns(rep, "iota-anticommute", compose(ia, m.iota[b]) + compose(m.iota[b], ia));
      zero_columns(rep, "lie-iota", compose(la, m.iota[b]) - compose(m.iota[b], la));
      zero_columns(rep, "lie-lie", compose(la, m.lie[b]) - compose(m.lie[b], la));
    }
  }
  rep.sort();
  return rep;
}

InvariantPart invariant_subcomplex(const TStarModule& m) {
  const auto& mod = m.module;
  int n = mod.dim();
  InvariantPart out;
  Mat<Rational> stack(n * m.n_alphas, n);
  for (int a = 0; a < m.n_alphas; ++a) stack.middleRows(a * n, n) = to_rational(m.lie[a].m());
  if (m.n_alphas == 0 || is_zero_mat(stack)) {
    out.module = mod;
    out.embed = Mat<Rational>::Identity(n, n);
    out.proj = Mat<Rational>::Identity(n, n);
    out.whole = true;
    return out;
  }
  Mat<Rational> k = nullspace<Rational>(stack);
  int kd = static_cast<int>(k.cols());
  std::vector<std::string> names;
  std::vector<Bidegree> degs;
  for (int j = 0; j < kd; ++j) {
    int lead = -1, count = 0;
    for (int i = 0; i < n; ++i)
      if (k(i, j) != 0) {
        if (lead < 0) lead = i;
        ++count;
        if (mod.degree(i) != mod.degree(lead)) throw Error("InternalError", "invariant vector is not homogeneous");
      }
    names.push_back(count == 1 && k(lead, j) == 1 ? mod.name(lead) : mod.name(lead) + "~");
    degs.push_back(mod.degree(lead));
  }
  Mat<Rational> basis = k;
  for (int i = 0; i < n && basis.cols() < n; ++i) {
    Mat<Rational> trial(n, basis.cols() + 1);
    trial << basis, Mat<Rational>(Mat<Rational>::Identity(n, n).col(i));
    if (rank<Rational>(trial) == trial.cols()) basis = trial;
  }
  auto inv = inverse<Rational>(basis);
  if (!inv) throw Error("InternalError", "complement of the invariants is singular");
  out.module = GradedModule(mod.ring(), names, degs);
  out.embed = k;
  out.proj = inv->topRows(kd);
  return out;
}

EquivariantComplex cartan_complex(const TStarModule& m) {
  EquivariantComplex e;
  e.inv = invariant_subcomplex(m);
  const auto& inv = e.inv;
  Ring ring{m.n_alphas};
  e.module = inv.module.with_ring(ring);
  auto restrict = [&](const GradedMatrix& f, const std::string& what) {
    Mat<Rational> fq = to_rational(f.m());
    Mat<Rational> r = inv.proj * fq * inv.embed;
    if (!is_zero_mat(Mat<Rational>(inv.embed * r - fq * inv.embed)))
      throw Error("NotInvariantClosed", what + " does not preserve the invariant subcomplex");
    return GradedMatrix(e.module, e.module, f.degree(), to_poly(r));
  };
  e.d = restrict(m.d, "d");
  Mat<Poly> dm = e.d.m();
  for (int a = 0; a < m.n_alphas; ++a) {
    e.iota.push_back(restrict(m.iota[a], "iota"));
    const auto& im = e.iota.back().m();
    for (int r = 0; r < dm.rows(); ++r)
      for (int c = 0; c < dm.cols(); ++c)
        if (!im(r, c).is_zero()) dm(r, c) -= Poly::alpha(a + 1) * im(r, c);
  }
  e.D = GradedMatrix(e.module, e.module, {1, 0}, dm);
  if (!compose(e.D, e.D).is_zero()) throw Error("NotADifferential", "D^2 != 0 on the Cartan complex");
  return e;
}

Family iota_prime_family(const GradedMatrix& iota) { return linear_family(sign_twist(iota), -1); }

Family bracket(const Family& h1, const Family& h2, const GradedModule& mod, const Rational& cutoff, int k_max) {
  int d1 = h1.degree(), d2 = h2.degree();
  int s = sign_of_parity(static_cast<long>(d1) * d2);
  return collect_components(mod.dim(), mod, d1 + d2, k_max, [&](const BarElem& w) {
    BarElem out = extend_to_coderivation(h1, mod, extend_to_coderivation(h2, mod, w, cutoff), cutoff);
    add_scaled(out, extend_to_coderivation(h2, mod, extend_to_coderivation(h1, mod, w, cutoff), cutoff), Poly(-s));
    return out;
  });
}

static void require_same_module(const AInftyStructure& a, const TStarModule& m) {
  if (!(a.module == m.module)) throw Error("ModuleMismatch", "structure and T*-module have different bases");
}

Report check_invariance(const AInftyStructure& a, const TStarModule& m, int k_max) {
  require_same_module(a, m);
  Report rep;
  const auto& mod = a.module;
  int n = mod.dim();
  for (int ai = 0; ai < m.n_alphas; ++ai) {
    GradedMatrix ip = sign_twist(m.iota[ai]);
    for (const auto& [label, tab] : a.ops.table()) {
      if (label.k > k_max || (label.k == 1 && label.beta.is_zero())) continue;
      for (const auto& x : all_tuples(n, label.k)) {
        Vec lhs;
        if (const Vec* y = a.ops.get(label, x.data())) lhs = ip.apply(*y);
        Vec rhs;
        long pre = 0;
        for (int i = 0; i < label.k; ++i) {
          std::vector<Vec> in;
          for (int j = 0; j < label.k; ++j) in.push_back(j == i ? ip.column(x[j]) : Vec{{x[j], Poly(1)}});
          axpy(rhs, Poly(sign_of_parity(1 + label.beta.mu + pre)), eval_multilinear(a.ops, label, in));
          pre += mod.degree(x[i]).codim - 1;
        }
        axpy(lhs, Poly(-1), rhs);
        if (!lhs.empty())
          rep.add("invariance", label.k, label.beta, x, "alpha " + std::to_string(ai + 1) + ": " + vec_str(mod, lhs));
      }
    }
  }
  rep.sort();
  return rep;
}

Report check_invariance_bar(const AInftyStructure& a, const TStarModule& m, int k_max) {
  require_same_module(a, m);
  Report rep;
  const auto& mod = a.module;
  Family ops = a.ops.without({1, {}});
  for (int ai = 0; ai < m.n_alphas; ++ai) {
    Family ip = iota_prime_family(m.iota[ai]);
    for (int k = 0; k <= k_max; ++k)
      for (const auto& x : all_tuples(mod.dim(), k)) {
        BarElem w = single_word(x);
        BarElem out = extend_to_coderivation(ip, mod, extend_to_coderivation(ops, mod, w, a.cutoff), a.cutoff);
        add_scaled(out, extend_to_coderivation(ops, mod, extend_to_coderivation(ip, mod, w, a.cutoff), a.cutoff),
                   Poly(1));
        for (const auto& [b, v] : left_components(mod, project_length(out, 1)))
          if (!v.empty()) rep.add("invariance", k, b, x, "alpha " + std::to_string(ai + 1) + ": " + vec_str(mod, v));
      }
  }
  rep.sort();
  return rep;
}

Pairing extend_pairing(const Pairing& p, const EquivariantComplex& e) {
  Mat<Rational> g = to_rational(p.gram);
  return Pairing{p.degree, to_poly(Mat<Rational>(e.inv.embed.transpose() * g * e.inv.embed))};
}

static std::optional<int> map_unit(const InvariantPart& inv, std::optional<int> unit) {
  if (!unit) return std::nullopt;
  if (inv.whole) return unit;
  for (int j = 0; j < inv.embed.cols(); ++j) {
    bool hit = true;
    for (int i = 0; i < inv.embed.rows(); ++i)
      if (inv.embed(i, j) != (i == *unit ? 1 : 0)) hit = false;
    if (hit) return j;
  }
  return std::nullopt;
}

AInftyStructure equivariant_extend(const AInftyStructure& a, const TStarModule& m) {
  require_same_module(a, m);
  if (!check_tstar(m).ok()) throw Error("NotATStarModule", "T*-module identities fail");
  if (!(a.differential() == m.d)) throw Error("ModuleMismatch", "m_{1,0} does not match the T*-module differential");
  Report inv_rep = check_invariance(a, m, std::max(a.ops.max_arity(), 0));
  if (!inv_rep.ok()) throw Error("NotInvariant", inv_rep.str(a.module));
  EquivariantComplex e = cartan_complex(m);
  AInftyStructure out;
  out.module = e.module;
  out.monoid = a.monoid;
  out.cutoff = a.cutoff;
  out.ops = Family(e.module.dim(), 1);
  int nt = e.module.dim();
  for (const auto& [label, tab] : a.ops.table()) {
    if (label.k == 1 && label.beta.is_zero()) continue;
    if (e.inv.whole) {
      for (const auto& [code, v] : tab) out.ops.set(label, a.ops.decode(code, label.k), v);
      continue;
    }
    for (const auto& x : all_tuples(nt, label.k)) {
      std::vector<Vec> in;
      for (int i : x) in.push_back(to_vec(e.inv.embed.col(i)));
      Vec y = eval_multilinear(a.ops, label, in);
      if (y.empty()) continue;
      Mat<Rational> col = Mat<Rational>::Zero(a.module.dim(), 1);
      for (const auto& [i, c] : y) col(i, 0) = c.constant_term();
      Vec yt = to_vec(e.inv.proj * col);
      if (!yt.empty()) out.ops.set(label, x, yt);
    }
  }
  GradedMatrix dp = sign_twist(e.D);
  for (int c = 0; c < nt; ++c) {
    Vec col = dp.column(c);
    if (!col.empty()) out.ops.set({1, {}}, std::vector<int>{c}, col);
  }
  out.unit = map_unit(e.inv, a.unit);
  if (a.pairing) out.pairing = extend_pairing(*a.pairing, e);
  return out;
}

AInftyStructure specialize_alpha_zero(const AInftyStructure& a) {
  std::vector<Rational> zero(a.ring().num_alphas, 0);
  AInftyStructure out;
  out.module = a.module.with_ring(Ring{});
  out.monoid = a.monoid;
  out.cutoff = a.cutoff;
  out.ops = Family(a.ops.source_dim(), a.ops.degree());
  for_each_component(a.ops, [&](const Label& l, const std::vector<int>& in, const Vec& v) {
    Vec w;
    for (const auto& [i, c] : v) add_to(w, i, c.evaluate(zero));
    if (!w.empty()) out.ops.set(l, in, w);
  });
  out.unit = a.unit;
  if (a.pairing) out.pairing = Pairing{a.pairing->degree, evaluate(a.pairing->gram, zero)};
  return out;
}

AInftyStructure drop_energy(const AInftyStructure& a) {
  AInftyStructure out = a;
  out.monoid = {};
  out.cutoff = 0;
  out.ops = Family(a.ops.source_dim(), a.ops.degree());
  for_each_component(a.ops, [&](const Label& l, const std::vector<int>& in, const Vec& v) {
    if (l.beta.is_zero()) out.ops.set(l, in, v);
  });
  return out;
}

Dga cartan_weil_dga(const Dga& base, const TStarModule& m) {
  if (!(base.module == m.module)) throw Error("ModuleMismatch", "DGA and T*-module have different bases");
  EquivariantComplex e = cartan_complex(m);
  Dga out;
  out.module = e.module;
  out.d = e.D;
  out.pairing_degree = base.pairing_degree;
  int nt = e.module.dim(), n = base.module.dim();
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < nt; ++j) {
      Vec y = dga_product(base, to_vec(e.inv.embed.col(i)), to_vec(e.inv.embed.col(j)));
      if (y.empty()) continue;
      Mat<Rational> col = Mat<Rational>::Zero(n, 1);
      for (const auto& [r, c] : y) col(r, 0) = c.constant_term();
      Mat<Rational> yt = e.inv.proj * col;
      if (!is_zero_mat(Mat<Rational>(e.inv.embed * yt - col)))
        throw Error("NotInvariant", "product of invariants is not invariant");
      out.product[{i, j}] = to_vec(yt);
    }
  if (base.integral) {
    std::vector<Poly> integ(nt);
    for (int j = 0; j < nt; ++j)
      for (int i = 0; i < n; ++i)
        if (e.inv.embed(i, j) != 0) integ[j] += Poly(e.inv.embed(i, j)) * (*base.integral)[i];
    out.integral = integ;
  }
  out.unit = map_unit(e.inv, base.unit);
  return out;
}

std::map<Bidegree, int> cohomology_dims(const GradedMatrix& d) {
  const auto& mod = d.source();
  Mat<Rational> dq = to_rational(d.m());
  std::map<Bidegree, std::vector<int>> groups;
  for (int i = 0; i < mod.dim(); ++i) groups[mod.degree(i)].push_back(i);
  auto block_rank = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
    if (rows.empty() || cols.empty()) return 0;
    Mat<Rational> b(rows.size(), cols.size());
    for (size_t r = 0; r < rows.size(); ++r)
      for (size_t c = 0; c < cols.size(); ++c) b(r, c) = dq(rows[r], cols[c]);
    return rank<Rational>(b);
  };
  std::map<Bidegree, int> out;
  for (const auto& [deg, idx] : groups) {
    Bidegree up{deg.codim + 1, deg.ls}, down{deg.codim - 1, deg.ls};
    int r_out = groups.count(up) ? block_rank(groups[up], idx) : 0;
    int r_in = groups.count(down) ? block_rank(idx, groups[down]) : 0;
    int h = static_cast<int>(idx.size()) - r_out - r_in;
    if (h != 0) out[deg] = h;
  }
  return out;
}

bool check_even_cohomology(const GradedMatrix& d) {
  for (const auto& [deg, h] : cohomology_dims(d))
    if (deg.codim % 2 != 0 && h != 0) return false;
  return true;
}

ClosedLift lift_closed(const GradedMatrix& D, const std::vector<Vec>& preferred) {
  const auto& mod = D.source();
  int n = mod.dim();
  int nal = mod.ring().num_alphas;
  auto parts = split_monomials(D.m(), nal);
  std::vector<int> zero(nal, 0);
  Mat<Rational> d0 = parts.count(zero) ? parts[zero] : Mat<Rational>(Mat<Rational>::Zero(n, n));
  GradedModule modq = mod.with_ring(Ring{});
  ClosedLift out;
  out.base = cohomology_of(GradedMatrix(modq, modq, {1, 0}, to_poly(d0)), preferred);
  const auto& sp = out.base.split;
  int hd = static_cast<int>(sp.reps.cols()), r = static_cast<int>(sp.image.cols());
  if (n == 0) return out;
  int cmin = mod.degree(0).codim, cmax = cmin;
  for (int i = 0; i < n; ++i) {
    cmin = std::min(cmin, mod.degree(i).codim);
    cmax = std::max(cmax, mod.degree(i).codim);
  }
  for (int i = 0; i < hd; ++i) {
    Vec rep = to_vec(sp.reps.col(i));
    Bidegree deg = vec_degree(modq, rep);
    std::map<std::vector<int>, Mat<Rational>> sigma;
    sigma[zero] = sp.reps.col(i);
    for (int t = 1; 2 * t <= deg.codim - cmin; ++t)
      for (const auto& L : monomials(nal, t)) {
        Mat<Rational> rhs = Mat<Rational>::Zero(n, 1);
        for (const auto& [J, dj] : parts) {
          if (J == zero) continue;
          std::vector<int> rest(nal);
          bool ok = true;
          for (int a = 0; a < nal; ++a) {
            rest[a] = L[a] - J[a];
            if (rest[a] < 0) ok = false;
          }
          if (!ok || !sigma.count(rest)) continue;
          rhs -= dj * sigma[rest];
        }
        if (is_zero_mat(rhs)) continue;
        Mat<Rational> co = sp.coords * rhs;
        bool obstructed = false;
        for (int j = 0; j < n; ++j)
          if (co(j, 0) != 0 && (j < hd || j >= hd + r)) obstructed = true;
        if (obstructed)
          throw Error("LiftObstructed", "lift of " + out.base.h.name(i) + " obstructed in alpha-degree " +
                                            std::to_string(t) + " (codim " + std::to_string(deg.codim - 2 * t + 1) +
                                            ")");
        sigma[L] = sp.others * co.middleRows(hd, r);
      }
    Vec lift;
    for (const auto& [L, s] : sigma)
      for (int j = 0; j < n; ++j)
        if (s(j, 0) != 0) add_to(lift, j, Poly::monomial(trimmed(L), s(j, 0)));
    if (!D.apply(lift).empty())
      throw Error("LiftObstructed", "lift of " + out.base.h.name(i) + " is not closed: D = " +
                                        vec_str(mod, D.apply(lift)));
    out.lifts.push_back(lift);
  }
  // H(C[alpha], D) must be free on the lifts, compared dimension by dimension over Q
  for (int ls = 0; ls < 2; ++ls)
    for (int deg = cmin; deg <= cmax + 2; ++deg) {
      auto basis = [&](int c) {
        std::vector<std::pair<std::vector<int>, int>> b;
        for (int e = 0; e < n; ++e) {
          Bidegree de = mod.degree(e);
          if (de.ls != ls || c < de.codim || (c - de.codim) % 2 != 0) continue;
          for (const auto& J : monomials(nal, (c - de.codim) / 2)) b.push_back({J, e});
        }
        return b;
      };
      auto drank = [&](int c) {
        auto src = basis(c), tgt = basis(c + 1);
        if (src.empty() || tgt.empty()) return 0;
        std::map<std::pair<std::vector<int>, int>, int> row;
        for (size_t k = 0; k < tgt.size(); ++k) row[tgt[k]] = static_cast<int>(k);
        Mat<Rational> m = Mat<Rational>::Zero(tgt.size(), src.size());
        for (size_t k = 0; k < src.size(); ++k) {
          const auto& [J, e] = src[k];
          for (const auto& [K, dk] : parts) {
            std::vector<int> jk(nal);
            for (int a = 0; a < nal; ++a) jk[a] = J[a] + K[a];
            for (int f = 0; f < n; ++f)
              if (dk(f, e) != 0) m(row.at({jk, f}), k) += dk(f, e);
          }
        }
        return rank<Rational>(m);
      };
      int h = static_cast<int>(basis(deg).size()) - drank(deg) - drank(deg - 1);
      int want = 0;
      for (const auto& l : out.lifts) {
        Bidegree dl = vec_degree(mod, l);
        if (dl.ls == ls && deg >= dl.codim && (deg - dl.codim) % 2 == 0)
          want += static_cast<int>(monomials(nal, (deg - dl.codim) / 2).size());
      }
      if (h != want)
        throw Error("LiftObstructed", "cohomology in degree (" + std::to_string(deg) + "," + std::to_string(ls) +
                                          ") has dimension " + std::to_string(h) + ", free module on the lifts gives " +
                                          std::to_string(want));
    }
  return out;
}

ClosedLift lift_closed_basis(const EquivariantComplex& e) { return lift_closed(e.D); }

std::vector<Vec> normalize_basis(const GradedModule& mod, const std::vector<Vec>& lifts, const Pairing& p) {
  std::vector<int> first, second;
  for (int i = 0; i < static_cast<int>(lifts.size()); ++i) {
    Bidegree d = vec_degree(mod, lifts[i]);
    if (p.degree.ls == 1) {
      (d.ls == 0 ? first : second).push_back(i);
    } else {
      if (2 * d.codim == p.degree.codim)
        throw Error("InvalidArgument", "middle-degree classes do not split into dual halves");
      (2 * d.codim < p.degree.codim ? first : second).push_back(i);
    }
  }
  if (first.size() != second.size()) throw Error("InvalidArgument", "lifts do not split into dual halves");
  int N = static_cast<int>(first.size());
  if (N == 0) return lifts;
  Mat<Poly> c(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) c(i, j) = p.eval(lifts[first[i]], lifts[second[j]]);
  int nal = mod.ring().num_alphas;
  auto g0inv = inverse<Rational>(to_rational(evaluate(c, std::vector<Rational>(nal, 0))));
  if (!g0inv) throw Error("NotUnipotent", "pairing between the halves is degenerate at alpha = 0");
  std::vector<std::string> names;
  std::vector<Bidegree> degs;
  for (int j = 0; j < N; ++j) {
    names.push_back("s" + std::to_string(j));
    degs.push_back(vec_degree(mod, lifts[second[j]]));
  }
  GradedModule s(mod.ring(), names, degs);
  Mat<Poly> g0i = to_poly(*g0inv);
  Mat<Poly> u(N, N);
  u.setConstant(Poly());
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i)
        if (!g0i(k, i).is_zero() && !c(i, j).is_zero()) u(k, j) += g0i(k, i) * c(i, j);
  GradedMatrix uinv = unipotent_inverse(GradedMatrix(s, s, {0, 0}, u));
  std::vector<Vec> out = lifts;
  for (int j = 0; j < N; ++j) {
    Vec w;
    for (int k = 0; k < N; ++k) {
      Poly x;
      for (int l = 0; l < N; ++l)
        if (!uinv(k, l).is_zero() && !g0i(l, j).is_zero()) x += uinv(k, l) * g0i(l, j);
      if (!x.is_zero()) axpy(w, x, lifts[second[k]]);
    }
    out[second[j]] = w;
  }
  return out;
}

EquivariantRetraction equivariant_retraction(const TStarModule& m, const Retraction& base, const Pairing* pairing,
                                             std::optional<int> unit) {
  EquivariantRetraction out;
  out.complex = cartan_complex(m);
  const auto& e = out.complex;
  Ring ring{m.n_alphas};
  if (!(base.h.source() == e.inv.module)) throw Error("ModuleMismatch", "base retraction is not on the invariant basis");
  if (!check_even_cohomology(GradedMatrix(e.inv.module, e.inv.module, {1, 0}, e.d.m())))
    throw Error("LiftObstructed", "cohomology of the invariant complex is not concentrated in even codimension");
  GradedMatrix h0 = over(base.h, ring), i0 = over(base.incl, ring), p0 = over(base.pi, ring);
  GradedMatrix delta = dprime(e.D) - dprime(e.d);
  int bound = e.module.dim() + 2;
  auto series = [&](GradedMatrix term, auto step) {
    GradedMatrix acc = term;
    for (int a = 0; !term.is_zero(); ++a) {
      if (a > bound) throw Error("InternalError", "perturbation series does not terminate");
      term = step(term);
      acc = acc + term;
    }
    return acc;
  };
  GradedMatrix h = series(h0, [&](const GradedMatrix& t) { return compose(t, compose(delta, h0)); });
  GradedMatrix incl = series(i0, [&](const GradedMatrix& t) { return compose(h0, compose(delta, t)); });
  GradedMatrix pi = series(p0, [&](const GradedMatrix& t) { return compose(t, compose(delta, h0)); });
  GradedMatrix dh = compose(p0, compose(delta, incl));
  if (!dh.is_zero()) throw Error("LiftObstructed", "transferred differential on H is nonzero");
  std::optional<Pairing> pe;
  if (pairing) pe = Pairing{pairing->degree, pairing->gram};
  if (pe) {
    std::vector<Vec> lifts;
    for (int j = 0; j < incl.source().dim(); ++j) lifts.push_back(incl.column(j));
    std::optional<std::vector<Vec>> norm;
    try {
      norm = normalize_basis(e.module, lifts, *pe);
    } catch (const Error& err) {
      if (err.name() != "InvalidArgument") throw;
    }
    if (norm) {
      const auto& hm = incl.source();
      Mat<Poly> im(e.module.dim(), hm.dim());
      im.setConstant(Poly());
      for (int j = 0; j < hm.dim(); ++j)
        for (const auto& [i, c] : (*norm)[j]) im(i, j) = c;
      GradedMatrix incl2(hm, e.module, {0, 0}, im);
      GradedMatrix t = compose(pi, incl2);
      pi = compose(graded_inverse(t), pi);
      incl = incl2;
    }
  }
  out.r = correct_side_conditions(e.D, pi, incl, h, pe ? &*pe : nullptr, unit);
  out.pairing = pe;
  out.unit = unit;
  return out;
}

TStarModule tensor(const TStarModule& a, const TStarModule& b) {
  const auto& ma = a.module;
  const auto& mb = b.module;
  int na = ma.dim(), nb = mb.dim();
  std::vector<std::string> names;
  std::vector<Bidegree> degs;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      names.push_back(ma.name(i) + "." + mb.name(j));
      degs.push_back(ma.degree(i) + mb.degree(j));
    }
  TStarModule t;
  t.module = GradedModule(Ring{}, names, degs);
  t.n_alphas = a.n_alphas + b.n_alphas;
  auto build = [&](const Mat<Rational>& m, Bidegree deg) { return GradedMatrix(t.module, t.module, deg, to_poly(m)); };
  t.d = build(kron_left(to_rational(a.d.m()), nb) + kron_right(to_rational(b.d.m()), ma, 1), {1, 0});
  for (int x = 0; x < a.n_alphas; ++x) {
    t.iota.push_back(build(kron_left(to_rational(a.iota[x].m()), nb), {-1, 0}));
    t.lie.push_back(build(kron_left(to_rational(a.lie[x].m()), nb), {0, 0}));
  }
  for (int x = 0; x < b.n_alphas; ++x) {
    t.iota.push_back(build(kron_right(to_rational(b.iota[x].m()), ma, 1), {-1, 0}));
    t.lie.push_back(build(kron_right(to_rational(b.lie[x].m()), ma, 0), {0, 0}));
  }
  return t;
}

KunnethResult kunneth_check(const TStarModule& a, const TStarModule& b) {
  KunnethResult out;
  EquivariantComplex ea = cartan_complex(a), eb = cartan_complex(b);
  auto base_d = [](const EquivariantComplex& e) { return GradedMatrix(e.inv.module, e.inv.module, {1, 0}, e.d.m()); };
  bool even = true;
  if (!check_even_cohomology(base_d(ea))) {
    out.report.add("precondition", -1, {}, {}, "first factor has odd cohomology");
    even = false;
  }
  if (!check_even_cohomology(base_d(eb))) {
    out.report.add("precondition", -1, {}, {}, "second factor has odd cohomology");
    even = false;
  }
  if (!even) return out;
  out.rank1 = static_cast<int>(lift_closed(ea.D).lifts.size());
  out.rank2 = static_cast<int>(lift_closed(eb.D).lifts.size());
  try {
    out.rank = static_cast<int>(lift_closed(cartan_complex(tensor(a, b)).D).lifts.size());
  } catch (const Error& err) {
    out.report.add("kunneth", -1, {}, {}, err.what());
    return out;
  }
  if (out.rank != out.rank1 * out.rank2)
    out.report.add("kunneth", -1, {}, {},
                   "rank " + std::to_string(out.rank) + " != " + std::to_string(out.rank1) + " * " +
                       std::to_string(out.rank2));
  return out;
}

}  // namespace ainf
