#include "ainf/words.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "ainf/error.hpp"

namespace ainf {

std::uint64_t Family::code(const int* in, int k) const {
  std::uint64_t c = 0;
  for (int i = 0; i < k; ++i) c = c * static_cast<std::uint64_t>(dim_) + static_cast<std::uint64_t>(in[i]);
  return c;
}

std::vector<int> Family::decode(std::uint64_t c, int k) const {
  std::vector<int> in(k);
  for (int i = k - 1; i >= 0; --i) {
    in[i] = static_cast<int>(c % static_cast<std::uint64_t>(dim_));
    c /= static_cast<std::uint64_t>(dim_);
  }
  return in;
}

void Family::set(const Label& l, std::span<const int> in, Vec out) {
  auto c = code(in.data(), l.k);
  if (out.empty()) {
    auto it = table_.find(l);
    if (it == table_.end()) return;
    it->second.erase(c);
    if (it->second.empty()) table_.erase(it);
    return;
  }
  table_[l][c] = std::move(out);
}

void Family::add(const Label& l, std::span<const int> in, const Vec& out) {
  if (out.empty()) return;
  auto c = code(in.data(), l.k);
  auto& tab = table_[l];
  Vec& v = tab[c];
  for (const auto& [i, a] : out) add_to(v, i, a);
  if (v.empty()) {
    tab.erase(c);
    if (tab.empty()) table_.erase(l);
  }
}

const Vec* Family::get(const Label& l, const int* in) const {
  auto it = table_.find(l);
  if (it == table_.end()) return nullptr;
  auto jt = it->second.find(code(in, l.k));
  return jt == it->second.end() ? nullptr : &jt->second;
}

int Family::max_arity() const {
  int k = -1;
  for (const auto& [l, t] : table_) k = std::max(k, l.k);
  return k;
}

Family Family::restricted(int max_k) const {
  Family f(dim_, degree_);
  for (const auto& [l, t] : table_)
    if (l.k <= max_k) f.table_[l] = t;
  return f;
}

Family Family::without(const Label& l) const {
  Family f = *this;
  f.table_.erase(l);
  return f;
}

bool operator==(const Family& a, const Family& b) {
  if (a.table_.size() != b.table_.size()) return false;
  for (const auto& [l, t] : a.table_) {
    auto it = b.table_.find(l);
    if (it == b.table_.end() || it->second.size() != t.size()) return false;
    for (const auto& [c, v] : t) {
      auto jt = it->second.find(c);
      if (jt == it->second.end() || !(jt->second == v)) return false;
    }
  }
  return true;
}

void add_term(BarElem& e, const Word& w, const Poly& c) {
  if (c.is_zero()) return;
  auto it = e.find(w);
  if (it == e.end()) {
    e.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) e.erase(it);
  }
}

void add_scaled(BarElem& acc, const BarElem& x, const Poly& c) {
  if (c.is_zero()) return;
  for (const auto& [w, a] : x) add_term(acc, w, c * a);
}

BarElem single_word(std::vector<int> letters, Beta beta, const Poly& c) {
  BarElem e;
  add_term(e, Word{beta, std::move(letters)}, c);
  return e;
}

BarElem project_length(const BarElem& e, int len) {
  BarElem out;
  for (const auto& [w, c] : e)
    if (static_cast<int>(w.letters.size()) == len) out.emplace(w, c);
  return out;
}

BarElem times_monomial(const BarElem& e, const Beta& b, const Rational& cutoff) {
  BarElem out;
  for (const auto& [w, c] : e) {
    Word v{w.beta + b, w.letters};
    if (v.beta.E > cutoff) continue;
    add_term(out, v, c);
  }
  return out;
}

std::string bar_str(const GradedModule& mod, const BarElem& e) {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : e) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*[";
    for (size_t i = 0; i < w.letters.size(); ++i) os << (i ? "|" : "") << mod.name(w.letters[i]);
    os << "]";
    if (!w.beta.is_zero()) os << "{" << to_string(w.beta) << "}";
  }
  return os.str();
}

static int letter_sign(const GradedModule& mod, int j, int mu) {
  Bidegree d = mod.degree(j);
  return left_action_sign(d.codim, d.ls, mu);
}

BarElem letter_term(const GradedModule& mod, const Vec& y, const Beta& b) {
  BarElem out;
  for (const auto& [j, c] : y) {
    Poly v = c;
    v *= letter_sign(mod, j, b.mu);
    add_term(out, Word{b, {j}}, v);
  }
  return out;
}

BarElem concat(const GradedModule& mod, const BarElem& u, const BarElem& v, const Rational& cutoff) {
  BarElem out;
  for (const auto& [wu, cu] : u)
    for (const auto& [wv, cv] : v) {
      Beta b = wu.beta + wv.beta;
      if (b.E > cutoff) continue;
      long par = 0;
      for (int z : wv.letters) par += crossing_parity(mod.degree(z));
      Word w{b, wu.letters};
      w.letters.insert(w.letters.end(), wv.letters.begin(), wv.letters.end());
      Poly c = cu * cv;
      c *= sign_of_parity(par * wu.beta.mu);
      add_term(out, w, c);
    }
  return out;
}

BarElem extend_to_coderivation(const Family& rho, const GradedModule& mod, const BarElem& w, const Rational& cutoff,
                               bool skip_linear) {
  BarElem out;
  const int d = rho.degree();
  for (const auto& [word, c] : w) {
    const auto& x = word.letters;
    int n = static_cast<int>(x.size());
    std::vector<long> pre(n + 1, 0), suf(n + 1, 0);
    for (int i = 0; i < n; ++i) pre[i + 1] = pre[i] + mod.degree(x[i]).codim - 1;
    for (int i = n - 1; i >= 0; --i) suf[i] = suf[i + 1] + crossing_parity(mod.degree(x[i]));
    for (const auto& [label, tab] : rho.table()) {
      if (skip_linear && label.k == 1 && label.beta.is_zero()) continue;
      if (label.k > n) continue;
      Beta tot = label.beta + word.beta;
      if (tot.E > cutoff) continue;
      for (int a = 0; a + label.k <= n; ++a) {
        const Vec* y = rho.get(label, x.data() + a);
        if (!y) continue;
        int s = sign_of_parity(d * pre[a]) * sign_of_parity(label.beta.mu * suf[a + label.k]);
        for (const auto& [j, cy] : *y) {
          Word v{tot, {}};
          v.letters.reserve(n - label.k + 1);
          v.letters.insert(v.letters.end(), x.begin(), x.begin() + a);
          v.letters.push_back(j);
          v.letters.insert(v.letters.end(), x.begin() + a + label.k, x.end());
          Poly coef = c * cy;
          coef *= s * letter_sign(mod, j, label.beta.mu);
          add_term(out, v, coef);
        }
      }
    }
  }
  return out;
}

BarElem apply_morphism(const Family& f, const GradedModule& target, const BarElem& w, const Rational& cutoff) {
  for (const auto& [label, tab] : f.table())
    if (label.k == 0 && label.beta.is_zero()) throw Error("NotTame", "morphism has a (0,0) component");
  BarElem out;
  for (const auto& [word, c] : w) {
    const auto& x = word.letters;
    int n = static_cast<int>(x.size());
    std::vector<int> acc;
    std::function<void(int, Beta, const Poly&)> rec = [&](int pos, Beta b, const Poly& coef) {
      if (pos == n) add_term(out, Word{b + word.beta, acc}, coef);
      for (const auto& [label, tab] : f.table()) {
        if (label.k > n - pos) continue;
        Beta tot = b + label.beta;
        if (tot.E + word.beta.E > cutoff) continue;
        const Vec* y = f.get(label, x.data() + pos);
        if (!y) continue;
        for (const auto& [j, cy] : *y) {
          Poly nc = coef * cy;
          nc *= letter_sign(target, j, tot.mu);
          acc.push_back(j);
          rec(pos + label.k, tot, nc);
          acc.pop_back();
        }
      }
    };
    rec(0, Beta{}, c);
  }
  return out;
}

BarElem apply_fcoderivation(const Family& f1, const Family& f2, const Family& rho, const GradedModule& source,
                            const GradedModule& target, const BarElem& w, const Rational& cutoff) {
  BarElem out;
  const int d = rho.degree();
  for (const auto& [word, c] : w) {
    const auto& x = word.letters;
    int n = static_cast<int>(x.size());
    std::vector<long> pre(n + 1, 0);
    for (int i = 0; i < n; ++i) pre[i + 1] = pre[i] + source.degree(x[i]).codim - 1;
    std::vector<BarElem> left(n + 1), right(n + 1);
    for (int a = 0; a <= n; ++a) {
      left[a] = apply_morphism(f1, target, single_word({x.begin(), x.begin() + a}), cutoff);
      right[a] = apply_morphism(f2, target, single_word({x.begin() + a, x.end()}), cutoff);
    }
    for (const auto& [label, tab] : rho.table()) {
      if (label.beta.E + word.beta.E > cutoff) continue;
      for (int a = 0; a + label.k <= n; ++a) {
        const Vec* y = rho.get(label, x.data() + a);
        if (!y) continue;
        BarElem mid = letter_term(target, *y, label.beta);
        BarElem t = concat(target, concat(target, left[a], mid, cutoff), right[a + label.k], cutoff);
        Poly coef = c;
        coef *= sign_of_parity(d * pre[a]);
        add_scaled(out, times_monomial(t, word.beta, cutoff), coef);
      }
    }
  }
  return out;
}

std::map<Beta, Vec> left_components(const GradedModule& mod, const BarElem& e) {
  std::map<Beta, Vec> out;
  for (const auto& [w, c] : e) {
    if (w.letters.size() != 1) continue;
    int j = w.letters[0];
    Poly v = c;
    v *= letter_sign(mod, j, w.beta.mu);
    add_to(out[w.beta], j, v);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.empty() ? out.erase(it) : std::next(it);
  return out;
}

std::map<Beta, Vec> insertion_sum(const Family& outer, const Family& inner, const GradedModule& mod,
                                  std::span<const int> x, const Rational& cutoff, bool maslov_terms) {
  std::map<Beta, Vec> out;
  const int n = static_cast<int>(x.size());
  const int din = inner.degree(), dout = outer.degree();
  std::vector<long> pre(n + 1, 0), par(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    pre[i + 1] = pre[i] + mod.degree(x[i]).codim - 1;
    par[i + 1] = par[i] + crossing_parity(mod.degree(x[i]));
  }
  std::vector<int> buf;
  for (const auto& [li, ti] : inner.table()) {
    if (li.k > n) continue;
    for (int i = 0; i + li.k <= n; ++i) {
      const Vec* y = inner.get(li, x.data() + i);
      if (!y) continue;
      long e = din * pre[i];
      if (maslov_terms) e += static_cast<long>(li.beta.mu) * (par[i] + dout);
      int s = sign_of_parity(e);
      int ko = n - li.k + 1;
      for (const auto& [lo, to] : outer.table()) {
        if (lo.k != ko) continue;
        Beta tot = lo.beta + li.beta;
        if (tot.E > cutoff) continue;
        buf.assign(x.begin(), x.begin() + i);
        buf.push_back(0);
        buf.insert(buf.end(), x.begin() + i + li.k, x.end());
        for (const auto& [j, cy] : *y) {
          buf[i] = j;
          const Vec* z = outer.get(lo, buf.data());
          if (!z) continue;
          Poly coef = cy;
          coef *= s;
          axpy(out[tot], coef, *z);
        }
      }
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.empty() ? out.erase(it) : std::next(it);
  return out;
}

Family linear_family(const GradedMatrix& m, int degree) {
  Family f(m.source().dim(), degree);
  for (int c = 0; c < m.source().dim(); ++c) {
    Vec col = m.column(c);
    if (!col.empty()) f.set({1, {}}, std::span<const int>(&c, 1), std::move(col));
  }
  return f;
}

Family identity_family(int dim) {
  Family f(dim, 0);
  for (int c = 0; c < dim; ++c) f.set({1, {}}, std::span<const int>(&c, 1), Vec{{c, Poly(1)}});
  return f;
}

Family collect_components(int source_dim, const GradedModule& target, int degree, int k_max,
                          const std::function<BarElem(const BarElem&)>& op) {
  Family f(source_dim, degree);
  for (int k = 0; k <= k_max; ++k)
    for (const auto& x : all_tuples(source_dim, k)) {
      auto comps = left_components(target, project_length(op(single_word(x)), 1));
      for (auto& [b, v] : comps) f.set({k, b}, x, std::move(v));
    }
  return f;
}

std::vector<std::vector<int>> all_tuples(int dim, int k) {
  std::vector<std::vector<int>> out;
  if (k == 0) return {{}};
  if (dim == 0) return out;
  std::vector<int> t(k, 0);
  while (true) {
    out.push_back(t);
    int i = k - 1;
    while (i >= 0 && ++t[i] == dim) t[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

}  // namespace ainf
