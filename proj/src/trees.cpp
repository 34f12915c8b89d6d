#include "ainf/trees.hpp"

#include <set>
#include <sstream>

namespace ainf {

int RibbonTree::leaves() const {
  int n = 0;
  for (const auto& c : children) n += c ? c->leaves() : 1;
  return n;
}

Beta RibbonTree::total() const {
  Beta b = beta;
  for (const auto& c : children)
    if (c) b = b + c->total();
  return b;
}

std::string RibbonTree::str() const {
  std::ostringstream os;
  os << "(" << k << ";" << beta.E.get_str() << "," << beta.mu;
  for (const auto& c : children) os << " " << (c ? c->str() : "x");
  os << ")";
  return os.str();
}

namespace {

class Enumerator {
 public:
  Enumerator(const GappedMonoid& g, const Rational& cutoff) : emin_(min_positive_energy(g)) {
    auto m = enumerate_monoid(g, cutoff);
    members_.insert(m.begin(), m.end());
  }

  const std::vector<TreePtr>& trees(int n, const Beta& b) {
    auto key = std::make_pair(n, b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto& slot = memo_[key];  // empty while in progress
    std::vector<TreePtr> out;
    if (n == 0 && b.is_zero()) return slot;
    for (const auto& bv : members_) {
      Beta rest = b - bv;
      if (!members_.count(rest)) continue;
      int kmax = n;
      if (sgn(emin_) > 0) {
        Rational q = rest.E / emin_;
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        kmax += static_cast<int>(fl.get_si());
      }
      for (int kv = 0; kv <= kmax; ++kv) {
        if (kv <= 1 && bv.is_zero()) continue;
        for (auto& kids : sequences(kv, n, rest)) {
          auto t = std::make_shared<RibbonTree>();
          t->k = kv;
          t->beta = bv;
          t->children = std::move(kids);
          out.push_back(t);
        }
      }
    }
    memo_[key] = std::move(out);
    return memo_[key];
  }

 private:
  std::vector<std::vector<TreePtr>> sequences(int count, int n, const Beta& b) {
    std::vector<std::vector<TreePtr>> out;
    if (count == 0) {
      if (n == 0 && b.is_zero()) out.push_back({});
      return out;
    }
    if (n >= 1)
      for (auto& tail : sequences(count - 1, n - 1, b)) {
        tail.insert(tail.begin(), nullptr);
        out.push_back(std::move(tail));
      }
    for (int n1 = 0; n1 <= n; ++n1)
      for (const auto& b1 : members_) {
        Beta rest = b - b1;
        if (!members_.count(rest)) continue;
        std::vector<TreePtr> firsts = trees(n1, b1);
        if (firsts.empty()) continue;
        auto tails = sequences(count - 1, n - n1, rest);
        for (const auto& f : firsts)
          for (const auto& tail : tails) {
            std::vector<TreePtr> s{f};
            s.insert(s.end(), tail.begin(), tail.end());
            out.push_back(std::move(s));
          }
      }
    return out;
  }

  Rational emin_;
  std::set<Beta> members_;
  std::map<std::pair<int, Beta>, std::vector<TreePtr>> memo_;
};

// inserts the single component m_{label} at slot pos of every word
BarElem insert_at(const BarElem& w, const Family& ops, const Label& label, int pos, const GradedModule& mod,
                  const Rational& cutoff) {
  BarElem out;
  for (const auto& [word, c] : w) {
    const auto& x = word.letters;
    int n = static_cast<int>(x.size());
    if (pos + label.k > n) continue;
    Beta tot = label.beta + word.beta;
    if (tot.E > cutoff) continue;
    const Vec* y = ops.get(label, x.data() + pos);
    if (!y) continue;
    long pre = 0, suf = 0;
    for (int i = 0; i < pos; ++i) pre += mod.degree(x[i]).codim - 1;
    for (int i = pos + label.k; i < n; ++i) suf += crossing_parity(mod.degree(x[i]));
    int s = sign_of_parity(ops.degree() * pre) * sign_of_parity(label.beta.mu * suf);
    for (const auto& [j, cy] : *y) {
      Word v{tot, std::vector<int>(x.begin(), x.begin() + pos)};
      v.letters.push_back(j);
      v.letters.insert(v.letters.end(), x.begin() + pos + label.k, x.end());
      Bidegree dj = mod.degree(j);
      Poly coef = c * cy;
      coef *= s * left_action_sign(dj.codim, dj.ls, label.beta.mu);
      add_term(out, v, coef);
    }
  }
  return out;
}

class TreeEval {
 public:
  TreeEval(const AInftyStructure& a, const Retraction& r) : a_(a), h_(linear_family(r.h, -1)) {}

  BarElem run(const RibbonTree& t, BarElem cur, bool root_h) const {
    eval(t, 0, cur, true);
    if (root_h) cur = insert_at(cur, h_, {1, {}}, 0, a_.module, a_.cutoff);
    return cur;
  }

 private:
  void eval(const RibbonTree& t, int pos, BarElem& cur, bool is_root) const {
    int slot = pos;
    for (const auto& c : t.children) {
      if (c) eval(*c, slot, cur, false);
      ++slot;
    }
    cur = insert_at(cur, a_.ops, {t.k, t.beta}, pos, a_.module, a_.cutoff);
    if (!is_root) cur = insert_at(cur, h_, {1, {}}, pos, a_.module, a_.cutoff);
  }

  const AInftyStructure& a_;
  Family h_;
};

bool labels_present(const RibbonTree& t, const Family& ops) {
  if (!ops.table().count({t.k, t.beta})) return false;
  for (const auto& c : t.children)
    if (c && !labels_present(*c, ops)) return false;
  return true;
}

}  // namespace

std::vector<TreePtr> enumerate_trees(int k, const Beta& beta, const GappedMonoid& g, const Rational& cutoff) {
  Enumerator e(g, cutoff);
  return e.trees(k, beta);
}

std::map<Beta, Vec> evaluate_tree(const RibbonTree& t, const AInftyStructure& a, const Retraction& r,
                                  std::span<const int> x, TreeRoot root) {
  Family i = linear_family(r.incl, 0);
  BarElem start = apply_morphism(i, a.module, single_word({x.begin(), x.end()}), a.cutoff);
  BarElem out = TreeEval(a, r).run(t, start, root == TreeRoot::Homotopy);
  out = project_length(out, 1);
  if (root == TreeRoot::Homotopy) return left_components(a.module, out);
  Family p = linear_family(r.pi, 0);
  return left_components(r.pi.target(), apply_morphism(p, r.pi.target(), out, a.cutoff));
}

std::map<Beta, Vec> tree_transfer(const AInftyStructure& a, const Retraction& r, std::span<const int> x, int k,
                                  const Beta& beta, TreeRoot root) {
  std::map<Beta, Vec> acc;
  if (static_cast<int>(x.size()) != k) return acc;
  for (const auto& t : enumerate_trees(k, beta, a.monoid, a.cutoff)) {
    if (!labels_present(*t, a.ops)) continue;
    for (const auto& [b, v] : evaluate_tree(*t, a, r, x, root)) {
      axpy(acc[b], Poly(1), v);
      if (acc[b].empty()) acc.erase(b);
    }
  }
  return acc;
}

std::map<Beta, Vec> tree_transfer_all(const AInftyStructure& a, const Retraction& r, std::span<const int> x,
                                      TreeRoot root) {
  std::map<Beta, Vec> acc;
  int k = static_cast<int>(x.size());
  for (const auto& b : enumerate_monoid(a.monoid, a.cutoff))
    for (const auto& [bb, v] : tree_transfer(a, r, x, k, b, root)) {
      axpy(acc[bb], Poly(1), v);
      if (acc[bb].empty()) acc.erase(bb);
    }
  if (root == TreeRoot::Homotopy && k == 1) axpy(acc[Beta{}], Poly(1), r.incl.column(x[0]));
  for (auto it = acc.begin(); it != acc.end();) it = it->second.empty() ? acc.erase(it) : std::next(it);
  return acc;
}

}  // namespace ainf
