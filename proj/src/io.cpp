#include "ainf/io.hpp"

#include <fstream>
#include <sstream>

#include "ainf/error.hpp"

namespace ainf {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

struct Line {
  int number;
  std::string text;
};

struct Sections {
  std::string origin;
  std::map<std::string, std::vector<Line>> body;
  std::map<std::string, int> header_line;

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw Error("ParseError", origin + ":" + std::to_string(line) + ": " + msg);
  }
  const std::vector<Line>* get(const std::string& name) const {
    auto it = body.find(name);
    return it == body.end() ? nullptr : &it->second;
  }
};

Sections read_sections(const std::string& text, const std::string& origin) {
  Sections s;
  s.origin = origin;
  std::istringstream is(text);
  std::string raw, current;
  int n = 0;
  while (std::getline(is, raw)) {
    ++n;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') s.fail(n, "unterminated section header");
      current = trim(line.substr(1, line.size() - 2));
      if (s.body.count(current)) s.fail(n, "duplicate section [" + current + "]");
      s.body[current];
      s.header_line[current] = n;
      continue;
    }
    if (current.empty()) s.fail(n, "content before the first section");
    s.body[current].push_back({n, line});
  }
  return s;
}

// runs fn and turns module errors into located parse errors
template <class F>
auto located(const Sections& s, int line, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.name() == "ParseError" && std::string(e.what()).rfind("ParseError: " + s.origin + ":", 0) == 0) throw;
    s.fail(line, e.what());
  } catch (const std::exception& e) {
    s.fail(line, e.what());
  }
}

int parse_int(const std::string& s) {
  size_t used = 0;
  int v = std::stoi(s, &used);
  if (used != s.size()) throw Error("ParseError", "not an integer: '" + s + "'");
  return v;
}

std::string fmt_beta(const Beta& b) { return b.E.get_str() + "," + std::to_string(b.mu); }

std::string fmt_tuple(const GradedModule& mod, const std::vector<int>& in) {
  std::string s;
  for (size_t i = 0; i < in.size(); ++i) s += (i ? "," : "") + mod.name(in[i]);
  return s;
}

void emit_family(std::ostream& os, const Family& f, const GradedModule& source, const GradedModule& target) {
  for_each_component(f, [&](const Label& l, const std::vector<int>& in, const Vec& v) {
    if (v.empty()) return;
    os << l.k << " ; " << fmt_beta(l.beta) << " ; " << fmt_tuple(source, in) << " -> " << vec_str(target, v) << "\n";
  });
}

void emit_matrix(std::ostream& os, const std::string& section, const GradedMatrix& m) {
  os << "[" << section << "]\n";
  for (int c = 0; c < m.source().dim(); ++c) {
    Vec col = m.column(c);
    if (!col.empty()) os << m.source().name(c) << " -> " << vec_str(m.target(), col) << "\n";
  }
}

Family parse_family(const Sections& s, const std::vector<Line>& lines, const GradedModule& source,
                    const GradedModule& target, int degree) {
  Family f(source.dim(), degree);
  for (const auto& ln : lines)
    located(s, ln.number, [&] {
      auto arrow = ln.text.find("->");
      if (arrow == std::string::npos) throw Error("ParseError", "expected '->'");
      auto head = split(ln.text.substr(0, arrow), ';');
      if (head.size() != 3) throw Error("ParseError", "expected 'k ; E,mu ; inputs'");
      int k = parse_int(head[0]);
      if (k < 0) throw Error("ParseError", "negative arity");
      Beta b = parse_beta(head[1]);
      std::vector<int> in;
      if (!head[2].empty())
        for (const auto& nm : split(head[2], ',')) in.push_back(source.index(nm));
      if (static_cast<int>(in.size()) != k)
        throw Error("ParseError", "arity " + std::to_string(k) + " but " + std::to_string(in.size()) + " inputs");
      Label l{k, b};
      if (f.get(l, in)) throw Error("ParseError", "component given twice");
      f.set(l, in, parse_vec(target, ln.text.substr(arrow + 2)));
      return 0;
    });
  return f;
}

GradedMatrix parse_matrix(const Sections& s, const std::vector<Line>& lines, const GradedModule& mod, Bidegree deg,
                          int header) {
  Mat<Poly> m(mod.dim(), mod.dim());
  m.setConstant(Poly());
  for (const auto& ln : lines)
    located(s, ln.number, [&] {
      auto arrow = ln.text.find("->");
      if (arrow == std::string::npos) throw Error("ParseError", "expected 'name -> terms'");
      int c = mod.index(trim(ln.text.substr(0, arrow)));
      for (const auto& [r, v] : parse_vec(mod, ln.text.substr(arrow + 2))) m(r, c) += v;
      return 0;
    });
  return located(s, header, [&] { return GradedMatrix(mod, mod, deg, m); });
}

GradedModule parse_basis(const Sections& s, const std::string& section, Ring ring) {
  const auto* lines = s.get(section);
  if (!lines) s.fail(0, "missing [" + section + "] section");
  std::vector<std::string> names;
  std::vector<Bidegree> degs;
  for (const auto& ln : *lines)
    located(s, ln.number, [&] {
      std::istringstream is(ln.text);
      std::string name, extra;
      int c = 0, l = 0;
      if (!(is >> name >> c >> l) || (is >> extra)) throw Error("ParseError", "expected 'name codim ls'");
      for (char ch : std::string("+-*(),;[]#"))
        if (name.find(ch) != std::string::npos) throw Error("ParseError", "basis name '" + name + "' is not allowed");
      if (std::find(names.begin(), names.end(), name) != names.end())
        throw Error("ParseError", "duplicate basis element '" + name + "'");
      names.push_back(name);
      degs.push_back({c, ((l % 2) + 2) % 2});
      return 0;
    });
  return GradedModule(ring, names, degs);
}

}  // namespace

Vec parse_vec(const GradedModule& mod, const std::string& s) {
  Vec out;
  std::vector<std::pair<int, std::string>> terms;
  int sign = 1, depth = 0;
  std::string cur;
  auto flush = [&] {
    std::string t = trim(cur);
    if (!t.empty()) terms.push_back({sign, t});
    cur.clear();
    sign = 1;
  };
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '+' || c == '-')) {
      if (trim(cur).empty()) {
        if (c == '-') sign = -sign;
        continue;
      }
      flush();
      if (c == '-') sign = -1;
      continue;
    }
    cur.push_back(c);
  }
  if (depth != 0) throw Error("ParseError", "unbalanced parentheses in '" + trim(s) + "'");
  flush();
  if (terms.empty()) throw Error("ParseError", "empty right-hand side");
  for (const auto& [sg, t] : terms) {
    if (t == "0") continue;
    int d = 0;
    size_t star = std::string::npos;
    for (size_t i = 0; i < t.size(); ++i) {
      if (t[i] == '(') ++d;
      if (t[i] == ')') --d;
      if (d == 0 && t[i] == '*') star = i;
    }
    Poly c(1);
    std::string name = t;
    if (star != std::string::npos) {
      c = Poly::parse(t.substr(0, star));
      name = trim(t.substr(star + 1));
    }
    c *= sg;
    add_to(out, mod.index(name), c);
  }
  return out;
}

ParsedFile parse_structure(const std::string& text, const std::string& origin) {
  Sections s = read_sections(text, origin);
  ParsedFile out;
  Ring ring;
  if (const auto* lines = s.get("ring"))
    for (const auto& ln : *lines)
      located(s, ln.number, [&] {
        std::istringstream is(ln.text);
        std::string key, extra;
        int n = 0;
        if (!(is >> key >> n) || key != "alphas" || n < 0 || (is >> extra))
          throw Error("ParseError", "expected 'alphas <n>'");
        ring.num_alphas = n;
        return 0;
      });
  AInftyStructure& a = out.structure;
  a.module = parse_basis(s, "basis", ring);
  const auto& mod = a.module;
  if (const auto* lines = s.get("monoid"))
    for (const auto& ln : *lines)
      located(s, ln.number, [&] {
        if (ln.text.rfind("cutoff", 0) == 0) {
          a.cutoff = parse_rational(trim(ln.text.substr(6)));
        } else {
          a.monoid.generators.push_back(parse_beta(ln.text));
        }
        return 0;
      });
  if (s.get("monoid")) located(s, s.header_line.at("monoid"), [&] {
      a.monoid.validate();
      return 0;
    });
  a.ops = s.get("ops") ? parse_family(s, *s.get("ops"), mod, mod, 1) : Family(mod.dim(), 1);
  if (const auto* lines = s.get("unit")) {
    if (lines->size() != 1) s.fail(s.header_line.at("unit"), "[unit] needs exactly one basis name");
    a.unit = located(s, (*lines)[0].number, [&] { return mod.index((*lines)[0].text); });
  }
  if (const auto* lines = s.get("pairing")) {
    Pairing p;
    p.gram = Mat<Poly>(mod.dim(), mod.dim());
    p.gram.setConstant(Poly());
    bool have_degree = false;
    for (const auto& ln : *lines)
      located(s, ln.number, [&] {
        if (ln.text.rfind("degree", 0) == 0) {
          std::istringstream is(ln.text.substr(6));
          std::string extra;
          if (!(is >> p.degree.codim >> p.degree.ls) || (is >> extra))
            throw Error("ParseError", "expected 'degree <p> <q>'");
          p.degree.ls = ((p.degree.ls % 2) + 2) % 2;
          have_degree = true;
          return 0;
        }
        auto arrow = ln.text.find("->");
        if (arrow == std::string::npos) throw Error("ParseError", "expected 'u , v -> value'");
        auto uv = split(ln.text.substr(0, arrow), ',');
        if (uv.size() != 2) throw Error("ParseError", "expected two basis names");
        p.gram(mod.index(uv[0]), mod.index(uv[1])) = Poly::parse(ln.text.substr(arrow + 2));
        return 0;
      });
    if (!have_degree) s.fail(s.header_line.at("pairing"), "[pairing] needs a 'degree' line");
    a.pairing = p;
  }
  if (s.get("target_basis")) {
    out.target = parse_basis(s, "target_basis", ring);
    const auto* lines = s.get("components");
    out.components = lines ? parse_family(s, *lines, mod, *out.target, 0) : Family(mod.dim(), 0);
  } else if (s.get("components")) {
    s.fail(s.header_line.at("components"), "[components] needs [target_basis]");
  }
  int n_iota = 0;
  while (s.get("iota_" + std::to_string(n_iota + 1))) ++n_iota;
  if (n_iota > 0 || s.get("differential")) {
    // the T*-module always has rational coefficients, even next to a structure over Q[alpha]
    TStarModule m;
    m.module = mod.with_ring(Ring{});
    m.n_alphas = n_iota;
    if (const auto* lines = s.get("differential")) {
      m.d = parse_matrix(s, *lines, m.module, {1, 0}, s.header_line.at("differential"));
    } else {
      if (!ring.is_field()) s.fail(s.header_line.at("iota_1"), "[differential] is required over Q[alpha]");
      m.d = located(s, 0, [&] { return a.differential(); });
    }
    for (int i = 1; i <= n_iota; ++i) {
      std::string is = "iota_" + std::to_string(i), ls = "lie_" + std::to_string(i);
      m.iota.push_back(parse_matrix(s, *s.get(is), m.module, {-1, 0}, s.header_line.at(is)));
      if (const auto* lines = s.get(ls)) {
        m.lie.push_back(parse_matrix(s, *lines, m.module, {0, 0}, s.header_line.at(ls)));
      } else {
        m.lie.push_back(compose(m.d, m.iota.back()) + compose(m.iota.back(), m.d));
      }
    }
    out.tstar = m;
  }
  for (const auto& [name, lines] : s.body) {
    static const std::vector<std::string> known = {"ring", "basis", "monoid", "ops", "unit", "pairing",
                                                   "target_basis", "components", "differential"};
    bool ok = std::find(known.begin(), known.end(), name) != known.end();
    for (int i = 1; i <= n_iota; ++i)
      if (name == "iota_" + std::to_string(i) || name == "lie_" + std::to_string(i)) ok = true;
    if (!ok) s.fail(s.header_line.at(name), "unknown section [" + name + "]");
  }
  return out;
}

ParsedFile load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("ParseError", path + ":0: cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_structure(ss.str(), path);
}

static void emit_structure(std::ostream& os, const AInftyStructure& a) {
  const auto& mod = a.module;
  os << "[ring]\nalphas " << mod.ring().num_alphas << "\n";
  os << "[basis]\n";
  for (int i = 0; i < mod.dim(); ++i) os << mod.name(i) << " " << mod.degree(i).codim << " " << mod.degree(i).ls << "\n";
  os << "[monoid]\n";
  for (const auto& g : a.monoid.generators) os << fmt_beta(g) << "\n";
  os << "cutoff " << a.cutoff.get_str() << "\n";
  os << "[ops]\n";
  emit_family(os, a.ops, mod, mod);
  if (a.unit) os << "[unit]\n" << mod.name(*a.unit) << "\n";
  if (a.pairing) {
    os << "[pairing]\ndegree " << a.pairing->degree.codim << " " << a.pairing->degree.ls << "\n";
    for (int u = 0; u < mod.dim(); ++u)
      for (int v = 0; v < mod.dim(); ++v)
        if (!a.pairing->gram(u, v).is_zero())
          os << mod.name(u) << " , " << mod.name(v) << " -> " << a.pairing->gram(u, v).str() << "\n";
  }
}

std::string serialize_structure(const AInftyStructure& a) {
  std::ostringstream os;
  emit_structure(os, a);
  return os.str();
}

std::string serialize_tstar(const AInftyStructure& a, const TStarModule& m) {
  std::ostringstream os;
  emit_structure(os, a);
  emit_matrix(os, "differential", m.d);
  for (int i = 0; i < m.n_alphas; ++i) {
    emit_matrix(os, "iota_" + std::to_string(i + 1), m.iota[i]);
    emit_matrix(os, "lie_" + std::to_string(i + 1), m.lie[i]);
  }
  return os.str();
}

std::string serialize_morphism(const AInftyMorphism& f) {
  std::ostringstream os;
  emit_structure(os, *f.source);
  const auto& t = f.target->module;
  os << "[target_basis]\n";
  for (int i = 0; i < t.dim(); ++i) os << t.name(i) << " " << t.degree(i).codim << " " << t.degree(i).ls << "\n";
  os << "[components]\n";
  emit_family(os, f.comps, f.source->module, t);
  return os.str();
}

}  // namespace ainf
