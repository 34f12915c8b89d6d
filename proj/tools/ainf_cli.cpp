#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ainf/equivariant.hpp"
#include "ainf/error.hpp"
#include "ainf/fixtures.hpp"
#include "ainf/hpl.hpp"
#include "ainf/io.hpp"
#include "ainf/trees.hpp"

using namespace ainf;
using nlohmann::json;

namespace {

struct Options {
  int kmax = 4;
  std::string cutoff;
  std::optional<int> length_cap;
  std::string out;
  std::string format = "text";
  std::vector<std::string> files;
};

// Collects sections and violations, prints them once at the end.
class Output {
 public:
  Output(std::string command, const Options& o) : command_(std::move(command)), o_(o) {}

  void section(const std::string& name, const std::vector<std::string>& lines) { sections_.push_back({name, lines}); }
  void report(const std::string& what, const Report& r, const GradedModule& mod) {
    for (const auto& v : r.violations) {
      std::string in;
      for (size_t i = 0; i < v.inputs.size(); ++i) {
        int x = v.inputs[i];
        in += (i ? "," : "") + (x >= 0 && x < mod.dim() ? mod.name(x) : std::to_string(x));
      }
      violations_.push_back({{"stage", what},       {"check", v.check},   {"k", v.k},
                             {"beta", to_string(v.beta)}, {"inputs", in}, {"detail", v.detail}});
    }
  }
  void fail(const std::string& why) { extra_failures_.push_back(why); }
  bool ok() const { return violations_.empty() && extra_failures_.empty(); }

  std::string summary(const Rational& cutoff) const {
    return std::string(ok() ? "PASS" : "FAIL") + " k_max=" + std::to_string(o_.kmax) + " cutoff=" + cutoff.get_str();
  }

  void print(const Rational& cutoff) const {
    if (o_.format == "structured") {
      json j;
      j["command"] = command_;
      j["inputs"] = o_.files;
      j["pass"] = ok();
      j["violations"] = violations_;
      j["failures"] = extra_failures_;
      json secs = json::object();
      for (const auto& [n, lines] : sections_) secs[n] = lines;
      j["sections"] = secs;
      j["summary"] = summary(cutoff);
      std::cout << j.dump(2) << "\n";
      return;
    }
    std::cout << "command: " << command_ << "\n";
    for (const auto& f : o_.files) std::cout << "input: " << f << "\n";
    for (const auto& [n, lines] : sections_) {
      std::cout << "[" << n << "]\n";
      for (const auto& l : lines) std::cout << "  " << l << "\n";
    }
    for (const auto& v : violations_)
      std::cout << "violation " << v["stage"].get<std::string>() << " " << v["check"].get<std::string>()
                << " k=" << v["k"].get<int>() << " beta=" << v["beta"].get<std::string>() << " inputs=("
                << v["inputs"].get<std::string>() << ") " << v["detail"].get<std::string>() << "\n";
    for (const auto& f : extra_failures_) std::cout << "failure " << f << "\n";
    std::cout << summary(cutoff) << "\n";
  }

 private:
  std::string command_;
  const Options& o_;
  std::vector<std::pair<std::string, std::vector<std::string>>> sections_;
  std::vector<json> violations_;
  std::vector<std::string> extra_failures_;
};

ParsedFile load(const Options& o) {
  if (o.files.size() != 1) throw Error("ParseError", "expected exactly one input file");
  ParsedFile f = load_structure(o.files[0]);
  if (!o.cutoff.empty()) f.structure.cutoff = parse_rational(o.cutoff);
  return f;
}

void write_out(const Options& o, const std::string& text) {
  if (o.out.empty()) return;
  std::ofstream os(o.out);
  if (!os) throw Error("IOError", "cannot write " + o.out);
  os << text;
}

Retraction field_retraction(const AInftyStructure& a) {
  const Pairing* p = a.pairing ? &*a.pairing : nullptr;
  try {
    return retraction_from_splitting(a.differential(), p, a.unit);
  } catch (const Error& e) {
    if (e.name() != "NoOrthogonalComplement") throw;
    return retraction_from_splitting(a.differential(), nullptr, a.unit);
  }
}

void run_checks(Output& out, const AInftyStructure& a, int kmax, const std::string& stage) {
  out.report(stage + ":structure", validate_structure(a, kmax), a.module);
  if (a.unit) out.report(stage + ":unit", validate_unit(a, *a.unit, kmax), a.module);
  if (a.pairing) out.report(stage + ":cyclic", validate_cyclic(a, *a.pairing, kmax), a.module);
}

int cmd_check(const Options& o) {
  ParsedFile f = load(o);
  Output out("check", o);
  run_checks(out, f.structure, o.kmax, "input");
  if (f.tstar) out.report("tstar", check_tstar(*f.tstar), f.tstar->module);
  out.print(f.structure.cutoff);
  return out.ok() ? 0 : 1;
}

int cmd_transfer(const Options& o) {
  ParsedFile f = load(o);
  const auto& a = f.structure;
  Output out("transfer", o);
  Retraction r = field_retraction(a);
  Transfer t(a, r, o.length_cap);
  TransferResult res = t.run(o.kmax);
  std::string text = serialize_structure(*res.can);
  write_out(o, text);
  if (o.out.empty()) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) lines.push_back(l);
    out.section("minimal-model", lines);
  }
  std::vector<std::string> flags = {std::string("side_conditions=") + (r.side_conditions ? "yes" : "no"),
                                    std::string("cyclic=") + (r.cyclic ? "yes" : "no"),
                                    std::string("unital=") + (r.unital ? "yes" : "no")};
  out.section("retraction", flags);
  run_checks(out, *res.can, o.kmax, "minimal-model");
  out.report("incl", check_morphism(res.incl, o.kmax), res.incl.source->module);
  out.report("proj", check_morphism(res.proj, o.kmax), a.module);
  out.report("homotopy", check_homotopy(res.homotopy, o.kmax), a.module);
  out.print(a.cutoff);
  return out.ok() ? 0 : 1;
}

int cmd_oracle(const Options& o) {
  ParsedFile f = load(o);
  const auto& a = f.structure;
  Output out("oracle", o);
  Retraction r = field_retraction(a);
  Transfer t(a, r, o.length_cap);
  const auto& hm = r.h_module();
  std::vector<std::string> lines;
  for (int k = 0; k <= o.kmax; ++k) {
    int diffs = 0;
    for (const auto& x : all_tuples(hm.dim(), k)) {
      auto series = t.can_component(x);
      auto trees = tree_transfer_all(a, r, x);
      std::set<Beta> keys;
      for (const auto& [b, v] : series) keys.insert(b);
      for (const auto& [b, v] : trees) keys.insert(b);
      for (const auto& b : keys) {
        Vec d = series.count(b) ? series[b] : Vec{};
        if (trees.count(b)) axpy(d, Poly(-1), trees[b]);
        if (d.empty()) continue;
        ++diffs;
        std::string in;
        for (size_t i = 0; i < x.size(); ++i) in += (i ? "," : "") + hm.name(x[i]);
        out.fail("k=" + std::to_string(k) + " " + to_string(b) + " (" + in + "): " + vec_str(hm, d));
      }
    }
    lines.push_back("k=" + std::to_string(k) + " diff=" + std::to_string(diffs));
  }
  out.section("max-diff", lines);
  out.print(a.cutoff);
  return out.ok() ? 0 : 1;
}

int cmd_equivariant(const Options& o) {
  ParsedFile f = load(o);
  if (!f.tstar) throw Error("ParseError", o.files[0] + ":0: equivariant needs [iota_a] sections");
  const auto& m = *f.tstar;
  Output out("equivariant", o);
  out.report("tstar", check_tstar(m), m.module);
  EquivariantComplex e = cartan_complex(m);
  AInftyStructure cw;
  if (f.structure.ring().is_field()) {
    Report inv = check_invariance(f.structure, m, o.kmax);
    out.report("invariance", inv, f.structure.module);
    if (!inv.ok()) {
      out.print(f.structure.cutoff);
      return 1;
    }
    cw = equivariant_extend(f.structure, m);
  } else {
    if (!(f.structure.module == e.module)) throw Error("ModuleMismatch", "structure is not on the Cartan complex");
    cw = f.structure;
  }
  out.report("extension", validate_structure(cw, o.kmax), cw.module);
  ClosedLift lift = lift_closed(e.D);
  std::vector<std::string> lifts;
  for (const auto& v : lift.lifts) lifts.push_back(vec_str(e.module, v));
  out.section("lifts", lifts);
  GradedMatrix d0(e.inv.module, e.inv.module, {1, 0}, e.d.m());
  std::optional<Pairing> pq;
  if (cw.pairing) pq = Pairing{cw.pairing->degree, evaluate(cw.pairing->gram, std::vector<Rational>(m.n_alphas, 0))};
  Retraction base;
  try {
    base = retraction_from_splitting(d0, pq ? &*pq : nullptr, cw.unit);
  } catch (const Error& err) {
    if (err.name() != "NoOrthogonalComplement") throw;
    base = retraction_from_splitting(d0, nullptr, cw.unit);
  }
  EquivariantRetraction er = equivariant_retraction(m, base, pq ? &*pq : nullptr, cw.unit);
  Retraction r = er.r;
  out.report("retraction", check_retraction(r, e.D, er.pairing ? &*er.pairing : nullptr, cw.unit), e.module);
  out.section("retraction", {std::string("cyclic=") + (r.cyclic ? "yes" : "no"),
                             std::string("unital=") + (r.unital ? "yes" : "no")});
  Transfer t(cw, r, o.length_cap);
  TransferResult res = t.run(o.kmax);
  std::string text = serialize_structure(*res.can);
  write_out(o, text);
  run_checks(out, *res.can, o.kmax, "minimal-model");
  out.print(cw.cutoff);
  return out.ok() ? 0 : 1;
}

int cmd_fixtures(const Options& o) {
  Output out("fixtures", o);
  std::vector<std::string> names;
  for (const auto& n : fixture_names()) {
    Fixture fx = build_fixture(n);
    std::string text = fx.tstar ? serialize_tstar(fx.structure, *fx.tstar) : serialize_structure(fx.structure);
    if (!o.out.empty()) {
      std::filesystem::create_directories(o.out);
      std::ofstream os(std::filesystem::path(o.out) / (n + ".alg"));
      if (!os) throw Error("IOError", "cannot write into " + o.out);
      os << text;
    }
    names.push_back(n);
  }
  out.section("catalog", names);
  out.print(0);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twisted A-infinity toolkit"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* c, bool with_file) {
    c->add_option("--kmax", o.kmax, "largest arity checked")->check(CLI::NonNegativeNumber);
    c->add_option("--energy-cutoff", o.cutoff, "override the energy cutoff");
    c->add_option("--length-cap", o.length_cap, "maximal series length");
    c->add_option("--out", o.out, "output path");
    c->add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "structured"}));
    if (with_file) c->add_option("file", o.files, "structure file")->required();
  };
  auto* check = app.add_subcommand("check", "run every applicable validator");
  auto* transfer = app.add_subcommand("transfer", "compute the minimal model");
  auto* oracle = app.add_subcommand("oracle", "compare the series with the tree sum");
  auto* equiv = app.add_subcommand("equivariant", "extension, retraction and transfer over Q[alpha]");
  auto* fixtures = app.add_subcommand("fixtures", "emit the fixture catalog");
  add_common(check, true);
  add_common(transfer, true);
  add_common(oracle, true);
  add_common(equiv, true);
  add_common(fixtures, false);
  CLI11_PARSE(app, argc, argv);
  try {
    if (*check) return cmd_check(o);
    if (*transfer) return cmd_transfer(o);
    if (*oracle) return cmd_oracle(o);
    if (*equiv) return cmd_equivariant(o);
    if (*fixtures) return cmd_fixtures(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.name() == "ParseError" ? 2 : 3;
  }
  return 0;
}
