#include <CLI11.hpp>
#include <climits>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "uea/identities.hpp"
#include "uea/io.hpp"
#include "uea/verify.hpp"

using namespace uea;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "uea-report/1";

enum Exit { kPass = 0, kFail = 1, kInput = 2, kInconclusive = 3 };

struct Config {
  int window = 6;
  int arity = 4;
  std::vector<std::string> checks;
  bool strict_window = false;
  std::string format = "text";
  unsigned seed = 0;
  bool inject_mutation = false;
  std::string method = "baranovsky";
  std::string method_b = "moreno";
  std::string output;
};

const std::vector<std::string> kDefaultChecks{"derived-pbw", "quillen", "strictness", "twisted-acyclicity",
                                              "koszul-dual"};
const std::vector<std::string> kAllChecks{"derived-pbw", "quillen",      "strictness",   "twisted-acyclicity",
                                          "koszul-dual", "classical-pbw", "comparison"};

std::string file_label(const std::string& path) { return std::filesystem::path(path).filename().string(); }

Json vec_json(const GradedSpace& sp, const Vec& v) {
  Json out = Json::array();
  for (const auto& [i, c] : v) out.push_back({{"coef", to_string(c)}, {"basis", sp.name(i)}});
  return out;
}

std::string vec_text(const GradedSpace& sp, const Vec& v) {
  std::string s;
  for (const auto& [i, c] : v) s += (s.empty() ? "" : " + ") + to_string(c) + " " + sp.name(i);
  return s.empty() ? "0" : s;
}

std::string word_text(const GradedSpace& sp, const Word& w) {
  std::string s;
  for (int x : w) s += (s.empty() ? "" : " ") + sp.name(x);
  return s;
}

Json report_json(const VerificationReport& r) {
  Json j;
  j["check"] = r.check;
  if (!r.algebra.empty()) j["algebra"] = r.algebra;
  j["window"] = r.window;
  j["arity"] = r.arity;
  j["status"] = status_name(r.status);
  j["witness"] = r.witness;
  Json tables = Json::object();
  for (const auto& [name, t] : r.tables) tables[name] = t;
  j["tables"] = tables;
  Json notes = Json::object();
  for (const auto& [k, v] : r.notes) notes[k] = v;
  j["notes"] = notes;
  Json parts = Json::array();
  for (const auto& p : r.parts) parts.push_back(report_json(p));
  j["parts"] = parts;
  return j;
}

void report_text(std::ostream& os, const VerificationReport& r, int indent) {
  const std::string pad(indent, ' ');
  os << pad << r.check << ": " << status_name(r.status);
  if (!r.witness.empty()) os << " (" << r.witness << ")";
  os << "\n";
  for (const auto& [name, t] : r.tables) {
    os << pad << "  " << name << ":";
    for (long v : t) os << " " << v;
    os << "\n";
  }
  for (const auto& [k, v] : r.notes) os << pad << "  " << k << ": " << v << "\n";
  for (const auto& p : r.parts) report_text(os, p, indent + 2);
}

int exit_for(CheckStatus s, const Config& cfg) {
  if (s == CheckStatus::Fail) return kFail;
  if (s == CheckStatus::Inconclusive && cfg.strict_window) return kInconclusive;
  return kPass;
}

CheckStatus worst(CheckStatus a, CheckStatus b) {
  if (a == CheckStatus::Fail || b == CheckStatus::Fail) return CheckStatus::Fail;
  if (a == CheckStatus::Inconclusive || b == CheckStatus::Inconclusive) return CheckStatus::Inconclusive;
  return CheckStatus::Pass;
}

Json header(const char* command, const Config& cfg) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["window"] = cfg.window;
  j["arity"] = cfg.arity;
  return j;
}

void emit(const Json& j, const std::string& text, const Config& cfg) {
  if (cfg.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

std::shared_ptr<AInfinityAlgebra> stored(const AInfinityStructure& a) {
  if (auto s = dynamic_cast<const AInfinityAlgebra*>(&a)) return std::make_shared<AInfinityAlgebra>(*s);
  // strict dg algebra: products beyond arity 2 vanish
  AInfinityAlgebra copy = store_products(a, 2, a.top_degree());
  return std::make_shared<AInfinityAlgebra>(a.space(), copy.products(), INT_MAX, a.top_degree());
}

// Adds 1 to one structure constant of arity >= 2, chosen by the seed.
std::string mutate(AInfinityAlgebra& a, unsigned seed) {
  std::vector<std::pair<Word, int>> entries;
  for (const auto& [w, v] : a.products())
    if (w.size() >= 2)
      for (const auto& term : v) entries.emplace_back(w, term.first);
  if (entries.empty()) return "";
  std::mt19937 rng(seed);
  const auto& [w, z] = entries[std::uniform_int_distribution<std::size_t>(0, entries.size() - 1)(rng)];
  auto& v = a.mutable_products()[w];
  add_term(v, z, Scalar(1));
  return "m_" + std::to_string(w.size()) + "(" + word_text(*a.space(), w) + ") coefficient of " + a.space()->name(z);
}

TransferredStructure build_envelope(const LInfinityAlgebra& g, const std::string& method, const Config& cfg) {
  if (method == "baranovsky") return baranovsky_envelope(g, cfg.arity, cfg.window);
  if (method == "moreno") return moreno_fernandez_envelope(g, cfg.arity, cfg.window);
  throw PreconditionError("unknown method '" + method + "'");
}

int cmd_check(const std::string& path, const Config& cfg) {
  AlgebraFile f = load_algebra(path);
  VerificationReport r;
  r.algebra = file_label(path);
  r.window = cfg.window;
  r.arity = cfg.arity;
  IdentityReport ir;
  try {
    if (f.kind == AlgebraKind::AInfinity) {
      r.check = "a-infinity-identities";
      ir = check_a_infinity(*f.assoc, std::min(cfg.arity, f.assoc->max_arity()), cfg.window);
    } else {
      r.check = "l-infinity-identities";
      ir = check_l_infinity(f.lie, cfg.arity, cfg.window);
    }
    if (!ir.ok) {
      r.fail(ir.witness + " (degree " + std::to_string(ir.degree) + ")");
    } else if (ir.inconclusive) {
      r.inconclusive(ir.note.empty() ? ir.witness : ir.note);
    }
  } catch (const WindowError& e) {
    r.inconclusive(e.what());
  }
  r.notes.emplace_back("kind", kind_name(f.kind));
  Json j = header("check", cfg);
  j["file"] = file_label(path);
  j["status"] = status_name(r.status);
  j["reports"] = Json::array({report_json(r)});
  std::ostringstream os;
  os << file_label(path) << "\n";
  report_text(os, r, 2);
  emit(j, os.str(), cfg);
  return exit_for(r.status, cfg);
}

int cmd_envelope(const std::string& path, const Config& cfg) {
  AlgebraFile f = load_algebra(path);
  if (f.kind == AlgebraKind::AInfinity) throw PreconditionError("envelope needs an l-infinity or dg-lie file");
  Json j = header("envelope", cfg);
  j["file"] = file_label(path);
  j["method"] = cfg.method;
  std::ostringstream os;
  os << file_label(path) << " (" << cfg.method << ")\n";
  if (cfg.method == "cobar-homology") {
    auto r = derived_pbw_check(f.lie, cfg.window);
    for (const auto& [name, t] : r.tables)
      if (name == "homology of cobar") {
        j["dimensions"] = t;
        os << "  dimensions:";
        for (long v : t) os << " " << v;
        os << "\n";
      }
    emit(j, os.str(), cfg);
    return kPass;
  }
  TransferredStructure ts = build_envelope(f.lie, cfg.method, cfg);
  const auto& sp = *ts.algebra->space();
  std::vector<long> dims(cfg.window + 1, 0);
  dims[0] = 1;
  for (int n = 1; n <= cfg.window; ++n) dims[n] = sp.dim(n);
  j["dimensions"] = dims;
  j["extraction_sound"] = ts.extraction_sound;
  j["provenance"] = ts.provenance;
  Json products = Json::array();
  os << "  dimensions:";
  for (long v : dims) os << " " << v;
  os << "\n  extraction sound: " << (ts.extraction_sound ? "yes" : "no") << "\n";
  for (const auto& [w, v] : ts.algebra->products()) {
    if (v.empty()) continue;
    Json inputs = Json::array();
    for (int x : w) inputs.push_back(sp.name(x));
    products.push_back({{"arity", w.size()}, {"inputs", inputs}, {"output", vec_json(sp, v)}});
    os << "  m_" << w.size() << "(" << word_text(sp, w) << ") = " << vec_text(sp, v) << "\n";
  }
  j["products"] = products;
  if (!cfg.output.empty()) {
    std::ofstream out(cfg.output);
    if (!out) throw ParseError("cannot write " + cfg.output);
    out << serialize_assoc(*ts.algebra);
  }
  emit(j, os.str(), cfg);
  return ts.extraction_sound ? kPass : kFail;
}

VerificationReport run_check(const std::string& check, const LInfinityAlgebra& g, AlgebraKind kind,
                             const std::shared_ptr<const AInfinityStructure>& env, const Config& cfg) {
  if (check == "derived-pbw") return derived_pbw_check(g, cfg.window);
  if (check == "quillen") return quillen_check(g, env, cfg.window);
  if (check == "strictness") return strictness_check(*env, g, cfg.arity);
  if (check == "twisted-acyclicity") return twisted_acyclicity_check(g, env, cfg.window);
  if (check == "koszul-dual") return koszul_dual_check(g, env, cfg.window);
  if (check == "classical-pbw") {
    if (kind != AlgebraKind::DgLie) throw PreconditionError("classical-pbw needs a dg-lie file");
    return classical_pbw_check(g, cfg.window);
  }
  if (check == "comparison") {
    VerificationReport r;
    r.check = "comparison";
    r.window = cfg.window;
    r.arity = cfg.arity;
    auto a = baranovsky_envelope(g, cfg.arity, cfg.window).algebra;
    auto b = moreno_fernandez_envelope(g, cfg.arity, cfg.window).algebra;
    auto res = a_infinity_iso_search(*a, *b, cfg.arity, cfg.window);
    if (!res.found) r.fail(res.witness);
    r.notes.emplace_back("components", std::to_string(res.components.size()));
    return r;
  }
  throw PreconditionError("unknown check '" + check + "'");
}

Json verify_one(const std::string& path, const Config& cfg, std::ostream& os, CheckStatus& overall) {
  AlgebraFile f = load_algebra(path);
  if (f.kind == AlgebraKind::AInfinity) throw PreconditionError(path + ": verify needs an l-infinity or dg-lie file");
  IdentityReport ir = check_l_infinity(f.lie, cfg.arity, cfg.window);
  if (!ir.ok) throw PreconditionError(path + ": structure identities fail on " + ir.witness);
  auto env = default_envelope(f.lie, cfg.arity, cfg.window);
  Json j;
  j["file"] = file_label(path);
  j["kind"] = kind_name(f.kind);
  if (cfg.inject_mutation) {
    auto m = stored(*env);
    j["mutation"] = mutate(*m, cfg.seed);
    env = m;
  }
  os << file_label(path) << "\n";
  if (j.contains("mutation")) os << "  mutation: " << j["mutation"].get<std::string>() << "\n";
  Json reports = Json::array();
  CheckStatus status = CheckStatus::Pass;
  for (const auto& check : cfg.checks) {
    VerificationReport r = run_check(check, f.lie, f.kind, env, cfg);
    r.algebra = file_label(path);
    status = worst(status, r.status);
    reports.push_back(report_json(r));
    report_text(os, r, 2);
  }
  j["status"] = status_name(status);
  j["reports"] = reports;
  overall = worst(overall, status);
  return j;
}

int cmd_verify(const std::vector<std::string>& paths, const Config& cfg) {
  Json j = header("verify", cfg);
  j["checks"] = cfg.checks;
  if (cfg.inject_mutation) j["seed"] = cfg.seed;
  Json results = Json::array();
  std::ostringstream os;
  CheckStatus overall = CheckStatus::Pass;
  for (const auto& p : paths) results.push_back(verify_one(p, cfg, os, overall));
  j["status"] = status_name(overall);
  j["results"] = results;
  os << "overall: " << status_name(overall) << "\n";
  emit(j, os.str(), cfg);
  return exit_for(overall, cfg);
}

std::shared_ptr<AInfinityAlgebra> envelope_input(const std::string& path, const std::string& method,
                                                 const Config& cfg) {
  AlgebraFile f = load_algebra(path);
  if (f.kind == AlgebraKind::AInfinity) return f.assoc;
  return build_envelope(f.lie, method, cfg).algebra;
}

int cmd_compare(const std::string& a_path, const std::string& b_path, const Config& cfg) {
  auto a = envelope_input(a_path, cfg.method, cfg);
  auto b = envelope_input(b_path, cfg.method_b, cfg);
  IsoSearchResult res = a_infinity_iso_search(*a, *b, cfg.arity, cfg.window);
  Json j = header("compare", cfg);
  j["a"] = file_label(a_path);
  j["b"] = file_label(b_path);
  j["status"] = res.found ? "pass" : "fail";
  std::ostringstream os;
  os << "compare " << file_label(a_path) << " " << file_label(b_path) << ": " << (res.found ? "pass" : "fail") << "\n";
  if (res.found) {
    Json comps = Json::array();
    const auto& asp = *a->space();
    for (const auto& [w, v] : res.components) {
      Json inputs = Json::array();
      for (int x : w) inputs.push_back(asp.name(x));
      comps.push_back({{"arity", w.size()}, {"inputs", inputs}, {"output", vec_json(*b->space(), v)}});
      os << "  f_" << w.size() << "(" << word_text(asp, w) << ") = " << vec_text(*b->space(), v) << "\n";
    }
    j["components"] = comps;
  } else {
    j["failed_arity"] = res.failed_arity;
    j["failed_degree"] = res.failed_degree;
    j["witness"] = res.witness;
    os << "  " << res.witness << " (degree " << res.failed_degree << ")\n";
  }
  emit(j, os.str(), cfg);
  return res.found ? kPass : kFail;
}

int cmd_qis(const std::string& path, const Config& cfg) {
  StrictMorphism f = load_morphism(path);
  VerificationReport r = envelope_preserves_qis(f, cfg.window);
  r.algebra = file_label(path);
  Json j = header("qis", cfg);
  j["file"] = file_label(path);
  j["status"] = status_name(r.status);
  j["reports"] = Json::array({report_json(r)});
  std::ostringstream os;
  os << file_label(path) << "\n";
  report_text(os, r, 2);
  emit(j, os.str(), cfg);
  return exit_for(r.status, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Universal enveloping A-infinity algebras of L-infinity algebras"};
  app.require_subcommand(1);
  Config cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--window", cfg.window, "maximal homological degree")->check(CLI::Range(1, 64));
    sub->add_option("--arity", cfg.arity, "arity bound")->check(CLI::Range(2, 16));
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--strict-window", cfg.strict_window, "exit 3 when a check is inconclusive");
    sub->add_option("--seed", cfg.seed, "seed for sampled choices");
  };
  std::string file, file_b;
  std::vector<std::string> files;

  auto* check = app.add_subcommand("check", "check the structure identities of an algebra file");
  check->add_option("file", file)->required();
  common(check);

  auto* envelope = app.add_subcommand("envelope", "construct an envelope and print its structure");
  envelope->add_option("file", file)->required();
  envelope->add_option("--method", cfg.method)->check(CLI::IsMember({"baranovsky", "moreno", "cobar-homology"}));
  envelope->add_option("--output", cfg.output, "write the envelope as an a-infinity file");
  common(envelope);

  auto* verify = app.add_subcommand("verify", "run the verification checks");
  verify->add_option("files", files)->required();
  verify->add_option("--checks", cfg.checks, "checks to run")->delimiter(',')->check(CLI::IsMember(kAllChecks));
  verify->add_flag("--inject-mutation", cfg.inject_mutation, "perturb one envelope structure constant (test hook)");
  common(verify);

  auto* compare = app.add_subcommand("compare", "search for an A-infinity isomorphism with identity linear part");
  compare->add_option("a", file)->required();
  compare->add_option("b", file_b)->required();
  compare->add_option("--method", cfg.method, "envelope method for a Lie input a")
      ->check(CLI::IsMember({"baranovsky", "moreno"}));
  compare->add_option("--method-b", cfg.method_b, "envelope method for a Lie input b")
      ->check(CLI::IsMember({"baranovsky", "moreno"}));
  common(compare);

  auto* qis = app.add_subcommand("qis", "check that the classical envelope preserves a quasi-isomorphism");
  qis->add_option("file", file)->required();
  common(qis);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }
  if (cfg.checks.empty()) cfg.checks = kDefaultChecks;
  try {
    if (*check) return cmd_check(file, cfg);
    if (*envelope) return cmd_envelope(file, cfg);
    if (*verify) return cmd_verify(files, cfg);
    if (*compare) return cmd_compare(file, file_b, cfg);
    if (*qis) return cmd_qis(file, cfg);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kInput;
  } catch (const WindowError& e) {
    std::cerr << "inconclusive-window: " << e.what() << "\n";
    return cfg.strict_window ? kInconclusive : kPass;
  }
  return kInput;
}
