// chowcalc: exact correspondence calculus over Z/m from instance files.
//
// Subcommands: check-algebra, dual-basis, compose, idempotent-power,
// descend, verify, property-suite. Reports go to stdout (or --out) in a
// deterministic text or JSON form; timing goes to stderr only, so report
// bytes depend on nothing but (file, seed, command).
//
// Exit codes: 0 all checks passed, 1 check failures, 2 usage/parse errors.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chow/descent.hpp"
#include "chow/instance_io.hpp"
#include "chow/property_suite.hpp"

using namespace chow;

namespace {

struct OutputOptions {
  std::string format = "text";
  std::string out_path;
};

int emit(const Json& structured, const std::string& text,
         const OutputOptions& opts, int exit_code) {
  std::string payload =
      opts.format == "structured" ? structured.dump(2) + "\n" : text;
  if (!opts.out_path.empty()) {
    std::ofstream out(opts.out_path);
    if (!out) {
      std::cerr << "cannot write report to '" << opts.out_path << "'\n";
      return 2;
    }
    out << payload;
  } else {
    std::cout << payload;
  }
  return exit_code;
}

std::string cycle_text(const CycleClass& c) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [idx, v] : c.support()) {
    if (!first) os << ", ";
    first = false;
    os << "(";
    for (std::size_t t = 0; t < idx.size(); ++t) os << (t ? "," : "") << idx[t];
    os << ")=" << v.value();
  }
  os << "}";
  return os.str();
}

std::string matrix_text(const Matrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j)
      os << (j ? " " : "") << m.at(i, j).value();
    os << "]\n";
  }
  return os.str();
}

Correspondence correspondence_from(const Instance& inst, const std::string& name) {
  const CycleClass& c = inst.cycle(name);
  if (c.space().arity() < 2)
    throw ParseError("cycle '" + name + "' has no source/target split");
  std::vector<AlgebraPtr> targets(c.space().factors().begin() + 1,
                                  c.space().factors().end());
  return Correspondence(c.space().factor(0), targets, c);
}

int cmd_check_algebra(const std::string& path, const std::string& only,
                      const OutputOptions& opts) {
  Instance inst = load_instance(path);
  Json report;
  report["command"] = "check-algebra";
  report["instance"] = path;
  std::ostringstream text;
  bool all_valid = true;
  for (const auto& [name, alg] : inst.algebras) {
    if (!only.empty() && name != only) continue;
    auto violations = alg->validate();
    Json ja;
    ja["valid"] = violations.empty();
    Json jv = Json::array();
    for (const auto& v : violations) {
      Json one{{"axiom", v.axiom}, {"witness", v.witness}, {"detail", v.detail}};
      jv.push_back(one);
    }
    ja["violations"] = jv;
    text << "algebra " << name << ": ";
    if (violations.empty()) {
      text << "valid\n";
      const Matrix& d = alg->dual_basis();
      ja["dual_basis"] = matrix_to_json(d);
      text << "  dual basis (columns are x_j* in the x_i basis):\n"
           << matrix_text(d);
    } else {
      all_valid = false;
      text << violations.size() << " violation(s)\n";
      for (const auto& v : violations) {
        text << "  " << v.axiom << " at (";
        for (std::size_t t = 0; t < v.witness.size(); ++t)
          text << (t ? "," : "") << v.witness[t];
        text << "): " << v.detail << "\n";
      }
    }
    report["algebras"][name] = ja;
  }
  report["all_valid"] = all_valid;
  return emit(report, text.str(), opts, all_valid ? 0 : 1);
}

int cmd_dual_basis(const std::string& path, const std::string& name,
                   const OutputOptions& opts) {
  Instance inst = load_instance(path);
  const AlgebraPtr& alg = inst.algebra(name);
  Json report;
  report["command"] = "dual-basis";
  report["instance"] = path;
  report["algebra"] = name;
  std::ostringstream text;
  try {
    const Matrix& d = alg->dual_basis();
    report["dual_basis"] = matrix_to_json(d);
    text << "dual basis of " << name << " (columns are x_j*):\n"
         << matrix_text(d);
    return emit(report, text.str(), opts, 0);
  } catch (const DegeneratePairing& e) {
    report["error"] = e.what();
    text << "degenerate pairing: " << e.what() << "\n";
    return emit(report, text.str(), opts, 1);
  }
}

int cmd_compose(const std::string& path, const std::string& first,
                const std::string& second, const std::string& expect,
                const OutputOptions& opts) {
  Instance inst = load_instance(path);
  Correspondence u = correspondence_from(inst, first);
  Correspondence v = correspondence_from(inst, second);
  Correspondence result = compose(u, v);
  Json report;
  report["command"] = "compose";
  report["instance"] = path;
  report["first"] = first;
  report["second"] = second;
  report["result"] = cycle_to_json(result.cycle());
  std::ostringstream text;
  text << second << " after " << first << " on " << result.cycle().space().describe()
       << ":\n  " << cycle_text(result.cycle()) << "\n";
  if (result.is_endo()) {
    Matrix m = matrix_form(result);
    report["matrix"] = matrix_to_json(m);
    text << "dual-basis matrix:\n" << matrix_text(m);
  }
  int code = 0;
  if (!expect.empty()) {
    bool match = result.cycle() == inst.cycle(expect);
    report["expected"] = expect;
    report["matches_expected"] = match;
    text << "matches '" << expect << "': " << (match ? "yes" : "no") << "\n";
    code = match ? 0 : 1;
  }
  return emit(report, text.str(), opts, code);
}

int cmd_idempotent_power(const std::string& path, const std::string& name,
                         const OutputOptions& opts) {
  Instance inst = load_instance(path);
  Correspondence e = correspondence_from(inst, name);
  auto [n, idem] = idempotent_power(e);
  Json report;
  report["command"] = "idempotent-power";
  report["instance"] = path;
  report["endomorphism"] = name;
  report["n"] = n;
  report["idempotent"] = cycle_to_json(idem.cycle());
  report["is_zero"] = idem.is_zero();
  std::ostringstream text;
  text << "smallest idempotent power of " << name << ": n = " << n << "\n"
       << "idempotent: " << cycle_text(idem.cycle()) << "\n";
  return emit(report, text.str(), opts, 0);
}

Json hypothesis_report_to_json(const HypothesisReport& r) {
  Json out;
  out["trivial_zero"] = r.trivial_zero;
  out["indecomposability"] = r.indecomposability;
  Json v = Json::array();
  for (const auto& violation : r.violations)
    v.push_back(Json{{"code", violation.code}, {"detail", violation.detail}});
  out["violations"] = v;
  return out;
}

int cmd_descend(const std::string& path, const OutputOptions& opts) {
  Instance inst = load_instance(path);
  if (!inst.has_descent_block())
    throw ParseError("instance '" + path + "' has no descent block");
  DescentInstance d = inst.descent_instance();
  Json report;
  report["command"] = "descend";
  report["instance"] = path;
  std::ostringstream text;
  HypothesisReport hr = check_hypotheses(d);
  report["hypotheses"] = hypothesis_report_to_json(hr);
  if (!hr.violations.empty()) {
    text << "hypotheses violated (" << hr.violations.size() << "):\n";
    for (const auto& v : hr.violations)
      text << "  " << v.code << ": " << v.detail << "\n";
    return emit(report, text.str(), opts, 1);
  }
  text << "hypotheses: ok (indecomposability check: " << hr.indecomposability
       << ")\n";
  try {
    DescentCertificate cert = run_descent(d);
    report["certificate"] = certificate_to_json(cert);
    if (cert.trivial_zero) {
      text << "zero projector: the zero summand splits trivially\n";
      return emit(report, text.str(), opts, 0);
    }
    text << "cdmin = " << cert.cdmin_value << ", exponents n1 = " << cert.n1
         << ", n2 = " << cert.n2 << ", nbar = " << cert.nbar << "\n";
    for (const auto& c : cert.checks)
      text << "  check " << c.name << ": " << (c.passed ? "ok" : "FAILED") << "\n";
    if (cert.g_hat && cert.f_hat) {
      text << "g_hat: " << cycle_text(cert.g_hat->cycle()) << "\n"
           << "f_hat: " << cycle_text(cert.f_hat->cycle()) << "\n";
    }
    text << "descent certificate complete: g_hat after f_hat = p\n";
    return emit(report, text.str(), opts, 0);
  } catch (const StepFailure& e) {
    report["failure"] = {{"kind", "step"}, {"step", e.step()}, {"detail", e.what()}};
    text << e.what() << "\n";
    return emit(report, text.str(), opts, 1);
  } catch (const RationalityFailure& e) {
    report["failure"] = {{"kind", "rationality"},
                         {"cycle", e.cycle_name()},
                         {"label", to_string(e.label())},
                         {"detail", e.what()}};
    text << "rationality audit failed: " << e.what() << "\n";
    return emit(report, text.str(), opts, 1);
  }
}

int cmd_verify(const std::string& path, const OutputOptions& opts) {
  Instance inst = load_instance(path);
  Json report;
  report["command"] = "verify";
  report["instance"] = path;
  std::ostringstream text;
  bool ok = true;
  Json algebras = Json::object();
  for (const auto& [name, alg] : inst.algebras) {
    auto violations = alg->validate();
    algebras[name] = violations.empty();
    if (!violations.empty()) {
      ok = false;
      text << "algebra " << name << ": " << violations.size() << " violation(s)\n";
      for (const auto& v : violations)
        text << "  " << v.axiom << ": " << v.detail << "\n";
    } else {
      text << "algebra " << name << ": valid\n";
    }
  }
  report["algebras"] = algebras;
  if (inst.has_descent_block()) {
    HypothesisReport hr = check_hypotheses(inst.descent_instance());
    report["hypotheses"] = hypothesis_report_to_json(hr);
    if (hr.trivial_zero) {
      text << "descent hypotheses: zero projector (trivially a summand)\n";
    } else if (hr.violations.empty()) {
      text << "descent hypotheses: ok (indecomposability check: "
           << hr.indecomposability << ")\n";
    } else {
      ok = false;
      text << "descent hypotheses violated (" << hr.violations.size() << "):\n";
      for (const auto& v : hr.violations)
        text << "  " << v.code << ": " << v.detail << "\n";
    }
  }
  report["all_passed"] = ok;
  return emit(report, text.str(), opts, ok ? 0 : 1);
}

int cmd_property_suite(std::uint64_t seed, std::uint64_t count,
                       std::size_t max_rank, const std::string& moduli_csv,
                       const std::string& mutate, const OutputOptions& opts) {
  AlgebraBounds bounds;
  bounds.max_rank = max_rank;
  if (!moduli_csv.empty()) {
    bounds.moduli.clear();
    std::stringstream ss(moduli_csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
      bounds.moduli.push_back(std::stoull(tok));
    if (bounds.moduli.empty())
      throw ParseError("--moduli needs at least one value");
  }
  PropertyReport r = mutate.empty()
                         ? run_property_suite(seed, count, bounds)
                         : run_mutated_suite(mutate, seed, count, bounds);
  Json report = property_report_to_json(r);
  report["command"] = "property-suite";
  if (!mutate.empty()) report["mutation"] = mutate;
  std::ostringstream text;
  text << "property suite: seed " << r.seed << ", " << r.completed << "/"
       << r.requested << " iterations clean\n";
  text << "generation: " << r.generation.produced << " algebras from "
       << r.generation.attempts << " draws (" << r.generation.rejected_axioms
       << " rejected)\n";
  for (const auto& [name, n] : r.passes)
    text << "  " << name << ": " << n << " passes\n";
  if (r.counterexample) {
    text << "counterexample for '" << r.counterexample->property
         << "' at iteration " << r.counterexample->iteration << ":\n  "
         << r.counterexample->description << "\n";
  } else {
    text << "all properties hold\n";
  }
  return emit(report, text.str(), opts, r.all_passed() ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact correspondence calculus for split motives over Z/m"};
  app.require_subcommand(1);
  app.fallthrough();  // global --report/--out may follow the subcommand

  OutputOptions opts;
  app.add_option("--report", opts.format, "report format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  app.add_option("--out", opts.out_path, "write the report to a file");

  std::string instance_path, algebra_name, first, second, expect, endo;
  std::string mutate, moduli_csv;
  std::uint64_t seed = 1, count = 1000;
  std::size_t max_rank = 4;

  auto* check = app.add_subcommand("check-algebra", "validate algebra axioms");
  check->add_option("--instance", instance_path)->required();
  check->add_option("--algebra", algebra_name, "restrict to one algebra");

  auto* dual = app.add_subcommand("dual-basis", "print a dual basis");
  dual->add_option("--instance", instance_path)->required();
  dual->add_option("--algebra", algebra_name)->required();

  auto* comp = app.add_subcommand("compose", "compose two named correspondences");
  comp->add_option("--instance", instance_path)->required();
  comp->add_option("--first", first, "applied first")->required();
  comp->add_option("--second", second, "applied second")->required();
  comp->add_option("--expect", expect, "compare the result against this cycle");

  auto* idem = app.add_subcommand("idempotent-power",
                                  "smallest idempotent composition power");
  idem->add_option("--instance", instance_path)->required();
  idem->add_option("--endo", endo, "endomorphism cycle name")->required();

  auto* desc = app.add_subcommand("descend", "run the going-down construction");
  desc->add_option("--instance", instance_path)->required();

  auto* verify = app.add_subcommand("verify", "audit an instance without descending");
  verify->add_option("--instance", instance_path)->required();

  auto* prop = app.add_subcommand("property-suite",
                                  "randomized verification of the engine laws");
  prop->add_option("--seed", seed)->capture_default_str();
  prop->add_option("--count", count)->capture_default_str();
  prop->add_option("--max-rank", max_rank)->capture_default_str();
  prop->add_option("--moduli", moduli_csv, "comma-separated modulus pool");
  prop->add_option("--mutate", mutate, "run with one engine corruption enabled")
      ->check(CLI::IsMember(mutation_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits 0; usage errors exit 2
  }

  auto started = std::chrono::steady_clock::now();
  int code = 2;
  try {
    if (check->parsed())
      code = cmd_check_algebra(instance_path, algebra_name, opts);
    else if (dual->parsed())
      code = cmd_dual_basis(instance_path, algebra_name, opts);
    else if (comp->parsed())
      code = cmd_compose(instance_path, first, second, expect, opts);
    else if (idem->parsed())
      code = cmd_idempotent_power(instance_path, endo, opts);
    else if (desc->parsed())
      code = cmd_descend(instance_path, opts);
    else if (verify->parsed())
      code = cmd_verify(instance_path, opts);
    else if (prop->parsed())
      code = cmd_property_suite(seed, count, max_rank, moduli_csv, mutate, opts);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  auto elapsed = std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  std::cerr << "elapsed: " << elapsed << "s\n";  // stderr only: reports stay
                                                 // byte-deterministic
  return code;
}
