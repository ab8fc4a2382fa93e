// vnspec: analyze finite W*-dynamical systems described in JSON.
//
// Exit codes: 0 all checks pass, 1 negative verdict for the asked question,
// 2 invalid input, 3 numerical breakdown or a failed check.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "vnspec/report.hpp"

#ifndef VNSPEC_SYSTEMS_DIR
#define VNSPEC_SYSTEMS_DIR "systems"
#endif

namespace {

using namespace vnspec;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInvalid = 2;
constexpr int kBreakdown = 3;

struct Globals {
  std::optional<double> eps_rank;
  std::optional<double> eps_assert;
  std::uint64_t seed = 20240607;
  bool quiet = false;
};

ToleranceOverrides overrides(const Globals& g) {
  ToleranceOverrides o;
  o.eps_rank = g.eps_rank;
  o.eps_assert = g.eps_assert;
  return o;
}

void say(const Globals& g, const std::string& text) {
  if (!g.quiet) std::cout << text;
}

const CheckResult* find_check(const AnalysisReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool checks_pass(const AnalysisReport& r, std::initializer_list<const char*> names) {
  for (const char* n : names) {
    const CheckResult* c = find_check(r, n);
    if (c && !c->pass) return false;
  }
  return true;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

AnalysisReport analyze_file(const std::string& path, const Globals& g, std::optional<int> n_max = std::nullopt) {
  const SystemDescription desc = parse_system_file(path);
  AnalyzeOptions opts;
  opts.tol = resolve_tolerances(desc, overrides(g));
  if (n_max) opts.tol.cesaro_n_max = *n_max;
  opts.seed = g.seed;
  return run_analyze(desc, opts);
}

int cmd_analyze(const std::string& path, const Globals& g) {
  const AnalysisReport r = analyze_file(path, g);
  say(g, emit_report(r, ReportFormat::Text));
  return r.overall_pass ? kOk : kBreakdown;
}

int cmd_report(const std::string& path, const std::string& format, const std::string& output, const Globals& g) {
  const AnalysisReport r = analyze_file(path, g);
  const std::string doc = emit_report(r, format == "json" ? ReportFormat::Json : ReportFormat::Text);
  if (!output.empty()) {
    std::ofstream out(output, std::ios::binary);
    out << doc;
  } else {
    say(g, doc);
  }
  return r.overall_pass ? kOk : kBreakdown;
}

int cmd_certify_rds(const std::string& path, const Globals& g) {
  const AnalysisReport r = analyze_file(path, g);
  const auto& c = r.rds_certificate;
  std::string out;
  out += "rds " + std::string(r.rds ? "true" : "false") + "\n";
  out += "  dim(H - H_F) " + std::to_string(c.dim_complement) + ", dim E " + std::to_string(c.dim_E) + "\n";
  out += "  mu_bar(1 - e) " + num(c.mu_bar_complement) + "\n";
  out += "  |P_E - (1 - e)| " + sci(c.span_residual) + ", |sum P_V - (1 - e)| " + sci(c.completeness_residual) +
         ", |sum mu_bar(P_V) - mu_bar(1 - e)| " + sci(c.additivity_residual) + "\n";
  for (const auto& m : r.modules)
    out += "  " + m.label + " (" + m.source + "): dim " + std::to_string(m.dim) + ", mu_bar " + num(m.mu_bar) +
           (m.certified ? ", certified" : ", not certified") + "\n";
  say(g, out);
  if (!checks_pass(r, {"module_completeness", "trace_additivity", "commutant_equality", "mu_bar_extension"}))
    return kBreakdown;
  return r.rds ? kOk : kNegative;
}

int cmd_rwm(const std::string& path, const std::string& element, std::optional<int> n_max, const Globals& g) {
  const AnalysisReport r = analyze_file(path, g, n_max);
  std::string out = "rwm " + std::string(r.rwm ? "true" : "false") + "\n";
  out += "  relative ergodicity: fixed space dim " + std::to_string(r.ergodicity.fixed_dim) + ", H_lambda dim " +
         std::to_string(r.ergodicity.H_lambda_dim) + "\n";
  out += "  dim E " + std::to_string(r.dim_E) + ", dim(H - H_F) " + std::to_string(r.dim_complement) + "\n";
  const CesaroRow* row = nullptr;
  if (!element.empty()) {
    for (const auto& c : r.named_cesaro)
      if (c.name == element) row = &c;
    if (!row) {
      std::cerr << "error: no element named \"" << element << "\" in " << path << "\n";
      return kInvalid;
    }
    if (!row->mean_zero) {
      std::cerr << "error: element \"" << element << "\" is not mean zero, |D(a)| = " << sci(row->mean_part) << "\n";
      return kInvalid;
    }
  } else if (r.admissible_best) {
    row = &*r.admissible_best;
  }
  if (row) {
    out += "  cesaro " + row->name + ": min c_N " + num(row->min) + "\n";
    for (std::size_t i = 0; i < row->sample.n.size(); ++i)
      out += "    N " + std::to_string(row->sample.n[i]) + "  c_N " + num(row->sample.value[i]) + "\n";
  } else {
    out += "  cesaro: no admissible element (H = H_F)\n";
  }
  say(g, out);
  if (!checks_pass(r, {"rwm_cesaro_consistency"})) return kBreakdown;
  return r.rwm ? kOk : kNegative;
}

int cmd_joining(const std::string& path, const Globals& g) {
  const AnalysisReport r = analyze_file(path, g);
  std::string out;
  out += "joining over F\n";
  out += "  dim A " + std::to_string(r.dim_A) + ", dim A' " + std::to_string(r.dim_A_prime) + ", dim H_omega " +
         std::to_string(r.dim_H_omega) + ", dim H_bar " + std::to_string(r.dim_H_bar) + "\n";
  out += "  omega(1 x 1) " + num(r.omega_unit) + ", min Gram eigenvalue " + sci(r.min_gram_eigenvalue) + "\n";
  out += "  |R*R - 1| " + sci(r.R_star_R) + ", |RR* - 1| " + sci(r.R_R_star) + ", |RWR* - U_bar| " +
         sci(r.R_intertwine) + "\n";
  out += "  H_lambda spans agree: " + std::string(r.H_lambda_residual < r.tol.eps_assert ? "true" : "false") +
         " (" + sci(r.H_lambda_residual) + ")\n";
  for (const char* n : {"R_isometry", "R_intertwine", "omega_marginals", "omega_two_formulas"}) {
    const CheckResult* c = find_check(r, n);
    out += std::string("  ") + n + " " + sci(c->residual) + (c->pass ? " pass" : " FAIL") + "\n";
  }
  say(g, out);
  return checks_pass(r, {"R_isometry", "R_intertwine", "omega_marginals", "omega_two_formulas"}) ? kOk : kBreakdown;
}

int cmd_selftest(const std::string& dir, const std::string& format, const Globals& g) {
  const auto files = list_systems(dir);
  if (files.empty()) {
    std::cerr << "error: no *.json systems in " << dir << "\n";
    return kInvalid;
  }
  const auto reports = run_selftest(files, overrides(g), g.seed);
  bool all = true;
  for (const auto& r : reports) all = all && r.overall_pass;
  if (format == "json") {
    say(g, emit_reports_json(reports));
  } else {
    std::string out;
    for (const auto& r : reports) {
      int passed = 0, applicable = 0;
      for (const auto& c : r.checks) {
        applicable += c.applicable;
        passed += c.applicable && c.pass;
      }
      out += (r.overall_pass ? "pass  " : "FAIL  ") + r.name + "  (" + std::to_string(passed) + "/" +
             std::to_string(applicable) + " checks)\n";
    }
    say(g, out);
  }
  return all ? kOk : kBreakdown;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Basic construction, lifted trace and relative spectrum of finite W*-dynamical systems"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--eps-rank", g.eps_rank, "rank cutoff for singular values")->check(CLI::PositiveNumber);
  app.add_option("--eps-assert", g.eps_assert, "threshold for identity checks")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for randomized checks")->envname("VNSPEC_SEED");
  app.add_flag("--quiet", g.quiet, "print nothing, report through the exit code");

  std::string file, format = "text", output, element, dir = VNSPEC_SYSTEMS_DIR;
  std::optional<int> n_max;

  auto* analyze = app.add_subcommand("analyze", "full analysis with the check ledger");
  analyze->add_option("file", file)->required()->check(CLI::ExistingFile);
  auto* rds = app.add_subcommand("certify-rds", "relative discrete spectrum certificate");
  rds->add_option("file", file)->required()->check(CLI::ExistingFile);
  auto* rwm = app.add_subcommand("rwm", "relative weak mixing, exact and Cesaro");
  rwm->add_option("file", file)->required()->check(CLI::ExistingFile);
  rwm->add_option("--element", element, "named element of the description");
  rwm->add_option("--N", n_max, "length of the Cesaro sequence")->check(CLI::PositiveNumber);
  auto* joining = app.add_subcommand("joining", "relatively independent joining and the unitary R");
  joining->add_option("file", file)->required()->check(CLI::ExistingFile);
  auto* report = app.add_subcommand("report", "full report as text or JSON");
  report->add_option("file", file)->required()->check(CLI::ExistingFile);
  report->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  report->add_option("--output,-o", output, "write to a file instead of stdout");
  auto* selftest = app.add_subcommand("selftest", "analyze every shipped system");
  selftest->add_option("--dir", dir, "directory of system descriptions");
  selftest->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*analyze) return cmd_analyze(file, g);
    if (*rds) return cmd_certify_rds(file, g);
    if (*rwm) return cmd_rwm(file, element, n_max, g);
    if (*joining) return cmd_joining(file, g);
    if (*report) return cmd_report(file, format, output, g);
    if (*selftest) return cmd_selftest(dir, format, g);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_numerical_breakdown(e.code()) ? kBreakdown : kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBreakdown;
  }
  return kInvalid;
}
