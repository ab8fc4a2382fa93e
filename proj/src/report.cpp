#include "vnspec/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>

namespace vnspec {

using Json = nlohmann::ordered_json;

namespace {

constexpr double kCesaroFloor = 1e-6;
constexpr int kRandomPairs = 100;

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// Emitted numbers are rounded so that reports are stable in the last bits.
double rounded(double v, int digits) {
  if (!std::isfinite(v)) return v;
  if (v == 0.0) return 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

Json value(double v) { return rounded(v, 12); }
Json residual(double v) {
  if (!std::isfinite(v)) return "inf";
  return rounded(v, 3);
}

CheckResult check(std::string name, double res, double threshold, std::string detail = "") {
  CheckResult c;
  c.name = std::move(name);
  c.residual = res;
  c.threshold = threshold;
  c.pass = std::isfinite(res) && res < threshold;
  c.detail = std::move(detail);
  return c;
}

CheckResult indicator(std::string name, bool agrees, double statistic, std::string detail) {
  CheckResult c;
  c.name = std::move(name);
  c.residual = agrees ? 0.0 : 1.0;
  c.threshold = 0.5;
  c.pass = agrees;
  c.value = statistic;
  c.detail = std::move(detail);
  return c;
}

CheckResult not_applicable(std::string name, std::string detail) {
  CheckResult c;
  c.name = std::move(name);
  c.applicable = false;
  c.detail = std::move(detail);
  return c;
}

ModuleRow module_row(const SubmoduleCandidate& c, std::string source) {
  ModuleRow row;
  row.label = c.label;
  row.source = std::move(source);
  row.dim = c.dim;
  row.mu_bar = c.mu_bar;
  row.certified = c.certified();
  row.alg_bar_residual = c.alg_bar_residual;
  row.U_residual = c.U_residual;
  row.e_overlap = c.e_overlap;
  row.jF_commutator = c.jF_commutator;
  row.witness_fixed = c.witness_fixed;
  row.witness_orthogonal = c.witness_orthogonal;
  return row;
}

CesaroRow cesaro_row(std::string name, const std::vector<double>& seq) {
  CesaroRow row;
  row.name = std::move(name);
  row.min = seq.empty() ? 0.0 : *std::min_element(seq.begin(), seq.end());
  row.max = seq.empty() ? 0.0 : *std::max_element(seq.begin(), seq.end());
  row.sample = cesaro_sampled(seq);
  return row;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "mu_bar_extension", "commutant_equality",  "trace_tracial",     "alpha_bar_invariance",
      "R_isometry",       "R_intertwine",        "omega_marginals",   "omega_two_formulas",
      "module_completeness", "trace_additivity", "rds",               "rwm_exact",
      "rwm_cesaro_consistency", "fiber_formula", "finite_extension_beta", "finite_extension_nonproduct"};
  return names;
}

AnalysisReport run_analyze(const SystemDescription& desc, const AnalyzeOptions& opts) {
  const ToleranceConfig& tol = opts.tol;
  tol.validate();
  const ConstructedSystem cs = build_system(desc, tol);
  const WStarSystem& sys = cs.system;
  const Subsystem& sub = cs.sub;

  AnalysisReport r;
  r.name = desc.name;
  r.kind = desc.kind;
  r.seed = opts.seed;
  r.tol = tol;
  r.ambient_dim = sys.ambient_dim();
  r.dim_A = sys.dim();
  r.dim_F = sub.algebra.dim();
  r.mu_unit = sys.mu(CMatrix::Identity(r.ambient_dim, r.ambient_dim)).real();
  r.F_commutative = is_commutative(sub.algebra, tol.eps_assert);
  r.finite_extension = cs.finite_extension;

  const GnsSpace gns = build_gns(sys, tol);
  const BasicConstruction bc = build_basic_construction(gns, sub, tol);
  const Eigen::Index d = gns.dim();
  const CMatrix one = CMatrix::Identity(d, d);
  r.dim_H = d;
  r.dim_HF = numerical_rank(bc.e, tol.eps_rank);
  r.dim_alg_bar = bc.alg_bar.dim();
  r.dim_H_bar = bc.bar_gns.dim();
  r.mu_bar_one = bc.mu_bar(one).real();
  r.mu_bar_e = bc.mu_bar(bc.e).real();
  r.mu_bar_complement = bc.mu_bar(one - bc.e).real();

  JoiningData jd = relative_joining(gns, sub, bc, tol);
  build_R(jd, gns, sub, bc, tol, opts.seed);
  r.dim_A_prime = jd.commutant.dim();
  r.dim_H_omega = jd.dim_H_omega();
  r.omega_unit = jd.omega_vec.squaredNorm();
  r.min_gram_eigenvalue = jd.min_eigenvalue;
  r.R_star_R = jd.R_star_R;
  r.R_R_star = jd.R_R_star;
  r.R_intertwine = jd.R_intertwine;
  r.null_annihilation = jd.null_annihilation;
  r.eq_R0 = jd.eq_R0;
  r.H_lambda_residual = jd.H_lambda_residual;

  r.ergodicity = relative_ergodicity_check(gns, sub, bc, tol);
  r.ergodicity.fixed_basis.resize(0, 0);
  r.ergodicity.H_lambda_basis.resize(0, 0);

  const std::vector<SubmoduleCandidate> blocks = find_minimal_modules(gns, sub, bc, tol);
  for (const auto& b : blocks) r.modules.push_back(module_row(b, "central_block"));
  std::vector<SubmoduleCandidate> candidates;
  for (const auto& m : cs.candidate_modules)
    candidates.push_back(certify_candidate(gns, sub, bc, module_projection(gns, m.elements, tol), m.label, tol));
  for (const auto& c : candidates) r.modules.push_back(module_row(c, "candidate"));
  r.rds_certificate = rds_verdict(bc, blocks, tol);
  r.rds = r.rds_certificate.verdict;
  r.dim_E = r.rds_certificate.dim_E;
  r.dim_complement = r.rds_certificate.dim_complement;
  r.rwm = rwm_verdict_exact(r.ergodicity, r.rds_certificate);

  double fiber_residual = 0.0;
  bool any_fibers = false;
  if (r.F_commutative) {
    std::size_t k = 0;
    const auto fiber_of = [&](const SubmoduleCandidate& c) {
      FiberAnalysis fa = classical_fiber_analysis(gns, sub, c, tol);
      fiber_residual = std::max(fiber_residual, fa.flagged_residual);
      any_fibers = true;
      return fa;
    };
    for (const auto& b : blocks) r.modules[k++].fibers = fiber_of(b);
    for (const auto& c : candidates) r.modules[k++].fibers = fiber_of(c);
  }

  if (opts.with_cesaro) {
    const auto tests = admissible_test_elements(gns, bc, tol);
    r.admissible_count = static_cast<Eigen::Index>(tests.size());
    for (std::size_t i = 0; i < tests.size(); ++i) {
      auto row = cesaro_row("admissible_" + std::to_string(i), cesaro_sequence(sys, sub, tests[i], tol.cesaro_n_max, tol));
      if (!r.admissible_best || row.min > r.admissible_best->min) r.admissible_best = std::move(row);
    }
    r.admissible_best_min = r.admissible_best ? r.admissible_best->min : 0.0;
    for (const auto& [name, x] : desc.elements) {
      try {
        r.named_cesaro.push_back(cesaro_row(name, cesaro_sequence(sys, sub, x, tol.cesaro_n_max, tol)));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotMeanZero) throw;
        CesaroRow row;
        row.name = name;
        row.mean_zero = false;
        row.mean_part = ConditionalExpectation(sys, sub).apply(x).norm();
        r.named_cesaro.push_back(std::move(row));
      }
    }
  }

  // ledger
  const double eps = tol.eps_assert;
  SeededRng rng(opts.seed);
  double ext = bc.extension_residual;
  for (int m = 0; m < kRandomPairs; ++m) {
    const CMatrix a = sys.algebra.random_element(rng);
    const CMatrix b = sys.algebra.random_element(rng);
    const Complex lhs = bc.mu_bar(gns.left_rep(a) * bc.e * gns.left_rep(b));
    ext = std::max(ext, std::abs(lhs - sys.mu(a * b)));
  }
  r.checks.push_back(check("mu_bar_extension", ext, eps, "mu_bar(a e b) = mu(ab) on seeded random pairs"));
  r.checks.push_back(check("commutant_equality", bc.commutant_residual, eps, "<A,e> = (j(F))'"));

  double tracial = 0.0;
  for (int m = 0; m < kRandomPairs; ++m) {
    const CMatrix x = bc.alg_bar.random_element(rng);
    const CMatrix y = bc.alg_bar.random_element(rng);
    tracial = std::max(tracial, std::abs(bc.mu_bar(x * y) - bc.mu_bar(y * x)));
  }
  r.checks.push_back(check("trace_tracial", tracial, eps, "mu_bar(xy) = mu_bar(yx) on <A,e>"));

  double inv = (gns.U() * bc.e * gns.U().adjoint() - bc.e).norm();
  for (const auto& x : bc.alg_bar.basis())
    inv = std::max(inv, std::abs(bc.mu_bar(bc.alpha_bar.apply(bc.alg_bar, x)) - bc.mu_bar(x)));
  r.checks.push_back(check("alpha_bar_invariance", inv, eps, "mu_bar o alpha_bar = mu_bar and alpha_bar(e) = e"));

  r.checks.push_back(check("R_isometry", std::max({jd.R_star_R, jd.R_R_star, jd.null_annihilation, jd.eq_R0}), eps,
                           "R^*R = 1, RR^* = 1, R_0 well defined"));
  r.checks.push_back(check("R_intertwine", jd.R_intertwine, eps, "R W R^* = U_bar"));
  r.checks.push_back(check("omega_marginals", jd.marginal_residual, eps, "omega restricts to mu and mu'"));
  r.checks.push_back(check("omega_two_formulas", jd.two_formula_residual, eps,
                           "conditional-expectation formula equals the mu_bar formula"));
  r.checks.push_back(check("module_completeness", r.rds_certificate.completeness_residual, eps, "sum P_V = 1 - e"));
  r.checks.push_back(check("trace_additivity", r.rds_certificate.additivity_residual, eps,
                           "sum mu_bar(P_V) = mu_bar(1 - e)"));
  {
    CheckResult c = check("rds", r.rds_certificate.span_residual, eps, "E_{A/F} = H - H_F");
    c.pass = c.pass && r.rds;
    r.checks.push_back(c);
  }
  r.checks.push_back(indicator("rwm_exact", true, r.ergodicity.inclusion_residual,
                               "relative ergodicity, dim E = 0 and H = H_F agree"));
  if (opts.with_cesaro) {
    const bool consistent = r.rwm ? r.admissible_count == 0 : r.admissible_best_min > kCesaroFloor;
    r.checks.push_back(indicator("rwm_cesaro_consistency", consistent, r.admissible_best_min,
                                 r.rwm ? "no admissible element exists" : "some admissible c_N stays above 1e-6"));
  } else {
    r.checks.push_back(not_applicable("rwm_cesaro_consistency", "Cesaro sequences not computed"));
  }
  if (any_fibers)
    r.checks.push_back(check("fiber_formula", fiber_residual, eps, "flagged fiber sum equals mu_bar(P_V)"));
  else
    r.checks.push_back(not_applicable("fiber_formula", "F is not commutative"));
  if (r.finite_extension) {
    const auto& fe = *r.finite_extension;
    r.checks.push_back(check("finite_extension_beta", std::max(fe.beta_residual, fe.offdiagonal_residual), eps,
                             "alpha(b (x) 1) = beta(b) (x) 1, both beta expressions"));
    const bool expected = fe.dim_B1 > 0 && fe.dim_B2 > 0;
    const bool detected = fe.nonproduct_distance > eps;
    r.checks.push_back(indicator("finite_extension_nonproduct", expected == detected, fe.nonproduct_distance,
                                 expected ? "alpha(1 (x) E12) leaves 1 (x) M_2" : "alpha(1 (x) E12) stays in 1 (x) M_2"));
  } else {
    r.checks.push_back(not_applicable("finite_extension_beta", "not a finite extension"));
    r.checks.push_back(not_applicable("finite_extension_nonproduct", "not a finite extension"));
  }

  r.overall_pass = std::all_of(r.checks.begin(), r.checks.end(), [](const CheckResult& c) { return c.pass; });
  return r;
}

namespace {

Json fibers_json(const FiberAnalysis& fa) {
  Json nu = Json::array();
  for (double v : fa.nu) nu.push_back(value(v));
  return Json{{"nu", nu},
              {"fiber_dims", fa.fiber_dims},
              {"unweighted_sum", value(fa.unweighted_sum)},
              {"weighted_sum", value(fa.weighted_sum)},
              {"measured", value(fa.measured)},
              {"flagged", fa.flagged},
              {"flagged_residual", residual(fa.flagged_residual)},
              {"rank", fa.rank}};
}

Json cesaro_json(const CesaroRow& row) {
  Json samples = Json::array();
  for (std::size_t i = 0; i < row.sample.n.size(); ++i)
    samples.push_back(Json{{"N", row.sample.n[i]}, {"c", value(row.sample.value[i])}});
  Json j{{"name", row.name}, {"mean_zero", row.mean_zero}};
  if (!row.mean_zero) {
    j["mean_part"] = residual(row.mean_part);
    return j;
  }
  j["min"] = value(row.min);
  j["max"] = value(row.max);
  j["samples"] = samples;
  return j;
}

Json report_json(const AnalysisReport& r) {
  Json j;
  j["report_version"] = 1;
  j["name"] = r.name;
  j["kind"] = r.kind;
  j["seed"] = r.seed;
  j["tolerances"] = Json{{"eps_rank", r.tol.eps_rank},
                         {"eps_assert", r.tol.eps_assert},
                         {"cesaro_n_max", r.tol.cesaro_n_max}};
  j["system"] = Json{{"ambient_dim", r.ambient_dim}, {"dim_A", r.dim_A},         {"dim_F", r.dim_F},
                     {"dim_H", r.dim_H},             {"dim_HF", r.dim_HF},       {"dim_complement", r.dim_complement},
                     {"mu_unit", value(r.mu_unit)},  {"F_commutative", r.F_commutative}};
  j["basic_construction"] = Json{{"dim_alg_bar", r.dim_alg_bar},
                                 {"dim_H_bar", r.dim_H_bar},
                                 {"mu_bar_one", value(r.mu_bar_one)},
                                 {"mu_bar_e", value(r.mu_bar_e)},
                                 {"mu_bar_complement", value(r.mu_bar_complement)}};
  j["joining"] = Json{{"dim_A_prime", r.dim_A_prime},
                      {"dim_H_omega", r.dim_H_omega},
                      {"omega_unit", value(r.omega_unit)},
                      {"min_gram_eigenvalue", residual(r.min_gram_eigenvalue)},
                      {"R_star_R", residual(r.R_star_R)},
                      {"R_R_star", residual(r.R_R_star)},
                      {"R_intertwine", residual(r.R_intertwine)},
                      {"null_annihilation", residual(r.null_annihilation)},
                      {"eq_R0", residual(r.eq_R0)},
                      {"H_lambda_residual", residual(r.H_lambda_residual)},
                      {"H_lambda_spans_agree", r.H_lambda_residual < r.tol.eps_assert}};

  Json modules = Json::array();
  for (const auto& m : r.modules) {
    Json row{{"label", m.label},
             {"source", m.source},
             {"dim", m.dim},
             {"mu_bar", value(m.mu_bar)},
             {"certified", m.certified},
             {"residuals",
              Json{{"alg_bar", residual(m.alg_bar_residual)},
                   {"U_invariance", residual(m.U_residual)},
                   {"e_overlap", residual(m.e_overlap)},
                   {"jF_commutator", residual(m.jF_commutator)},
                   {"witness_fixed", residual(m.witness_fixed)},
                   {"witness_orthogonal", residual(m.witness_orthogonal)}}}};
    row["fibers"] = m.fibers ? fibers_json(*m.fibers) : Json(nullptr);
    modules.push_back(std::move(row));
  }
  const auto& rc = r.rds_certificate;
  Json named = Json::array();
  for (const auto& row : r.named_cesaro) named.push_back(cesaro_json(row));
  j["spectrum"] = Json{
      {"modules", modules},
      {"dim_E", r.dim_E},
      {"rds", r.rds},
      {"rds_certificate", Json{{"dim_E", rc.dim_E},
                               {"dim_complement", rc.dim_complement},
                               {"mu_bar_complement", value(rc.mu_bar_complement)},
                               {"span_residual", residual(rc.span_residual)},
                               {"completeness_residual", residual(rc.completeness_residual)},
                               {"additivity_residual", residual(rc.additivity_residual)}}},
      {"rwm", r.rwm},
      {"relative_ergodicity", Json{{"ergodic", r.ergodicity.ergodic},
                                   {"fixed_dim", r.ergodicity.fixed_dim},
                                   {"H_lambda_dim", r.ergodicity.H_lambda_dim},
                                   {"inclusion_residual", residual(r.ergodicity.inclusion_residual)}}},
      {"cesaro", Json{{"n_max", r.tol.cesaro_n_max},
                      {"admissible_count", r.admissible_count},
                      {"admissible_best_min", value(r.admissible_best_min)},
                      {"admissible_best", r.admissible_best ? cesaro_json(*r.admissible_best) : Json(nullptr)},
                      {"named", named}}}};

  if (r.finite_extension) {
    const auto& fe = *r.finite_extension;
    j["finite_extension"] = Json{{"dim_B1", fe.dim_B1},
                                 {"dim_B2", fe.dim_B2},
                                 {"beta_residual", residual(fe.beta_residual)},
                                 {"offdiagonal_residual", residual(fe.offdiagonal_residual)},
                                 {"nonproduct_distance", value(fe.nonproduct_distance)}};
  } else {
    j["finite_extension"] = nullptr;
  }

  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json row{{"name", c.name},
             {"applicable", c.applicable},
             {"residual", residual(c.residual)},
             {"threshold", c.threshold},
             {"pass", c.pass}};
    row["value"] = c.value ? value(*c.value) : Json(nullptr);
    row["detail"] = c.detail;
    checks.push_back(std::move(row));
  }
  j["checks"] = checks;
  j["overall_pass"] = r.overall_pass;
  return j;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string report_text(const AnalysisReport& r) {
  std::string out;
  const auto line = [&](const std::string& s) { out += s + "\n"; };
  const auto g = [](double v) { return fmt("%.10g", rounded(v, 12)); };
  const auto e = [](double v) { return fmt("%.2e", v); };

  line("system " + (r.name.empty() ? std::string("(unnamed)") : r.name) + " [" + r.kind + "]");
  line("  ambient " + std::to_string(r.ambient_dim) + ", dim A " + std::to_string(r.dim_A) + ", dim F " +
       std::to_string(r.dim_F) + ", dim H " + std::to_string(r.dim_H) + ", dim H_F " + std::to_string(r.dim_HF) +
       ", mu(1) " + g(r.mu_unit));
  line("basic construction");
  line("  dim <A,e> " + std::to_string(r.dim_alg_bar) + ", dim H_bar " + std::to_string(r.dim_H_bar));
  line("  mu_bar(1) " + g(r.mu_bar_one) + ", mu_bar(e) " + g(r.mu_bar_e) + ", mu_bar(1-e) " + g(r.mu_bar_complement));
  line("joining");
  line("  dim A' " + std::to_string(r.dim_A_prime) + ", dim H_omega " + std::to_string(r.dim_H_omega) +
       ", omega(1 x 1) " + g(r.omega_unit));
  line("  |R*R-1| " + e(r.R_star_R) + ", |RR*-1| " + e(r.R_R_star) + ", |RWR*-U_bar| " + e(r.R_intertwine));
  line("spectrum");
  line("  dim(H - H_F) " + std::to_string(r.dim_complement) + ", dim E " + std::to_string(r.dim_E) + ", rds " +
       yes_no(r.rds) + ", rwm " + yes_no(r.rwm));
  if (r.modules.empty()) {
    line("  modules: none");
  } else {
    line("  modules:");
    char buf[200];
    std::snprintf(buf, sizeof buf, "    %-14s %-13s %5s %14s  %s", "label", "source", "dim", "mu_bar", "certified");
    line(buf);
    for (const auto& m : r.modules) {
      std::snprintf(buf, sizeof buf, "    %-14s %-13s %5ld %14s  %s", m.label.c_str(), m.source.c_str(),
                    static_cast<long>(m.dim), g(m.mu_bar).c_str(), yes_no(m.certified).c_str());
      std::string s = buf;
      if (m.fibers) {
        s += "  fibers";
        for (auto dim : m.fibers->fiber_dims) s += " " + std::to_string(dim);
        s += " (" + m.fibers->flagged + ")";
      }
      line(s);
    }
  }
  if (r.admissible_best)
    line("  cesaro: " + std::to_string(r.admissible_count) + " admissible elements, best min c_N " +
         g(r.admissible_best_min));
  for (const auto& c : r.named_cesaro) {
    if (c.mean_zero)
      line("  cesaro " + c.name + ": min c_N " + g(c.min) + ", max c_N " + g(c.max));
    else
      line("  cesaro " + c.name + ": not mean zero, |D(a)| " + e(c.mean_part));
  }
  if (r.finite_extension)
    line("finite extension: dim B1 " + std::to_string(r.finite_extension->dim_B1) + ", dim B2 " +
         std::to_string(r.finite_extension->dim_B2) + ", non-product distance " +
         g(r.finite_extension->nonproduct_distance));
  line("checks");
  for (const auto& c : r.checks) {
    char buf[200];
    const std::string res = c.applicable ? e(c.residual) : std::string("-");
    const char* verdict = !c.applicable ? "n/a" : c.pass ? "pass" : "FAIL";
    std::snprintf(buf, sizeof buf, "  %-28s %10s  %s", c.name.c_str(), res.c_str(), verdict);
    line(buf);
  }
  line(std::string("overall: ") + (r.overall_pass ? "pass" : "FAIL"));
  return out;
}

}  // namespace

std::string emit_report(const AnalysisReport& report, ReportFormat format) {
  if (format == ReportFormat::Text) return report_text(report);
  return report_json(report).dump(2) + "\n";
}

std::string emit_reports_json(const std::vector<AnalysisReport>& reports) {
  Json j;
  j["report_version"] = 1;
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  j["reports"] = arr;
  return j.dump(2) + "\n";
}

std::vector<std::string> list_systems(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

ToleranceConfig resolve_tolerances(const SystemDescription& desc, const ToleranceOverrides& flags) {
  return flags.apply(effective_tolerances(desc));
}

std::vector<AnalysisReport> run_selftest(const std::vector<std::string>& files, const ToleranceOverrides& flags,
                                         std::uint64_t seed) {
  std::vector<AnalysisReport> out;
  for (const auto& f : files) {
    const SystemDescription desc = parse_system_file(f);
    AnalyzeOptions opts;
    opts.tol = resolve_tolerances(desc, flags);
    opts.seed = seed;
    out.push_back(run_analyze(desc, opts));
  }
  return out;
}

}  // namespace vnspec
