#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vnspec/description.hpp"
#include "vnspec/spectrum.hpp"

namespace vnspec {

/// Names of the check ledger, in report order.
const std::vector<std::string>& check_names();

struct CheckResult {
  std::string name;
  bool applicable = true;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = true;
  std::optional<double> value;  // the statistic behind an indicator residual
  std::string detail;
};

struct ModuleRow {
  std::string label;
  std::string source;  // "central_block" or "candidate"
  Eigen::Index dim = 0;
  double mu_bar = 0.0;
  bool certified = false;
  double alg_bar_residual = 0.0;
  double U_residual = 0.0;
  double e_overlap = 0.0;
  double jF_commutator = 0.0;
  double witness_fixed = 0.0;
  double witness_orthogonal = 0.0;
  std::optional<FiberAnalysis> fibers;
};

struct CesaroRow {
  std::string name;
  bool mean_zero = true;
  double mean_part = 0.0;  // |D(a)| when not mean zero
  double min = 0.0;
  double max = 0.0;
  CesaroSample sample;
};

struct AnalysisReport {
  std::string name;
  std::string kind;
  std::uint64_t seed = 0;
  ToleranceConfig tol;

  // system
  Eigen::Index ambient_dim = 0;
  Eigen::Index dim_A = 0;
  Eigen::Index dim_F = 0;
  Eigen::Index dim_H = 0;
  Eigen::Index dim_HF = 0;
  double mu_unit = 0.0;
  bool F_commutative = false;

  // basic construction
  Eigen::Index dim_alg_bar = 0;
  Eigen::Index dim_commutant_jF = 0;
  Eigen::Index dim_H_bar = 0;
  double mu_bar_one = 0.0;
  double mu_bar_e = 0.0;
  double mu_bar_complement = 0.0;

  // joining
  Eigen::Index dim_A_prime = 0;
  Eigen::Index dim_H_omega = 0;
  double omega_unit = 0.0;
  double min_gram_eigenvalue = 0.0;
  double R_star_R = 0.0;
  double R_R_star = 0.0;
  double R_intertwine = 0.0;
  double null_annihilation = 0.0;
  double eq_R0 = 0.0;
  double H_lambda_residual = 0.0;

  // spectrum
  Eigen::Index dim_complement = 0;
  Eigen::Index dim_E = 0;
  std::vector<ModuleRow> modules;
  bool rds = false;
  RdsCertificate rds_certificate;
  bool rwm = false;
  ErgodicityCheck ergodicity;  // bases dropped before emitting
  Eigen::Index admissible_count = 0;
  double admissible_best_min = 0.0;
  std::optional<CesaroRow> admissible_best;
  std::vector<CesaroRow> named_cesaro;

  std::optional<FiniteExtensionDiagnostics> finite_extension;

  std::vector<CheckResult> checks;
  bool overall_pass = false;
};

struct AnalyzeOptions {
  ToleranceConfig tol;
  std::uint64_t seed = 20240607;
  bool with_cesaro = true;
};

/// Runs every module on the description. Module errors propagate; checks
/// that merely fail are recorded in the ledger.
AnalysisReport run_analyze(const SystemDescription& desc, const AnalyzeOptions& opts);

enum class ReportFormat { Text, Json };

std::string emit_report(const AnalysisReport& report, ReportFormat format);

/// JSON document {"report_version", "reports": [...]} for a batch.
std::string emit_reports_json(const std::vector<AnalysisReport>& reports);

/// *.json files of a directory, sorted by name.
std::vector<std::string> list_systems(const std::string& dir);

/// Tolerances for one description: defaults, then the file's overrides, then
/// the command-line ones.
ToleranceConfig resolve_tolerances(const SystemDescription& desc, const ToleranceOverrides& flags);

/// Analyzes every file in order. Each analysis is independent.
std::vector<AnalysisReport> run_selftest(const std::vector<std::string>& files, const ToleranceOverrides& flags,
                                         std::uint64_t seed);

}  // namespace vnspec
