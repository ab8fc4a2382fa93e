#pragma once

#include <string>
#include <vector>

#include "vnspec/joining.hpp"

namespace vnspec {

/// A subspace V of H offered as a U-mu_bar-module, with the residuals of every
/// property it needs.
struct SubmoduleCandidate {
  std::string label;
  CMatrix projection;                 // P_V on H
  Eigen::Index dim = 0;
  double mu_bar = 0.0;
  double alg_bar_residual = 0.0;      // distance of P_V from <A,e>
  double U_residual = 0.0;            // |U P_V U^* - P_V|
  double e_overlap = 0.0;             // |P_V e|
  double jF_commutator = 0.0;         // max_f |[P_V, j(f)]|
  double witness_fixed = 0.0;         // |U_bar x - x|, x = gamma_bar(P_V)
  double witness_orthogonal = 0.0;    // max_f |<x, gamma_bar(e f)>|
  bool is_right_F_module = false;
  bool is_U_invariant = false;
  bool orthogonal_to_HF = false;

  bool certified() const { return is_right_F_module && is_U_invariant && orthogonal_to_HF; }
};

SubmoduleCandidate certify_candidate(const GnsSpace& gns, const Subsystem& sub, const BasicConstruction& bc,
                                     const CMatrix& projection, std::string label, const ToleranceConfig& tol);

/// Projection onto span{x Omega : x in elements}.
CMatrix module_projection(const GnsSpace& gns, const std::vector<CMatrix>& elements, const ToleranceConfig& tol);

/// Central decomposition of H (-) H_F under the *-algebra generated by U and
/// j(F). Isomorphic modules are reported as their block sum. Ordered by
/// descending mu_bar, then by rounded projection entries.
std::vector<SubmoduleCandidate> find_minimal_modules(const GnsSpace& gns, const Subsystem& sub,
                                                     const BasicConstruction& bc, const ToleranceConfig& tol);

/// c_N = (1/N) sum_{n=1..N} lambda(|D(a^* alpha^n(a))|^2) for N = 1..n_max.
/// Throws NotMeanZero when D(a) != 0.
std::vector<double> cesaro_sequence(const WStarSystem& system, const Subsystem& sub, const CMatrix& a,
                                    int n_max, const ToleranceConfig& tol);

/// Values at N = 1, 2, 4, ... stopping once N >= 8 and |c_N - c_{N/2}| < 1e-6.
struct CesaroSample {
  std::vector<int> n;
  std::vector<double> value;
};
CesaroSample cesaro_sampled(const std::vector<double>& sequence);

/// Basis of ker D chosen as U-eigenvectors of H (-) H_F (Schur vectors of the
/// compressed U), returned as algebra elements.
std::vector<CMatrix> admissible_test_elements(const GnsSpace& gns, const BasicConstruction& bc,
                                              const ToleranceConfig& tol);

struct RdsCertificate {
  bool verdict = false;
  Eigen::Index dim_E = 0;
  Eigen::Index dim_complement = 0;     // dim H - rank e
  double span_residual = 0.0;          // |P_E - (1 - e)|
  double completeness_residual = 0.0;  // |sum P_V - (1 - e)|
  double additivity_residual = 0.0;    // |sum mu_bar(P_V) - mu_bar(1 - e)|
  double mu_bar_complement = 0.0;      // mu_bar(1 - e)
};

RdsCertificate rds_verdict(const BasicConstruction& bc, const std::vector<SubmoduleCandidate>& modules,
                           const ToleranceConfig& tol);

/// Relative ergodicity of the joining, cross-checked against dim_E == 0 and
/// H == H_F. Throws VerdictMismatch if the routes disagree.
bool rwm_verdict_exact(const ErgodicityCheck& ergodicity, const RdsCertificate& rds);

struct FiberAnalysis {
  std::vector<double> nu;
  std::vector<Eigen::Index> fiber_dims;
  double unweighted_sum = 0.0;  // sum_y dim V_y
  double weighted_sum = 0.0;    // sum_y nu(y) dim V_y
  double measured = 0.0;        // mu_bar(P_V)
  std::string flagged;          // "weighted" or "unweighted", whichever is closer
  double flagged_residual = 0.0;
  Eigen::Index rank = 0;        // max_y dim V_y
};

/// Throws NotCommutative.
FiberAnalysis classical_fiber_analysis(const GnsSpace& gns, const Subsystem& sub,
                                       const SubmoduleCandidate& module, const ToleranceConfig& tol);

struct AbsoluteSpectrum {
  bool spans = false;
  std::vector<Complex> eigenvalues;
};

AbsoluteSpectrum absolute_spectrum_check(const GnsSpace& gns, const ToleranceConfig& tol);

}  // namespace vnspec
