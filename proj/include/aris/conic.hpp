#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aris/matkit.hpp"

namespace aris::conic {

// Hermitian PSD block variables X_b. Every scalar functional is affine:
// Σ tr(C X_b) + constant.
struct Term {
  std::size_t block = 0;
  CMat coeff;  // Hermitian
};

struct Affine {
  std::vector<Term> terms;
  double constant = 0.0;

  Affine& add(std::size_t block, CMat coeff);
  double eval(const std::vector<CMat>& x) const;
};

enum class Sense { LessEqual, Equal };

struct LinearConstraint {
  Affine lhs;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
  std::string label;
};

// X_b[i, i] (≤ | =) value
struct EntryConstraint {
  std::size_t block = 0;
  Eigen::Index index = 0;
  Sense sense = Sense::Equal;
  double value = 0.0;
  std::string label;
};

// weight * ln(arg), weight > 0.
struct LogTerm {
  double weight = 1.0;
  Affine arg;
  std::string label;
};

// [[bound, vec(X_s L)ᴴ], [vec(X_s L), I]] ⪰ 0, i.e. ‖X_s L‖_F² ≤ bound, where
// X_s is the leading sub_dim × sub_dim block of X_block.
struct FrobeniusLmi {
  std::size_t block = 0;
  Eigen::Index sub_dim = 0;
  CMat factor;  // L, sub_dim × r
  Affine bound;
  std::string label;

  double slack(const std::vector<CMat>& x) const;
  CMat materialize(const std::vector<CMat>& x) const;
};

FrobeniusLmi frobenius_quadratic_as_lmi(std::size_t block, Eigen::Index sub_dim, const CMat& factor,
                                        Affine bound, std::string label = {});

struct SdpProblem {
  std::vector<Eigen::Index> block_dims;
  std::vector<std::string> block_names;
  Affine objective;  // maximized together with the log terms
  std::vector<LogTerm> log_terms;
  std::vector<LinearConstraint> linear;
  std::vector<EntryConstraint> entries;
  std::vector<FrobeniusLmi> lmis;

  std::size_t add_block(Eigen::Index dim, std::string name = {});
  // Throws ContractViolation / DimensionError on malformed data.
  void validate() const;
  double objective_value(const std::vector<CMat>& x) const;
  // Linear-objective count used by reports: PSD blocks + linear + LMI rows.
  std::size_t constraint_count() const;
};

enum class Status { Optimal, Infeasible, NumericalFailure, MaxIterations };
std::string status_name(Status s);

struct SolveOptions {
  double gap_abs = 1e-8;
  double gap_rel = 1e-9;
  double mu = 15.0;
  int max_newton = 600;
  double feas_tol = 1e-8;
};

struct SdpSolution {
  Status status = Status::NumericalFailure;
  std::vector<CMat> blocks;
  double objective = 0.0;
  std::vector<double> linear_slack;       // rhs - lhs (0 for equalities up to rounding)
  std::vector<double> entry_slack;
  std::vector<double> lmi_slack;          // bound - ‖X_s L‖²
  std::vector<double> linear_multiplier;  // ≥ 0 for inequalities, 0 for equalities
  std::vector<double> entry_multiplier;
  std::vector<double> lmi_multiplier;
  std::vector<CMat> dual_blocks;          // X_b⁻¹ / t at the last centering point
  double gap = 0.0;                       // barrier bound on suboptimality
  int newton_steps = 0;
  std::string message;

  bool ok() const { return status == Status::Optimal; }
};

SdpSolution solve(const SdpProblem& problem, const SolveOptions& opts = {});

// Replaces each weight*ln(arg) by (weight/s) * arg with s = arg at the current
// iterate, solves the linear SDP, and moves along the segment to its solution
// with an exact line search on the true objective.
struct ReductionResult {
  SdpSolution solution;
  std::vector<double> objective_trace;  // true objective after each pass
  std::vector<SdpProblem> linearized;
  int iterations = 0;
  bool converged = false;
};
ReductionResult reduce_log_terms(const SdpProblem& problem, const SolveOptions& opts = {},
                                 int max_iter = 100, double tol = 1e-9,
                                 const std::optional<std::vector<CMat>>& start = std::nullopt);

// Plain-text problem description (blocks, objective, constraints, dense LMIs).
std::string dump(const SdpProblem& problem);

}  // namespace aris::conic
