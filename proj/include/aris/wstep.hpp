#pragma once

#include <stdexcept>
#include <vector>

#include "aris/conic.hpp"
#include "aris/scenario.hpp"
#include "aris/sysmodel.hpp"

namespace aris {

struct RecoveryFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 2Re tr(X_kᴴ J_k⁻¹ X) − tr(J_k⁻¹ X_k X_kᴴ J_k⁻¹ J) ≤ tr(Xᴴ J⁻¹ X).
double lemma1_bound(const CMat& x, const CMat& j, const CMat& xk, const CMat& jk);

// What the subproblem must respect besides the BS budget.
struct StepLimits {
  double p0 = 1.0;
  double p_ris = 0.05;
  double gamma_r = 0.0;
  bool sensing = true;    // radar SINR ≥ γ_r
  bool ris_power = true;  // amplifier power budget; active RIS only
};

struct WStepContext {
  // Inputs the surrogate was built from.
  ChannelSet ch;
  RisCoeffs phi;
  NoiseParams noise;
  StepLimits limits;
  Precoder anchor;

  CVec hbar_u, hbar_e;  // M
  CMat t;               // M×M, tr(T R) = P_A1 + P_A2 − Φ-only noise terms
  double pbar_ris = 0.0;
  CMat h_u, h_e, tbar;  // (M+1)×(M+1)
  CMat a, b, j_k, e_w;  // radar anchors
  CMat radar_noise;     // N
  double alpha1 = 0.0, e1 = 0.0;
  std::vector<CMat> h_i;  // (M+1)×(M+1), one per column of W
};

WStepContext build_context(const ChannelSet& ch, const Precoder& wk, const RisCoeffs& phi,
                           const NoiseParams& noise, const StepLimits& limits);

// Lifted blocks W_i = [w_i; 1][w_i; 1]ᴴ, sensing columns first.
std::vector<CMat> lift(const Precoder& w);
// Value of Σ tr(H_i W_i) + e₁ (linearized SINR constraint, feasible when ≤ 0).
double sinr_constraint_value(const WStepContext& ctx, const std::vector<CMat>& blocks);

// Objective includes the constant that makes it equal C(W_c) at the anchor.
conic::SdpProblem build_sdp(const WStepContext& ctx);
// ln tr(H_U W_c) − tr(H_E W_c)/s_k + 1 − ln s_k
double wstep_surrogate(const WStepContext& ctx, const CMat& wc_lifted);
// C(W_c) = ln tr(H_U W_c) − ln tr(H_E W_c)
double wstep_true_objective(const WStepContext& ctx, const CMat& wc_lifted);

// Candidate quality used by recovery and the monotone fallback.
double secrecy_objective(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi,
                         const NoiseParams& noise);
// Largest common scale c with c²·tr(R) ≤ P₀ and c²·tr(T R) ≤ P̄_RIS.
double wstep_scale(const WStepContext& ctx, const Precoder& w);
bool wstep_feasible(const WStepContext& ctx, const Precoder& w, double tol = 1e-9);

Precoder recover_rank1(const conic::SdpSolution& sol, int trials, const WStepContext& ctx, Rng& rng);

struct WStepResult {
  Precoder w;
  int iterations = 0;
  std::vector<double> objective;  // true R_U − R_E after each accepted iterate
  std::vector<conic::Status> statuses;
  bool sensing_infeasible = false;
  bool fallback = false;  // last candidate was rejected for regressing
};

WStepResult solve_wstep(const ChannelSet& ch, const Precoder& wk, const RisCoeffs& phi,
                        const NoiseParams& noise, const StepLimits& limits, const AlgoConfig& algo,
                        Rng& rng);

}  // namespace aris
