#pragma once

#include <vector>

#include "aris/conic.hpp"
#include "aris/scenario.hpp"
#include "aris/sysmodel.hpp"
#include "aris/wstep.hpp"

namespace aris {

// Rate of node i as ln tr(H̄_i1 V̄) − ln tr(H̄_i2 V̄), V̄ = [v; 1][v; 1]ᴴ, v = φ*.
struct RateMatrices {
  CMat h1, h2;  // (N+1)×(N+1)
};
RateMatrices rate_matrices(const ChannelSet& ch, const Precoder& w, const NoiseParams& noise, Node node);

// Lifted V̄ for given coefficients.
CMat lift_phi(const RisCoeffs& phi);
// v̂ = vec(v vᴴ)
CVec vhat(const RisCoeffs& phi);

// 2Re tr(K Lᴴ) ≤ ‖L_l‖/‖K_l‖ ‖K‖² + ‖K_l‖/‖L_l‖ ‖L‖².
double lemma3_bound(const CMat& k, const CMat& l, const CMat& k_l, const CMat& l_l);

// Pieces of the radar-SINR minorizer built at (W, Φ_l):
//   ξ_R ≥ 2Re(p₁ᴴv̂) − p₂ᴴv̂ − v̂ᴴQ₁v̂ − v̂ᴴQ₂v̂ − α₂ = −tr(V M₁ V) + tr(N₁ V) − α₂.
struct SinrQuadratic {
  CMat e;       // J_l⁻¹ A_l R A_lᴴ J_l⁻¹ (M×M)
  CMat f;       // H E Hᴴ (N×N)
  CMat xi1;     // (σ1² + σ2²) I + ρ² H R Hᴴ
  CVec p1, p2;  // N²
  double beta2 = 1.0;
  CMat m11, m12, m1;  // N×N
  CMat n1;            // N×N Hermitian
  double alpha2 = 0.0;
  double e2 = 0.0;    // α₂ + γ_r
};
SinrQuadratic assemble_sinr_quadratic(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi_l,
                                      const NoiseParams& noise, double gamma_r);
// Dense σ1² diag(vecG)ᴴ (I ⊗ F) diag(vecG); N² × N², for checks on small N.
CMat quartic_q1(const ChannelSet& ch, const CMat& f, double sigma_v1);
// Dense (σ1²/β²) diag(vecG)ᴴ diag(vecG).
CMat quartic_q2(const ChannelSet& ch, double sigma_v1, double beta2);
double sinr_minorizer(const SinrQuadratic& q, const RisCoeffs& phi);

// P_A1 + P_A2 = tr(V M₂ V) + tr(N₂ V).
struct PowerQuadratic {
  CMat xi2, xi3;  // N×N
  CMat m2, n2;
};
PowerQuadratic ris_power_quadratic(const ChannelSet& ch, const Precoder& w, const NoiseParams& noise);
double ris_power_quadratic_value(const PowerQuadratic& q, const RisCoeffs& phi);

struct PhiStepContext {
  ChannelSet ch;
  Precoder w;
  NoiseParams noise;
  StepLimits limits;
  Scheme scheme = Scheme::Active;
  std::vector<double> caps;  // η_i
  RisCoeffs anchor;

  RateMatrices user, eve;
  SinrQuadratic sinr;
  PowerQuadratic power;
  CMat l1, l2;  // M₁ = L₁L₁ᴴ, M₂ = L₂L₂ᴴ
};

PhiStepContext build_phi_context(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi_l,
                                 const NoiseParams& noise, const StepLimits& limits, Scheme scheme,
                                 const std::vector<double>& caps);
// Objective includes constants that make it equal R_U − R_E at the anchor.
conic::SdpProblem build_phi_sdp(const PhiStepContext& ctx);
double phi_surrogate(const PhiStepContext& ctx, const CMat& vbar);
bool phi_feasible(const PhiStepContext& ctx, const RisCoeffs& phi, double tol = 1e-6);

RisCoeffs recover_rank1_phi(const conic::SdpSolution& sol, int trials, const PhiStepContext& ctx, Rng& rng);

struct PhiStepResult {
  RisCoeffs phi;
  int iterations = 0;
  std::vector<double> objective;
  std::vector<conic::Status> statuses;
  bool sensing_infeasible = false;
  bool fallback = false;
};

PhiStepResult solve_phistep(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi_l,
                            const NoiseParams& noise, const StepLimits& limits, Scheme scheme,
                            const std::vector<double>& caps, const AlgoConfig& algo, Rng& rng);

}  // namespace aris
