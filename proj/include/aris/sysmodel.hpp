#pragma once

#include <string>
#include <vector>

#include "aris/matkit.hpp"
#include "aris/scenario.hpp"

namespace aris {

struct NoiseParams {
  double user = 0.0, eve = 0.0, radar = 0.0;
  double v1 = 0.0, v2 = 0.0;  // RIS amplifier noise (zero for passive)
  double rho = 0.0;           // SI coefficient
};
NoiseParams noise_for(const ScenarioConfig& cfg, Scheme scheme);

// M×(M+1): sensing columns w_1..w_M, then the communication column.
struct Precoder {
  CMat w;
  CMat covariance() const { return w * w.adjoint(); }
  CVec comm() const { return w.col(w.cols() - 1); }
  int antennas() const { return int(w.rows()); }
};

// Reflection coefficients φ_i; Φ = diag(φ).
struct RisCoeffs {
  CVec phi;
  CMat diag() const { return phi.asDiagonal(); }
  int elements() const { return int(phi.size()); }
};

enum class Node { User, Eve };

double receiver_snr(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi,
                    const NoiseParams& noise, Node node);

struct Rates {
  double user = 0.0, eve = 0.0;
  double secrecy() const { return user - eve > 0.0 ? user - eve : 0.0; }
  double difference() const { return user - eve; }
};
Rates rates(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi, const NoiseParams& noise);
// max(R_U - R_E, 0) in nat/s/Hz.
double secrecy_rate(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi,
                    const NoiseParams& noise);

struct RadarOperators {
  CMat a, b, c, d;  // A, B (M×M); C, D (M×N)
  CMat noise;       // N = σ1² CCᴴ + σ2² DDᴴ + σ_R² I
};
RadarOperators radar_operators(const ChannelSet& ch, const RisCoeffs& phi, const NoiseParams& noise);
// J = B R Bᴴ + N
CMat radar_interference(const RadarOperators& ops, const CMat& r);
// tr(A R Aᴴ J⁻¹) via a Hermitian solve.
double radar_sinr(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi,
                  const NoiseParams& noise);
double radar_sinr_from_ops(const RadarOperators& ops, const CMat& r);

struct RisPower {
  double pa1 = 0.0, pa2 = 0.0;
  double total() const { return pa1 + pa2; }
};
RisPower ris_power(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi,
                   const NoiseParams& noise);
double bs_power(const Precoder& w);

// P(θ) = a(θ)ᴴ Φ H R Hᴴ Φᴴ a(θ) for each θ (rad).
std::vector<double> beampattern(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi,
                                const std::vector<double>& thetas, double spacing_ratio);

struct FeasibilityCheck {
  std::string name;
  double value = 0.0, limit = 0.0;
  double slack = 0.0;  // relative, >= -tol means satisfied
  bool ok = true;
};
struct FeasibilityReport {
  std::vector<FeasibilityCheck> checks;
  bool ok() const;
  std::string summary() const;
};
// BS power, RIS power (active), amplitude caps / unit modulus / Φ = 0, and
// ξ_R >= γ_r when `sensing` is set. `p0` overrides cfg.bs_power_w when > 0.
FeasibilityReport check_feasibility(const Precoder& w, const RisCoeffs& phi, const ChannelSet& ch,
                                    const ScenarioConfig& cfg, Scheme scheme,
                                    bool sensing = true, double tol = 1e-6, double p0 = -1.0);

}  // namespace aris
