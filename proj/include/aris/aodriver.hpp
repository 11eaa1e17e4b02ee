#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "aris/phistep.hpp"
#include "aris/scenario.hpp"
#include "aris/sysmodel.hpp"
#include "aris/wstep.hpp"

namespace aris {

struct IterationRecord {
  int iteration = 0;  // 0 = initial point
  double secrecy = 0.0;  // nat/s/Hz
  double radar_sinr = 0.0;
  double radar_sinr_db = 0.0;
  double bs_power = 0.0;
  double ris_power = 0.0;
  int inner_w = 0, inner_phi = 0;
  std::vector<std::string> w_status, phi_status;
  double wall_s = 0.0;
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  // One JSON object per line.
  std::string to_jsonl() const;
  std::vector<double> secrecy() const;
};

enum class Termination { Converged, MaxIterations, SensingInfeasible };
std::string termination_name(Termination t);

struct AoResult {
  Scheme scheme = Scheme::Active;
  Precoder w;
  RisCoeffs phi;
  IterationTrace trace;
  Termination reason = Termination::MaxIterations;
  double initial_radar_sinr = 0.0;
  int outer_iterations = 0;

  bool converged() const { return reason == Termination::Converged; }
  double secrecy() const { return trace.records.empty() ? 0.0 : trace.records.back().secrecy; }
};

struct AoFailure : std::runtime_error {
  AoFailure(const std::string& what, IterationTrace partial)
      : std::runtime_error(what), trace(std::move(partial)) {}
  IterationTrace trace;
};

struct InitPoint {
  Precoder w;
  RisCoeffs phi;
  bool sensing_infeasible = false;
  int draws = 1;
};

// Random-phase Φ⁰ at the largest common amplitude within caps and P_RIS;
// W⁰: MRT toward h̄_U at P₀/2 plus identity sensing columns sharing P₀/2.
InitPoint initialize(const ChannelSet& ch, const ScenarioConfig& cfg, Scheme scheme, Rng& rng);

StepLimits limits_for(const ScenarioConfig& cfg, Scheme scheme);

AoResult run(const ChannelSet& ch, const ScenarioConfig& cfg, Scheme scheme, Rng& rng);

struct ComplexityEstimate {
  double j1 = 0, k1 = 0, n1 = 0, o1 = 0;
  double j2 = 0, k2 = 0, n2 = 0, m2 = 0, a2 = 0, o2 = 0;
  double total = 0;  // t_AO (t₁ o₁ + t₂ o₂)
};
ComplexityEstimate complexity_estimate(int m, int n, int t_ao, int t1 = 1, int t2 = 1);

}  // namespace aris
