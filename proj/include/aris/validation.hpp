#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aris/phistep.hpp"
#include "aris/scenario.hpp"
#include "aris/sysmodel.hpp"

// Brute-force oracles and the property suites built on them. Everything here
// recomputes quantities from their defining traces instead of going through
// the vectorized forms the optimizer uses.
namespace aris::validation {

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Unit-scale random instance: CN(0,1) channels, G = γ a(θ) a(θ)ᴴ with random
// γ and θ, noise powers in [0.05, 0.5].
struct Instance {
  ChannelSet ch;
  NoiseParams noise;
  Precoder w;
  RisCoeffs phi;
  CVec a;  // steering vector behind G
};
Instance random_instance(int m, int n, Rng& rng, bool active = true);

CMat random_pd(int n, Rng& rng);
CMat random_matrix(int r, int c, Rng& rng);
RisCoeffs random_phi(int n, double max_amp, Rng& rng);

// σ1² tr(E Hᴴ Φᴴ G Φ Φᴴ Gᴴ Φ H)
double quartic_trace(const ChannelSet& ch, const RisCoeffs& phi, const CMat& e, double sigma_v1);
// 2σ1² Re tr(E Hᴴ Φᴴ G Φ Φᴴ H)
double cubic_trace(const ChannelSet& ch, const RisCoeffs& phi, const CMat& e, double sigma_v1);
// tr(E (ρ² HᴴΦH R HᴴΦᴴH + σ1² HᴴΦΦᴴH + σ2² HᴴΦᴴΦH))
double quadratic_trace(const ChannelSet& ch, const RisCoeffs& phi, const CMat& e, const CMat& r,
                       const NoiseParams& noise);
// tr(A(Φ) R A_lᴴ J_l⁻¹), A(Φ) = HᴴΦᴴGΦH
cdouble linear_trace(const ChannelSet& ch, const RisCoeffs& phi, const RisCoeffs& phi_l, const CMat& r,
                     const NoiseParams& noise);
// diag(vec G)ᴴ (Ξ₃ᵀ ⊗ I) diag(vec G), the dense quartic of the RIS power.
CMat quartic_q3(const ChannelSet& ch, const CMat& xi3);

// Ratio σ₂/σ₁ (0 for a rank-1 or zero matrix).
double rank1_defect(const CMat& m);

// Maximizes f over |φ_i| ≤ cap_i (N = 2) subject to `feasible`, by a
// polar grid followed by pattern-search refinement.
struct GridResult {
  RisCoeffs phi;
  double value = 0.0;
};
GridResult grid_search_n2(const std::function<double(const RisCoeffs&)>& f,
                          const std::function<bool(const RisCoeffs&)>& feasible, double cap0, double cap1,
                          bool unit_modulus);

SuiteResult lemma1_suite(std::uint64_t seed, int instances = 1000);
SuiteResult lemma3_suite(std::uint64_t seed, int instances = 1000);
SuiteResult vectorization_suite(std::uint64_t seed, int instances = 100);
SuiteResult structure_suite(std::uint64_t seed, int instances = 20);
SuiteResult surrogate_suite(std::uint64_t seed, int points = 100);
SuiteResult sdp_oracle_suite(std::uint64_t seed);

std::vector<SuiteResult> run_all(std::uint64_t seed = 1);

}  // namespace aris::validation
