#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "aris/config.hpp"
#include "aris/matkit.hpp"

namespace aris {

enum class Scheme { Active, Passive, NoRis };
std::string scheme_name(Scheme s);
Scheme parse_scheme(const std::string& s);

struct Point {
  double x = 0.0, y = 0.0;
};
double distance(Point a, Point b);

struct AlgoConfig {
  int max_outer = 30;
  int max_inner_w = 20;
  int max_inner_phi = 20;
  double outer_tol = 1e-3;
  double inner_tol = 1e-6;
  int randomization_trials = 50;
  int init_retries = 20;
};

struct ScenarioConfig {
  int antennas = 4;       // M
  int ris_elements = 12;  // N

  Point bs{0.0, 0.0};
  Point ris{106.0, 60.0};
  Point user{90.0, 40.0};
  Point eve{118.5, 38.35};
  Point target{99.16, 41.21};

  double carrier_hz = 2.7e9;
  double spacing_ratio = 0.5;  // d / λ
  double rician_factor = 3.0;
  double pathloss_exp_rayleigh = 3.5;
  double pathloss_exp_rician = 2.2;
  double pathloss_ref_db = -30.0;

  double noise_density_dbm_hz = -174.0;
  double bandwidth_hz = 10e6;

  double bs_power_w = 1.0;
  double ris_power_w = 0.05;
  std::vector<double> amp_caps;  // per-element amplitude caps η_i
  double si_coeff = 0.1;         // ρ
  double rcs_m2 = 1.0;
  double sinr_threshold = 1e-8;  // γ_r, linear
  double switch_power_w = 3.1622776601683794e-4;
  double dc_power_w = 1e-4;
  bool gamma_random_phase = false;

  AlgoConfig algo;

  double wavelength() const;
  double noise_power() const;
  // Canonical text form; hashing this gives the config hash.
  std::string canonical() const;
  std::uint64_t hash() const;
};

ScenarioConfig default_scenario();
// Reads every key it knows and rejects the rest.
ScenarioConfig scenario_from_kv(KeyValueFile& kv, bool finish = true);
ScenarioConfig load_scenario(const std::string& path);
// Throws ConfigError.
void validate(const ScenarioConfig& cfg);
// Sets every amplitude cap η_i = 10^(dB/10).
void set_amp_gain_db(ScenarioConfig& cfg, double gain_db);

double db_to_linear(double db);
double linear_to_db(double lin);
double dbm_to_watt(double dbm);

// Deterministic generator; substreams are hashed from (seed, indices).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(mix(seed)) {}
  Rng substream(std::uint64_t a, std::uint64_t b = 0) const;
  std::uint64_t seed() const { return seed_; }

  double uniform();  // [0, 1)
  double normal();
  cdouble cnormal();  // CN(0, 1)
  CVec cnormal_vec(Eigen::Index n);
  CMat cnormal_mat(Eigen::Index r, Eigen::Index c);

 private:
  static std::uint64_t mix(std::uint64_t z);
  std::uint64_t seed_;
  std::mt19937_64 eng_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

// a(θ)_k = exp(-j 2π (d/λ) k sin θ), k = 0..n-1.
CVec steering_vector(int n, double spacing_ratio, double theta_rad);
// 10^(PL₀/10) d^(-α); throws std::domain_error for d <= 0.
double path_loss_linear(double dist, double exponent, double ref_db);
// |γ| = sqrt(λ² Δ / ((4π)³ R⁴)).
double radar_path_gain(double wavelength, double rcs, double range);

// Angle of `p` seen from the RIS array (along x, facing -y; positive toward -x).
double ris_angle(const ScenarioConfig& cfg, Point p);
// Angle of `p` seen from the BS array (along y, facing +x).
double bs_angle(const ScenarioConfig& cfg, Point p);

struct ChannelSet {
  CMat h_br;  // N×M
  CVec h_bu;  // M
  CVec h_be;  // M
  CVec h_ru;  // N
  CVec h_re;  // N
  CMat g;     // N×N, γ a aᴴ
  cdouble gamma;
  double theta_user = 0.0, theta_eve = 0.0, theta_target = 0.0;  // RIS-side, rad

  int antennas() const { return int(h_br.cols()); }
  int elements() const { return int(h_br.rows()); }
  std::uint64_t hash() const;
};

// sqrt(κ/(κ+1)) a_rx a_txᴴ + sqrt(1/(κ+1)) H_NLoS, unit-variance CN entries.
CMat rician_channel(Rng& rng, const CVec& a_rx, const CVec& a_tx, double kappa);

ChannelSet generate_channels(const ScenarioConfig& cfg, Rng& rng);

}  // namespace aris
