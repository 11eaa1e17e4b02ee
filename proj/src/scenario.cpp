#include "aris/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace aris {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLightSpeed = 299792458.0;

Point take_point(KeyValueFile& kv, const std::string& key) {
  const auto v = kv.take_doubles(key);
  if (v.size() != 2) throw ConfigError(kv.origin() + ": key `" + key + "`: expected `x y`");
  return {v[0], v[1]};
}

void fmt_kv(std::ostringstream& os, const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << key << " = " << buf << "\n";
}

void fmt_point(std::ostringstream& os, const char* key, Point p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g %.17g", p.x, p.y);
  os << key << " = " << buf << "\n";
}

}  // namespace

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Active: return "active";
    case Scheme::Passive: return "passive";
    case Scheme::NoRis: return "noris";
  }
  return "?";
}

Scheme parse_scheme(const std::string& s) {
  if (s == "active") return Scheme::Active;
  if (s == "passive") return Scheme::Passive;
  if (s == "noris" || s == "no-ris" || s == "none") return Scheme::NoRis;
  throw ConfigError("unknown scheme `" + s + "` (active, passive, noris)");
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
double dbm_to_watt(double dbm) { return 1e-3 * db_to_linear(dbm); }

double ScenarioConfig::wavelength() const { return kLightSpeed / carrier_hz; }

double ScenarioConfig::noise_power() const {
  return dbm_to_watt(noise_density_dbm_hz) * bandwidth_hz;
}

std::string ScenarioConfig::canonical() const {
  std::ostringstream os;
  fmt_kv(os, "antennas", antennas);
  fmt_kv(os, "ris_elements", ris_elements);
  fmt_point(os, "bs_position", bs);
  fmt_point(os, "ris_position", ris);
  fmt_point(os, "user_position", user);
  fmt_point(os, "eve_position", eve);
  fmt_point(os, "target_position", target);
  fmt_kv(os, "carrier_hz", carrier_hz);
  fmt_kv(os, "spacing_ratio", spacing_ratio);
  fmt_kv(os, "rician_factor", rician_factor);
  fmt_kv(os, "pathloss_exp_rayleigh", pathloss_exp_rayleigh);
  fmt_kv(os, "pathloss_exp_rician", pathloss_exp_rician);
  fmt_kv(os, "pathloss_ref_db", pathloss_ref_db);
  fmt_kv(os, "noise_density_dbm_hz", noise_density_dbm_hz);
  fmt_kv(os, "bandwidth_hz", bandwidth_hz);
  fmt_kv(os, "bs_power_w", bs_power_w);
  fmt_kv(os, "ris_power_w", ris_power_w);
  os << "amp_caps =";
  for (double c : amp_caps) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " %.17g", c);
    os << buf;
  }
  os << "\n";
  fmt_kv(os, "si_coeff", si_coeff);
  fmt_kv(os, "rcs_m2", rcs_m2);
  fmt_kv(os, "sinr_threshold", sinr_threshold);
  fmt_kv(os, "switch_power_w", switch_power_w);
  fmt_kv(os, "dc_power_w", dc_power_w);
  os << "radar_gamma_random_phase = " << (gamma_random_phase ? "true" : "false") << "\n";
  fmt_kv(os, "max_outer", algo.max_outer);
  fmt_kv(os, "max_inner_w", algo.max_inner_w);
  fmt_kv(os, "max_inner_phi", algo.max_inner_phi);
  fmt_kv(os, "outer_tol", algo.outer_tol);
  fmt_kv(os, "inner_tol", algo.inner_tol);
  fmt_kv(os, "randomization_trials", algo.randomization_trials);
  fmt_kv(os, "init_retries", algo.init_retries);
  return os.str();
}

std::uint64_t ScenarioConfig::hash() const {
  const std::string s = canonical();
  return fnv1a(s.data(), s.size());
}

void set_amp_gain_db(ScenarioConfig& cfg, double gain_db) {
  cfg.amp_caps.assign(std::size_t(std::max(cfg.ris_elements, 0)),
                      std::pow(10.0, gain_db / 10.0));
}

ScenarioConfig default_scenario() {
  ScenarioConfig cfg;
  set_amp_gain_db(cfg, 15.0);
  return cfg;
}

ScenarioConfig scenario_from_kv(KeyValueFile& kv, bool finish) {
  ScenarioConfig c = default_scenario();
  auto real = [&](const char* key, double& dst) {
    if (kv.has(key)) dst = kv.take_double(key);
  };
  auto integer = [&](const char* key, int& dst) {
    if (kv.has(key)) dst = int(kv.take_int(key));
  };
  auto point = [&](const char* key, Point& dst) {
    if (kv.has(key)) dst = take_point(kv, key);
  };
  integer("antennas", c.antennas);
  integer("ris_elements", c.ris_elements);
  point("bs_position", c.bs);
  point("ris_position", c.ris);
  point("user_position", c.user);
  point("eve_position", c.eve);
  point("target_position", c.target);
  real("carrier_hz", c.carrier_hz);
  real("spacing_ratio", c.spacing_ratio);
  real("rician_factor", c.rician_factor);
  real("pathloss_exp_rayleigh", c.pathloss_exp_rayleigh);
  real("pathloss_exp_rician", c.pathloss_exp_rician);
  real("pathloss_ref_db", c.pathloss_ref_db);
  real("noise_density_dbm_hz", c.noise_density_dbm_hz);
  real("bandwidth_hz", c.bandwidth_hz);
  real("bs_power_w", c.bs_power_w);
  real("ris_power_w", c.ris_power_w);
  real("si_coeff", c.si_coeff);
  real("rcs_m2", c.rcs_m2);
  if (kv.has("sinr_threshold_db")) c.sinr_threshold = db_to_linear(kv.take_double("sinr_threshold_db"));
  if (kv.has("sinr_threshold")) c.sinr_threshold = kv.take_double("sinr_threshold");
  if (kv.has("switch_power_dbm")) c.switch_power_w = dbm_to_watt(kv.take_double("switch_power_dbm"));
  if (kv.has("dc_power_dbm")) c.dc_power_w = dbm_to_watt(kv.take_double("dc_power_dbm"));
  real("switch_power_w", c.switch_power_w);
  real("dc_power_w", c.dc_power_w);
  if (kv.has("radar_gamma_random_phase")) c.gamma_random_phase = kv.take_bool("radar_gamma_random_phase");

  set_amp_gain_db(c, 15.0);
  if (kv.has("amp_gain_db")) set_amp_gain_db(c, kv.take_double("amp_gain_db"));
  if (kv.has("amp_caps")) c.amp_caps = kv.take_doubles("amp_caps");

  integer("max_outer", c.algo.max_outer);
  integer("max_inner_w", c.algo.max_inner_w);
  integer("max_inner_phi", c.algo.max_inner_phi);
  real("outer_tol", c.algo.outer_tol);
  real("inner_tol", c.algo.inner_tol);
  integer("randomization_trials", c.algo.randomization_trials);
  integer("init_retries", c.algo.init_retries);

  if (finish) kv.finish();
  validate(c);
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  KeyValueFile kv = KeyValueFile::load(path);
  return scenario_from_kv(kv);
}

void validate(const ScenarioConfig& c) {
  auto req = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid scenario: " + what);
  };
  req(c.antennas >= 1, "antennas must be >= 1");
  req(c.ris_elements >= 1, "ris_elements must be >= 1");
  req(c.carrier_hz > 0, "carrier_hz must be positive");
  req(c.spacing_ratio > 0, "spacing_ratio must be positive");
  req(c.rician_factor >= 0, "rician_factor must be >= 0");
  req(c.bandwidth_hz > 0, "bandwidth_hz must be positive");
  req(c.bs_power_w > 0, "bs_power_w must be positive");
  req(c.ris_power_w >= 0, "ris_power_w must be >= 0");
  req(c.si_coeff >= 0, "si_coeff must be >= 0");
  req(c.rcs_m2 > 0, "rcs_m2 must be positive");
  req(c.sinr_threshold >= 0, "sinr_threshold must be >= 0");
  req(c.switch_power_w >= 0 && c.dc_power_w >= 0, "hardware powers must be >= 0");
  req(int(c.amp_caps.size()) == c.ris_elements, "amp_caps needs one entry per RIS element");
  for (double a : c.amp_caps) req(a >= 0, "amp_caps must be >= 0");
  const Point pts[] = {c.bs, c.ris, c.user, c.eve, c.target};
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      req(distance(pts[i], pts[j]) > 0, "node positions must be distinct");
  req(c.algo.max_outer >= 1 && c.algo.max_inner_w >= 1 && c.algo.max_inner_phi >= 1,
      "iteration limits must be >= 1");
  req(c.algo.randomization_trials >= 0, "randomization_trials must be >= 0");
  req(c.algo.outer_tol > 0 && c.algo.inner_tol > 0, "tolerances must be positive");
}

std::uint64_t Rng::mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Rng Rng::substream(std::uint64_t a, std::uint64_t b) const {
  return Rng(mix(mix(seed_ ^ mix(a + 1)) ^ mix(b + 0x51ed270b27u)));
}

double Rng::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
double Rng::normal() { return gauss_(eng_); }

cdouble Rng::cnormal() {
  const double re = gauss_(eng_);
  const double im = gauss_(eng_);
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

CVec Rng::cnormal_vec(Eigen::Index n) {
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cnormal();
  return v;
}

CMat Rng::cnormal_mat(Eigen::Index r, Eigen::Index c) {
  CMat m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = cnormal();
  return m;
}

CVec steering_vector(int n, double spacing_ratio, double theta) {
  CVec a(n);
  const double k = 2.0 * kPi * spacing_ratio * std::sin(theta);
  for (int i = 0; i < n; ++i) a(i) = std::polar(1.0, -k * i);
  return a;
}

double path_loss_linear(double dist, double exponent, double ref_db) {
  if (!(dist > 0.0)) throw std::domain_error("path loss: distance must be positive");
  return db_to_linear(ref_db) * std::pow(dist, -exponent);
}

double radar_path_gain(double wavelength, double rcs, double range) {
  if (!(range > 0.0)) throw std::domain_error("radar path gain: range must be positive");
  const double c = 4.0 * kPi;
  return std::sqrt(wavelength * wavelength * rcs / (c * c * c * std::pow(range, 4)));
}

double ris_angle(const ScenarioConfig& cfg, Point p) {
  return std::atan2(-(p.x - cfg.ris.x), -(p.y - cfg.ris.y));
}

double bs_angle(const ScenarioConfig& cfg, Point p) {
  return std::atan2(p.y - cfg.bs.y, p.x - cfg.bs.x);
}

CMat rician_channel(Rng& rng, const CVec& a_rx, const CVec& a_tx, double kappa) {
  if (!(kappa >= 0.0)) throw std::domain_error("rician_channel: kappa must be >= 0");
  const double los = std::sqrt(kappa / (kappa + 1.0)), nlos = std::sqrt(1.0 / (kappa + 1.0));
  return los * a_rx * a_tx.adjoint() + nlos * rng.cnormal_mat(a_rx.size(), a_tx.size());
}

std::uint64_t ChannelSet::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const cdouble* p, Eigen::Index n) {
    h = fnv1a(p, sizeof(cdouble) * std::size_t(n), h);
  };
  mix(h_br.data(), h_br.size());
  mix(h_bu.data(), h_bu.size());
  mix(h_be.data(), h_be.size());
  mix(h_ru.data(), h_ru.size());
  mix(h_re.data(), h_re.size());
  mix(g.data(), g.size());
  return h;
}

ChannelSet generate_channels(const ScenarioConfig& cfg, Rng& rng) {
  validate(cfg);
  const int m = cfg.antennas, n = cfg.ris_elements;
  const double k = cfg.rician_factor;
  const double los = std::sqrt(k / (k + 1.0)), nlos = std::sqrt(1.0 / (k + 1.0));
  const double d = cfg.spacing_ratio;

  ChannelSet ch;
  ch.theta_user = ris_angle(cfg, cfg.user);
  ch.theta_eve = ris_angle(cfg, cfg.eve);
  ch.theta_target = ris_angle(cfg, cfg.target);

  const double pl_br = path_loss_linear(distance(cfg.bs, cfg.ris), cfg.pathloss_exp_rician, cfg.pathloss_ref_db);
  ch.h_br = std::sqrt(pl_br) * rician_channel(rng, steering_vector(n, d, ris_angle(cfg, cfg.bs)),
                                              steering_vector(m, d, bs_angle(cfg, cfg.ris)), k);

  auto ris_to = [&](Point p, double theta) {
    const double pl = path_loss_linear(distance(cfg.ris, p), cfg.pathloss_exp_rician, cfg.pathloss_ref_db);
    return CVec(std::sqrt(pl) * (los * steering_vector(n, d, theta) + nlos * rng.cnormal_vec(n)));
  };
  ch.h_ru = ris_to(cfg.user, ch.theta_user);
  ch.h_re = ris_to(cfg.eve, ch.theta_eve);

  auto bs_to = [&](Point p) {
    const double pl = path_loss_linear(distance(cfg.bs, p), cfg.pathloss_exp_rayleigh, cfg.pathloss_ref_db);
    return CVec(std::sqrt(pl) * rng.cnormal_vec(m));
  };
  ch.h_bu = bs_to(cfg.user);
  ch.h_be = bs_to(cfg.eve);

  const double mag = radar_path_gain(cfg.wavelength(), cfg.rcs_m2, distance(cfg.ris, cfg.target));
  const double phase = cfg.gamma_random_phase ? 2.0 * kPi * rng.uniform() : 0.0;
  ch.gamma = std::polar(mag, phase);
  const CVec at = steering_vector(n, d, ch.theta_target);
  ch.g = ch.gamma * at * at.adjoint();
  return ch;
}

}  // namespace aris
