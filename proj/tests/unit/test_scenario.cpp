#include <doctest.h>

#include <cmath>
#include <numbers>

#include "aris/scenario.hpp"

using namespace aris;

TEST_CASE("steering vector") {
  const CVec a0 = steering_vector(5, 0.5, 0.0);
  CHECK((a0 - CVec::Ones(5)).norm() < 1e-15);
  const CVec a1 = steering_vector(2, 0.5, std::numbers::pi / 2);
  CHECK(std::abs(a1(0) - cdouble(1.0)) < 1e-15);
  CHECK(std::abs(a1(1) - cdouble(-1.0)) < 1e-15);
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    const CVec a = steering_vector(8, 0.5, 3.0 * (rng.uniform() - 0.5));
    CHECK(a.squaredNorm() == doctest::Approx(8.0).epsilon(1e-14));
  }
}

TEST_CASE("path loss") {
  CHECK(linear_to_db(path_loss_linear(1.0, 2.2, -30.0)) == doctest::Approx(-30.0));
  CHECK(linear_to_db(path_loss_linear(100.0, 2.2, -30.0)) == doctest::Approx(-74.0));
  CHECK(linear_to_db(path_loss_linear(10.0, 3.5, -30.0)) == doctest::Approx(-65.0));
  CHECK_THROWS_AS(path_loss_linear(0.0, 2.2, -30.0), std::domain_error);
  // Monotone in distance.
  double prev = path_loss_linear(0.5, 3.5, -30.0);
  for (double d = 1.0; d < 500.0; d *= 1.7) {
    const double pl = path_loss_linear(d, 3.5, -30.0);
    CHECK(pl <= prev);
    prev = pl;
  }
}

TEST_CASE("radar path gain") {
  const double lambda = 299792458.0 / 2.7e9;
  CHECK(lambda == doctest::Approx(0.11103).epsilon(1e-4));
  CHECK(radar_path_gain(lambda, 1.0, 10.0) == doctest::Approx(2.49e-5).epsilon(2e-3));
  CHECK(radar_path_gain(lambda, 0.0, 10.0) == 0.0);
  CHECK(radar_path_gain(lambda, 1.0, 20.0) == doctest::Approx(radar_path_gain(lambda, 1.0, 10.0) / 4.0));
  CHECK_THROWS_AS(radar_path_gain(lambda, 1.0, 0.0), std::domain_error);
}

TEST_CASE("rician channel") {
  Rng rng(32);
  const CVec ar = steering_vector(6, 0.5, 0.3), at = steering_vector(4, 0.5, -0.2);
  const CMat los = rician_channel(rng, ar, at, 1e12);
  const CMat ref = ar * at.adjoint();
  CHECK((los - ref).norm() <= 1e-5 * ref.norm());

  double sum = 0.0, sum2 = 0.0;
  const int draws = 10000;
  for (int t = 0; t < draws; ++t) {
    const CMat h = rician_channel(rng, CVec::Ones(1), CVec::Ones(1), 0.0);
    sum += std::norm(h(0, 0));
  }
  CHECK(sum / draws == doctest::Approx(1.0).epsilon(0.05));
  for (int t = 0; t < draws; ++t) sum2 += rician_channel(rng, ar, at, 3.0).squaredNorm();
  CHECK(sum2 / draws == doctest::Approx(24.0).epsilon(0.05));
  CHECK_THROWS_AS(rician_channel(rng, ar, at, -1.0), std::domain_error);
}

TEST_CASE("channel generation") {
  const ScenarioConfig cfg = default_scenario();
  Rng a(5), b(5);
  const ChannelSet c1 = generate_channels(cfg, a), c2 = generate_channels(cfg, b);
  CHECK(c1.hash() == c2.hash());
  CHECK(c1.h_br.rows() == cfg.ris_elements);
  CHECK(c1.h_br.cols() == cfg.antennas);

  // G = γ a aᴴ: rank one and Hermitian PSD after dividing out γ.
  Eigen::JacobiSVD<CMat> svd(c1.g);
  CHECK(svd.singularValues()(1) <= 1e-9 * svd.singularValues()(0));
  const CMat g0 = c1.g / c1.gamma;
  CHECK(is_hermitian(g0));
  CHECK(min_eigenvalue(hermitian_part(g0)) >= -1e-9 * g0.norm());

  ScenarioConfig los = cfg;
  los.rician_factor = 1e12;
  Rng c(6);
  const ChannelSet cl = generate_channels(los, c);
  Eigen::JacobiSVD<CMat> s2(cl.h_br);
  CHECK(s2.singularValues()(1) <= 1e-5 * s2.singularValues()(0));

  // User at the reference distance: E‖h_BU‖² = M·10^(PL₀/10).
  ScenarioConfig near = cfg;
  near.user = {1.0, 0.0};
  double sum = 0.0;
  const int draws = 4000;
  Rng d(7);
  for (int t = 0; t < draws; ++t) sum += generate_channels(near, d).h_bu.squaredNorm();
  CHECK(sum / draws == doctest::Approx(cfg.antennas * db_to_linear(cfg.pathloss_ref_db)).epsilon(0.05));
}

TEST_CASE("substreams are reproducible and distinct") {
  const Rng root(9);
  Rng s1 = root.substream(3, 0), s2 = root.substream(3, 0), s3 = root.substream(3, 1), s4 = root.substream(4, 0);
  const double a = s1.uniform();
  CHECK(a == s2.uniform());
  CHECK(a != s3.uniform());
  CHECK(a != s4.uniform());
}

TEST_CASE("geometry of the default layout") {
  const ScenarioConfig cfg = default_scenario();
  const double deg = 180.0 / std::numbers::pi;
  CHECK(ris_angle(cfg, cfg.user) * deg == doctest::Approx(38.66).epsilon(1e-3));
  CHECK(ris_angle(cfg, {103.78, 34.42}) * deg == doctest::Approx(4.96).epsilon(1e-2));
  CHECK(ris_angle(cfg, cfg.eve) * deg == doctest::Approx(-30.0).epsilon(1e-2));
  CHECK(ris_angle(cfg, cfg.target) * deg == doctest::Approx(20.0).epsilon(1e-2));
}

TEST_CASE("config files") {
  KeyValueFile kv = KeyValueFile::parse("antennas = 3\nris_elements = 5\namp_gain_db = 20\n# note\n");
  const ScenarioConfig c = scenario_from_kv(kv);
  CHECK(c.antennas == 3);
  CHECK(c.ris_elements == 5);
  REQUIRE(c.amp_caps.size() == 5);
  CHECK(c.amp_caps[0] == doctest::Approx(100.0));

  KeyValueFile bad = KeyValueFile::parse("antennas = 3\nantenas = 4\n");
  CHECK_THROWS_AS(scenario_from_kv(bad), ConfigError);
  CHECK_THROWS_AS(KeyValueFile::parse("antennas 3\n"), ConfigError);
  CHECK_THROWS_AS(KeyValueFile::parse("a = 1\na = 2\n"), ConfigError);
  KeyValueFile neg = KeyValueFile::parse("bs_power_w = -1\n");
  CHECK_THROWS_AS(scenario_from_kv(neg), ConfigError);
  KeyValueFile caps = KeyValueFile::parse("ris_elements = 3\namp_caps = 1 2\n");
  CHECK_THROWS_AS(scenario_from_kv(caps), ConfigError);

  // Canonical text reads back to the same configuration.
  ScenarioConfig d = default_scenario();
  d.bs_power_w = 0.25;
  d.sinr_threshold = db_to_linear(-90.0);
  KeyValueFile back = KeyValueFile::parse(d.canonical());
  CHECK(scenario_from_kv(back).hash() == d.hash());

  CHECK(d.noise_power() == doctest::Approx(std::pow(10.0, (-174.0 - 30.0) / 10.0) * 10e6));
  CHECK(parse_scheme("passive") == Scheme::Passive);
  CHECK_THROWS_AS(parse_scheme("semi"), ConfigError);
}
