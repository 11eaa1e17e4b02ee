#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "aris/experiment.hpp"

using namespace aris;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

ExperimentSpec small_spec(const std::string& schemes, int trials) {
  KeyValueFile kv = KeyValueFile::parse("schemes = " + schemes + "\ntrials = " + std::to_string(trials) +
                                        "\nseed = 11\nthreads = 1\n");
  return parse_experiment(kv);
}

}  // namespace

TEST_CASE("fair power budgets") {
  ScenarioConfig cfg = default_scenario();
  cfg.switch_power_w = dbm_to_watt(-5.0);
  cfg.dc_power_w = dbm_to_watt(-10.0);
  CHECK(cfg.ris_elements * (cfg.switch_power_w + cfg.dc_power_w) == doctest::Approx(4.9947e-3).epsilon(1e-4));
  const double q = total_power_budget(cfg);
  const ScenarioConfig pas = fair_power_budgets(cfg, Scheme::Passive);
  const ScenarioConfig nr = fair_power_budgets(cfg, Scheme::NoRis);
  CHECK(pas.bs_power_w + cfg.ris_elements * cfg.switch_power_w == q);
  CHECK(nr.bs_power_w == q);
  CHECK(fair_power_budgets(cfg, Scheme::Active).bs_power_w == cfg.bs_power_w);

  cfg.ris_elements = 0;
  CHECK(fair_power_budgets(cfg, Scheme::Passive).bs_power_w == cfg.bs_power_w);
  CHECK(fair_power_budgets(cfg, Scheme::NoRis).bs_power_w == cfg.bs_power_w);

  cfg = default_scenario();
  cfg.bs_power_w = -1.0;
  CHECK_THROWS_AS(fair_power_budgets(cfg, Scheme::NoRis), ConfigError);
}

TEST_CASE("scheme variants and spec parsing") {
  const SchemeVariant v = parse_variant("active@15");
  CHECK(v.scheme == Scheme::Active);
  CHECK(v.has_eta);
  CHECK(v.eta_db == 15.0);
  CHECK(v.label() == "active@15");
  CHECK_THROWS_AS(parse_variant("bogus"), ConfigError);
  KeyValueFile bad = KeyValueFile::parse("trials = 3\nno_such_key = 1\n");
  CHECK_THROWS_AS(parse_experiment(bad), ConfigError);
  KeyValueFile zero = KeyValueFile::parse("trials = 0\n");
  CHECK_THROWS_AS(parse_experiment(zero).validate(), ConfigError);
}

TEST_CASE("CSV rows round-trip") {
  ResultRow r;
  r.scheme = "active@20";
  r.value = "1.5";
  r.variant = 2;
  r.point = 1;
  r.trial = 7;
  r.seed = 99;
  r.secrecy = 3.25;
  r.radar_sinr_db = -12.5;
  r.initial_radar_sinr_db = -40.125;
  r.converged = true;
  r.reason = "converged";
  r.outer_iterations = 4;
  r.feasible = true;
  r.channel_hash = 0xdeadbeefcafef00dull;
  r.config_hash = 12345;
  const std::string path = (std::filesystem::temp_directory_path() / "aris_rows.csv").string();
  {
    std::ofstream f(path);
    f << csv_header() << "\n" << csv_line(r) << "\n";
  }
  const auto rows = read_csv(path);
  REQUIRE(rows.size() == 1);
  CHECK(csv_line(rows[0]) == csv_line(r));
  CHECK(rows[0].channel_hash == r.channel_hash);
  CHECK(rows[0].secrecy == r.secrecy);
}

TEST_CASE("empirical CDF and percentiles") {
  const Cdf c = empirical_cdf({3.0, -1.0, 2.0, 2.0, 10.0});
  REQUIRE(c.x.size() == c.p.size());
  for (std::size_t i = 1; i < c.x.size(); ++i) {
    CHECK(c.x[i] >= c.x[i - 1]);
    CHECK(c.p[i] >= c.p[i - 1]);
  }
  CHECK(c.p.front() > 0.0);
  CHECK(c.p.back() == 1.0);
  CHECK(percentile({1.0, 2.0, 3.0}, 0.5) == 2.0);
}

TEST_CASE("no-RIS baseline closed forms") {
  ScenarioConfig cfg = default_scenario();
  Rng rng(12);
  ChannelSet ch = generate_channels(cfg, rng);
  const NoiseParams noise = noise_for(cfg, Scheme::NoRis);

  SUBCASE("silent eavesdropper: MRT capacity") {
    ch.h_be.setZero();
    ch.h_re.setZero();
    Rng a(1);
    const AoResult r = run(ch, cfg, Scheme::NoRis, a);
    const double s = std::log1p(cfg.bs_power_w * ch.h_bu.squaredNorm() / noise.user);
    CHECK(std::abs(r.secrecy() - s) <= 1e-6 * s);
  }
  SUBCASE("eavesdropper sees the user channel") {
    ch.h_be = ch.h_bu;
    Rng a(1);
    CHECK(run(ch, cfg, Scheme::NoRis, a).secrecy() <= 1e-9);
  }
  SUBCASE("independent of RIS-side settings") {
    ScenarioConfig other = cfg;
    other.ris_power_w = 7.0;
    set_amp_gain_db(other, 3.0);
    Rng a(1), b(1);
    CHECK(run(ch, cfg, Scheme::NoRis, a).secrecy() == run(ch, other, Scheme::NoRis, b).secrecy());
  }
}

TEST_CASE("Monte-Carlo: one row per trial, matched channels, deterministic files") {
  ExperimentSpec spec = small_spec("noris passive", 2);
  const auto dir = std::filesystem::temp_directory_path() / "aris_mc";
  std::filesystem::create_directories(dir);
  spec.out = (dir / "a").string();
  const MonteCarloOutput a = monte_carlo(spec);
  REQUIRE(a.rows.size() == 4);
  for (int t = 0; t < 2; ++t) CHECK(a.rows[std::size_t(t)].channel_hash == a.rows[std::size_t(2 + t)].channel_hash);
  CHECK(a.rows[0].channel_hash != a.rows[1].channel_hash);
  spec.out = (dir / "b").string();
  monte_carlo(spec);
  CHECK(slurp((dir / "a.csv").string()) == slurp((dir / "b.csv").string()));
  CHECK(slurp((dir / "a.json").string()) == slurp((dir / "b.json").string()));
  CHECK(!std::filesystem::exists(dir / "a.partial"));

  // Aggregation is a fold over the rows.
  const auto again = aggregate(read_csv((dir / "a.csv").string()));
  REQUIRE(again.size() == a.aggregates.size());
  for (std::size_t i = 0; i < again.size(); ++i) CHECK(again[i].mean_secrecy == a.aggregates[i].mean_secrecy);

  ExperimentSpec one = small_spec("noris", 1);
  CHECK(monte_carlo(one).rows.size() == 1);
}

TEST_CASE("result file and beampattern") {
  ScenarioConfig cfg = default_scenario();
  const ChannelSet ch = trial_channels(cfg, 3, 0);
  Rng rng = trial_algorithm_rng(3, 0, 0, 0);
  const AoResult r = run(ch, cfg, Scheme::NoRis, rng);
  ResultFile f;
  f.cfg = cfg;
  f.scheme = Scheme::NoRis;
  f.seed = 3;
  f.ch = ch;
  f.w = r.w;
  f.phi = r.phi;
  f.reason = termination_name(r.reason);
  f.secrecy = r.secrecy();
  const ResultFile g = result_from_json(result_to_json(f));
  CHECK(g.ch.hash() == ch.hash());
  CHECK(g.cfg.hash() == cfg.hash());
  CHECK((g.w.w - f.w.w).norm() == 0.0);

  // Any Φ: normalized pattern never exceeds 0 dB.
  RisCoeffs phi{CVec::Ones(ch.elements())};
  const BeamReport b = beampattern_report(ch, r.w, phi, cfg.spacing_ratio, 181);
  REQUIRE(b.theta_deg.size() == 181);
  for (double v : b.gain_db) CHECK(v <= 1e-12);
  CHECK(b.step_deg == doctest::Approx(1.0));
}
