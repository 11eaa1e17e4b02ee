#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "aris/aodriver.hpp"

using namespace aris;

namespace {

ChannelSet channels(const ScenarioConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  return generate_channels(cfg, rng);
}

}  // namespace

TEST_CASE("initialization is feasible and deterministic") {
  const ScenarioConfig cfg = default_scenario();
  for (Scheme scheme : {Scheme::Active, Scheme::Passive, Scheme::NoRis}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const ChannelSet ch = channels(cfg, seed);
      Rng a(seed), b(seed);
      const InitPoint p = initialize(ch, cfg, scheme, a);
      const InitPoint q = initialize(ch, cfg, scheme, b);
      CHECK(p.w.w == q.w.w);
      CHECK(p.phi.phi == q.phi.phi);
      const FeasibilityReport rep = check_feasibility(p.w, p.phi, ch, cfg, scheme, false);
      CHECK_MESSAGE(rep.ok(), rep.summary());
      CHECK(bs_power(p.w) == doctest::Approx(cfg.bs_power_w).epsilon(1e-12));
      if (!p.sensing_infeasible && scheme != Scheme::NoRis)
        CHECK(radar_sinr(ch, p.w, p.phi, noise_for(cfg, scheme)) >= cfg.sinr_threshold);
    }
  }
}

TEST_CASE("unit caps with a large RIS budget bind the amplitude") {
  ScenarioConfig cfg = default_scenario();
  set_amp_gain_db(cfg, 0.0);
  cfg.ris_power_w = 1e6;
  const ChannelSet ch = channels(cfg, 4);
  Rng rng(4);
  const InitPoint p = initialize(ch, cfg, Scheme::Active, rng);
  for (int i = 0; i < p.phi.elements(); ++i) CHECK(std::abs(p.phi.phi(i)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("zero channels stop after one iteration with zero secrecy") {
  ScenarioConfig cfg = default_scenario();
  ChannelSet ch = channels(cfg, 5);
  ch.h_br.setZero();
  ch.h_bu.setZero();
  ch.h_be.setZero();
  ch.h_ru.setZero();
  ch.h_re.setZero();
  ch.g.setZero();
  ch.gamma = 0.0;
  Rng rng(5);
  const AoResult r = run(ch, cfg, Scheme::NoRis, rng);
  CHECK(r.outer_iterations <= 1);
  CHECK(r.secrecy() == 0.0);
}

TEST_CASE("default scenario: monotone trace, converged and feasible") {
  const ScenarioConfig cfg = default_scenario();
  const ChannelSet ch = channels(cfg, 6);
  Rng rng(6);
  const AoResult r = run(ch, cfg, Scheme::Active, rng);
  const std::vector<double> s = r.trace.secrecy();
  REQUIRE(s.size() >= 2);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] >= s[i - 1]);
  CHECK(r.reason == Termination::Converged);
  CHECK(r.outer_iterations <= cfg.algo.max_outer);
  const FeasibilityReport rep = check_feasibility(r.w, r.phi, ch, cfg, Scheme::Active, true);
  CHECK_MESSAGE(rep.ok(), rep.summary());

  // One JSON object per line, one line per record.
  std::istringstream lines(r.trace.to_jsonl());
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.at("iteration").get<int>() == r.trace.records[n].iteration);
    ++n;
  }
  CHECK(n == r.trace.records.size());

  Rng again(6);
  const AoResult r2 = run(ch, cfg, Scheme::Active, again);
  CHECK(r2.w.w == r.w.w);
  CHECK(r2.phi.phi == r.phi.phi);
}

TEST_CASE("complexity estimate") {
  const ComplexityEstimate c = complexity_estimate(4, 12, 1);
  CHECK(c.j1 == 8.0);
  CHECK(c.k1 == 5.0);
  CHECK(c.n1 == 125.0);
  CHECK(c.k2 == 13.0);
  CHECK(complexity_estimate(4, 12, 0).total == 0.0);
  // o₂ grows like N^6.5 for large N.
  const double ratio = complexity_estimate(4, 4000, 1).o2 / complexity_estimate(4, 2000, 1).o2;
  CHECK(ratio == doctest::Approx(std::pow(2.0, 6.5)).epsilon(0.01));
}
