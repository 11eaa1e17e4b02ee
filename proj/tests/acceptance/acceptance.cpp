// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
// `acceptance 7 10` runs a subset.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "aris/aodriver.hpp"
#include "aris/experiment.hpp"
#include "aris/validation.hpp"

using namespace aris;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Every row produced by any criterion, for the corpus-wide feasibility check.
std::vector<ResultRow> corpus;
int corpus_runs_outside_rows = 0, corpus_infeasible_outside_rows = 0;

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome suite(validation::SuiteResult (*fn)(std::uint64_t, int), int n) {
  const auto r = fn(1, n);
  return {r.pass, r.detail};
}

Outcome from_suite(const validation::SuiteResult& r) { return {r.pass, r.detail}; }

void note_feasibility(const ChannelSet& ch, const ScenarioConfig& cfg, Scheme scheme, const AoResult& r) {
  if (!r.converged()) return;
  ++corpus_runs_outside_rows;
  if (!check_feasibility(r.w, r.phi, ch, cfg, scheme, scheme != Scheme::NoRis, 1e-6).ok())
    ++corpus_infeasible_outside_rows;
}

Outcome convergence() {
  const ScenarioConfig cfg = default_scenario();
  int monotone = 0, within = 0;
  const int runs = 20;
  std::string iters;
  for (int t = 0; t < runs; ++t) {
    const ChannelSet ch = trial_channels(cfg, 1, t);
    Rng rng = trial_algorithm_rng(1, t, 0, 0);
    const AoResult r = run(ch, cfg, Scheme::Active, rng);
    note_feasibility(ch, cfg, Scheme::Active, r);
    const std::vector<double> s = r.trace.secrecy();
    bool mono = true;
    for (std::size_t i = 1; i < s.size(); ++i) mono = mono && s[i] >= s[i - 1];
    monotone += mono;
    int reached = -1;
    for (std::size_t i = 1; i < s.size() && reached < 0; ++i)
      if (std::abs(s[i] - s[i - 1]) < 1e-3 * std::max(1.0, std::abs(s[i]))) reached = int(i);
    if (reached > 0 && reached <= 10) ++within;
    iters += (t ? "," : "") + std::to_string(reached);
  }
  const bool pass = monotone == runs && within >= int(std::ceil(0.9 * runs));
  return {pass, std::to_string(monotone) + "/20 monotone, " + std::to_string(within) +
                    "/20 within 10 iterations (need 18); iteration reached per run: " + iters};
}

ExperimentSpec base_spec(const std::vector<std::string>& schemes, int trials) {
  ExperimentSpec spec;
  for (const auto& s : schemes) spec.schemes.push_back(parse_variant(s));
  spec.values = {"-"};
  spec.trials = trials;
  spec.seed = 1;
  spec.threads = 0;
  spec.base = default_scenario();
  return spec;
}

Outcome trends() {
  ExperimentSpec spec = base_spec({"active@20", "active@15", "passive", "noris"}, 50);
  spec.base.bs_power_w = 1.0;
  const MonteCarloOutput mc = monte_carlo(spec);
  corpus.insert(corpus.end(), mc.rows.begin(), mc.rows.end());
  std::map<std::string, Aggregate> g;
  for (const auto& a : mc.aggregates) g[a.scheme] = a;
  const double a20 = g["active@20"].mean_secrecy, a15 = g["active@15"].mean_secrecy;
  const double pas = g["passive"].mean_secrecy, nr = g["noris"].mean_secrecy;
  const double radar_gap = g["active@15"].mean_radar_db - g["passive"].mean_radar_db;
  const bool order = a20 > a15 && a15 > pas && pas > nr;
  const bool pass = order && a15 - pas >= 1.0 && radar_gap >= 30.0;
  std::string d = "mean SR active@20 " + fmt("%.3f", a20) + ", active@15 " + fmt("%.3f", a15) + ", passive " +
                  fmt("%.3f", pas) + ", noris " + fmt("%.3f", nr) + (order ? " (ordered)" : " (NOT ordered)") +
                  "; active@15 - passive " + fmt("%.3f", a15 - pas) + " nat/s/Hz (need >= 1); radar gap " +
                  fmt("%.1f", radar_gap) + " dB (need >= 30); failures " +
                  std::to_string(g["active@20"].failed + g["active@15"].failed + g["passive"].failed + g["noris"].failed);
  return {pass, d};
}

Outcome gamma_insensitivity() {
  ExperimentSpec spec = base_spec({"active"}, 20);
  spec.sweep = SweepVar::GammaDb;
  spec.values = {"-100", "-95", "-90", "-85", "-80"};
  const MonteCarloOutput mc = monte_carlo(spec);
  corpus.insert(corpus.end(), mc.rows.begin(), mc.rows.end());
  double lo = 1e300, hi = -1e300, sum = 0.0;
  std::string d = "mean SR by threshold:";
  int sensing_bad = 0;
  for (const auto& a : mc.aggregates) {
    lo = std::min(lo, a.mean_secrecy);
    hi = std::max(hi, a.mean_secrecy);
    sum += a.mean_secrecy;
    sensing_bad += a.sensing_infeasible;
    d += " " + a.value + " dB -> " + fmt("%.4f", a.mean_secrecy) + ";";
  }
  const double mean = sum / double(mc.aggregates.size());
  const double spread = (hi - lo) / mean;
  d += " spread " + fmt("%.3f", 100.0 * spread) + "% (need < 5%), sensing-infeasible trials " +
       std::to_string(sensing_bad);
  return {spread < 0.05, d};
}

Outcome beam_check() {
  struct Placement {
    Point user;
    double quoted_deg;
  };
  const Placement placements[] = {{{90.0, 40.0}, 38.67}, {{103.78, 34.42}, 5.0}};
  bool pass = true;
  std::string d;
  for (const auto& pl : placements) {
    ScenarioConfig cfg = default_scenario();
    cfg.user = pl.user;
    const ChannelSet ch = trial_channels(cfg, 1, 0);
    Rng rng = trial_algorithm_rng(1, 0, 0, 0);
    const AoResult r = run(ch, cfg, Scheme::Active, rng);
    note_feasibility(ch, cfg, Scheme::Active, r);
    const BeamReport b = beampattern_report(ch, r.w, r.phi, cfg.spacing_ratio, 721);
    const double off = std::abs(b.argmax_deg - b.user_deg);
    const bool lobe = off <= 3.0 * b.step_deg + 1e-9;
    const bool trough = b.at_eve_db <= -10.0;
    pass = pass && lobe && trough;
    d += (d.empty() ? "" : "; ") + std::string("user ") + fmt("%.2f", b.user_deg) + " deg: argmax " +
         fmt("%.2f", b.argmax_deg) + (lobe ? " (ok)" : " (off by more than 3 steps)") + ", eve " +
         fmt("%.1f", b.at_eve_db) + " dB" + (trough ? " (ok)" : " (above -10 dB)");
  }
  return {pass, d};
}

Outcome feasibility_corpus() {
  int converged = 0, bad = 0;
  for (const auto& r : corpus) {
    if (!r.converged) continue;
    ++converged;
    if (!r.feasible) ++bad;
  }
  converged += corpus_runs_outside_rows;
  bad += corpus_infeasible_outside_rows;
  return {converged > 0 && bad == 0,
          std::to_string(converged) + " converged runs checked, " + std::to_string(bad) + " infeasible"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"linearized SINR bound suite", [] { return suite(validation::lemma1_suite, 1000); }},
      {"cubic-term bound suite", [] { return suite(validation::lemma3_suite, 1000); }},
      {"vectorization identity suite", [] { return suite(validation::vectorization_suite, 100); }},
      {"extracted-matrix structure suite", [] { return suite(validation::structure_suite, 20); }},
      {"surrogate suite", [] { return suite(validation::surrogate_suite, 100); }},
      {"SDP oracle suite", [] { return from_suite(validation::sdp_oracle_suite(1)); }},
      {"monotone convergence", convergence},
      {"trend reproduction", trends},
      {"threshold insensitivity", gamma_insensitivity},
      {"beampattern", beam_check},
      {"end-to-end feasibility", feasibility_corpus},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = int(k + 1);
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(),
                o.detail.c_str(), s);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
