#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aris/aodriver.hpp"
#include "aris/config.hpp"
#include "aris/scenario.hpp"

namespace aris {

// Q^act = P0 + P_RIS + N(P_SW + P_DC), Q^pas = P0 + N P_SW, Q^NRNS = P0.
// cfg.bs_power_w is the active-scheme BS budget; the other schemes get the rest of Q.
double total_power_budget(const ScenarioConfig& cfg);
ScenarioConfig fair_power_budgets(const ScenarioConfig& cfg, Scheme scheme);

// A scheme plus an optional amplitude-gain override, written `active@20`.
struct SchemeVariant {
  Scheme scheme = Scheme::Active;
  bool has_eta = false;
  double eta_db = 0.0;
  std::string label() const;
};
SchemeVariant parse_variant(const std::string& s);

enum class SweepVar { None, BsPower, RisPower, Elements, GammaDb, EtaDb, User };
std::string sweep_name(SweepVar v);

struct ExperimentSpec {
  std::vector<SchemeVariant> schemes;
  SweepVar sweep = SweepVar::None;
  std::vector<std::string> values;  // one entry per sweep point ("-" when no sweep)
  int trials = 50;
  std::uint64_t seed = 1;
  bool fair_power = true;
  int threads = 0;  // 0 = hardware concurrency
  ScenarioConfig base;
  std::string out;  // prefix; empty = no files

  void validate() const;
};
// Experiment keys plus any scenario key; unknown keys are errors.
ExperimentSpec parse_experiment(KeyValueFile& kv);
ExperimentSpec load_experiment(const std::string& path);

// The scenario seen by one (variant, sweep point).
ScenarioConfig configure_point(const ExperimentSpec& spec, const SchemeVariant& v, const std::string& value);

// Channel realization `trial` of an experiment: depends only on (seed, trial)
// and the geometry, so all schemes at a sweep point share it.
ChannelSet trial_channels(const ScenarioConfig& cfg, std::uint64_t seed, int trial);
Rng trial_algorithm_rng(std::uint64_t seed, int trial, std::size_t variant, std::size_t point);

struct ResultRow {
  std::string scheme;
  std::string value;
  std::size_t variant = 0, point = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  double secrecy = 0.0;
  double radar_sinr_db = 0.0;
  double initial_radar_sinr_db = 0.0;
  bool converged = false;
  std::string reason;
  int outer_iterations = 0;
  bool feasible = false;
  std::uint64_t channel_hash = 0;
  std::uint64_t config_hash = 0;
  double wall_s = 0.0;  // kept out of the CSV
};

std::string csv_header();
std::string csv_line(const ResultRow& r);
std::vector<ResultRow> read_csv(const std::string& path);

ResultRow run_trial(const ExperimentSpec& spec, std::size_t variant, std::size_t point, int trial);

struct Cdf {
  std::vector<double> x, p;  // sorted values, P(X ≤ x)
};
Cdf empirical_cdf(std::vector<double> values);
double percentile(std::vector<double> values, double q);

struct Aggregate {
  std::string scheme, value;
  int trials = 0, converged = 0, sensing_infeasible = 0, failed = 0, infeasible = 0;
  double mean_secrecy = 0.0;
  double p10 = 0.0, p50 = 0.0, p90 = 0.0;
  double mean_radar_db = 0.0, mean_initial_radar_db = 0.0;
  Cdf radar_cdf, initial_radar_cdf;
};
// Pure fold over the rows, grouped by (variant, point).
std::vector<Aggregate> aggregate(const std::vector<ResultRow>& rows);
std::string aggregates_json(const std::vector<Aggregate>& aggs, const ExperimentSpec& spec);

struct MonteCarloOutput {
  std::vector<ResultRow> rows;  // sorted by (variant, point, trial)
  std::vector<Aggregate> aggregates;
};
// Writes <out>.partial while running, then <out>.csv (sorted), <out>.json and
// <out>.timing.csv when spec.out is set.
MonteCarloOutput monte_carlo(const ExperimentSpec& spec, bool progress = false);

// One optimized run with everything needed to rebuild it.
struct ResultFile {
  ScenarioConfig cfg;
  Scheme scheme = Scheme::Active;
  std::uint64_t seed = 0;
  int trial = 0;
  ChannelSet ch;
  Precoder w;
  RisCoeffs phi;
  std::string reason;
  double secrecy = 0.0;
};
std::string result_to_json(const ResultFile& r);
ResultFile result_from_json(const std::string& text);
void save_result(const ResultFile& r, const std::string& path);
ResultFile load_result(const std::string& path);

struct BeamReport {
  std::vector<double> theta_deg, gain_db;  // normalized to the peak
  double argmax_deg = 0.0;
  double user_deg = 0.0, eve_deg = 0.0, target_deg = 0.0;
  double at_user_db = 0.0, at_eve_db = 0.0, at_target_db = 0.0;
  double step_deg = 0.0;
};
BeamReport beampattern_report(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi,
                              double spacing_ratio, int points = 721);
std::string beam_csv(const BeamReport& b);
std::string beam_json(const BeamReport& b);

}  // namespace aris
