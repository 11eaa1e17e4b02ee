// risdfrc: command-line front end for the secure radar-communication optimizer.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "aris/aodriver.hpp"
#include "aris/conic.hpp"
#include "aris/experiment.hpp"
#include "aris/validation.hpp"

using namespace aris;

namespace {

constexpr int kOk = 0, kConfigError = 1, kNumericalFailure = 2;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string scheme;
  std::string out;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw ConfigError("cannot write `" + path + "`");
  f << text;
}

ScenarioConfig scenario_or_default(const std::string& path) {
  return path.empty() ? default_scenario() : load_scenario(path);
}

struct SimOutput {
  ResultFile file;
  AoResult result;
};

SimOutput simulate_once(const ScenarioConfig& cfg, const SchemeVariant& v, std::uint64_t seed, int trial) {
  ScenarioConfig c = cfg;
  if (v.has_eta) set_amp_gain_db(c, v.eta_db);
  validate(c);
  const ChannelSet ch = trial_channels(c, seed, trial);
  Rng rng = trial_algorithm_rng(seed, trial, 0, 0);
  SimOutput o;
  o.result = run(ch, c, v.scheme, rng);
  o.file.cfg = c;
  o.file.scheme = v.scheme;
  o.file.seed = seed;
  o.file.trial = trial;
  o.file.ch = ch;
  o.file.w = o.result.w;
  o.file.phi = o.result.phi;
  o.file.reason = termination_name(o.result.reason);
  o.file.secrecy = o.result.secrecy();
  return o;
}

// Subproblems as built at the initial point, for cross-checking elsewhere.
void dump_sdps(const ScenarioConfig& cfg, const SchemeVariant& v, std::uint64_t seed, int trial,
               const std::string& prefix) {
  ScenarioConfig c = cfg;
  if (v.has_eta) set_amp_gain_db(c, v.eta_db);
  const ChannelSet ch = trial_channels(c, seed, trial);
  Rng rng = trial_algorithm_rng(seed, trial, 0, 0);
  const InitPoint ip = initialize(ch, c, v.scheme, rng);
  const NoiseParams noise = noise_for(c, v.scheme);
  StepLimits lim = limits_for(c, v.scheme);
  if (ip.sensing_infeasible) lim.sensing = false;
  const WStepContext wc = build_context(ch, ip.w, ip.phi, noise, lim);
  write_text(prefix + ".wstep.sdp", conic::dump(build_sdp(wc)));
  if (v.scheme != Scheme::NoRis) {
    const PhiStepContext pc = build_phi_context(ch, ip.w, ip.phi, noise, lim, v.scheme, c.amp_caps);
    write_text(prefix + ".phistep.sdp", conic::dump(build_phi_sdp(pc)));
  }
}

ExperimentSpec experiment_from(const Common& o) {
  ExperimentSpec spec;
  if (o.config.empty()) {
    spec.schemes = {parse_variant("active"), parse_variant("passive"), parse_variant("noris")};
    spec.values = {"-"};
    spec.base = default_scenario();
  } else {
    spec = load_experiment(o.config);
  }
  if (o.seed) spec.seed = *o.seed;
  if (o.trials) spec.trials = *o.trials;
  if (!o.out.empty()) spec.out = o.out;
  if (!o.scheme.empty()) {
    spec.schemes.clear();
    std::stringstream ss(o.scheme);
    std::string w;
    while (std::getline(ss, w, ',')) spec.schemes.push_back(parse_variant(w));
  }
  spec.validate();
  return spec;
}

int cmd_simulate(const Common& o, bool dump_sdp) {
  const ScenarioConfig cfg = scenario_or_default(o.config);
  const SchemeVariant v = parse_variant(o.scheme.empty() ? "active" : o.scheme);
  const std::uint64_t seed = o.seed.value_or(1);
  if (dump_sdp) {
    if (o.out.empty()) throw ConfigError("--dump-sdp needs --out");
    dump_sdps(cfg, v, seed, 0, o.out);
  }
  const SimOutput s = simulate_once(cfg, v, seed, 0);
  const std::string trace = s.result.trace.to_jsonl();
  std::cout << trace;
  std::cerr << v.label() << ": secrecy rate " << s.result.secrecy() << " nat/s/Hz, "
            << termination_name(s.result.reason) << " after " << s.result.outer_iterations << " iteration(s)\n";
  if (!o.out.empty()) {
    write_text(o.out + ".trace.jsonl", trace);
    save_result(s.file, o.out + ".result.json");
  }
  return kOk;
}

int cmd_sweep(const Common& o, int threads, bool quiet) {
  ExperimentSpec spec = experiment_from(o);
  if (threads >= 0) spec.threads = threads;
  const MonteCarloOutput mc = monte_carlo(spec, !quiet);
  std::cout << aggregates_json(mc.aggregates, spec);
  int failed = 0;
  for (const auto& a : mc.aggregates) failed += a.failed;
  if (failed > 0) std::cerr << failed << " trial(s) ended in numerical failure\n";
  return kOk;
}

int cmd_beampattern(const Common& o, const std::string& result_path, int points) {
  ResultFile r;
  if (!result_path.empty()) {
    r = load_result(result_path);
  } else {
    const ScenarioConfig cfg = scenario_or_default(o.config);
    const SchemeVariant v = parse_variant(o.scheme.empty() ? "active" : o.scheme);
    r = simulate_once(cfg, v, o.seed.value_or(1), 0).file;
  }
  const BeamReport b = beampattern_report(r.ch, r.w, r.phi, r.cfg.spacing_ratio, points);
  if (o.out.empty()) {
    std::cout << beam_csv(b);
  } else {
    write_text(o.out + ".beam.csv", beam_csv(b));
    write_text(o.out + ".beam.json", beam_json(b));
  }
  if (r.phi.phi.squaredNorm() == 0.0) {
    std::cerr << "pattern is identically zero: no reflected signal\n";
    return kOk;
  }
  std::cerr << "argmax " << b.argmax_deg << " deg (user " << b.user_deg << "), eve " << b.at_eve_db
            << " dB, target " << b.at_target_db << " dB\n";
  return kOk;
}

// Per-iteration secrecy traces for every (variant, sweep point, trial).
int cmd_convergence(const Common& o) {
  Common c = o;
  if (!c.trials) c.trials = 1;
  ExperimentSpec spec = experiment_from(c);
  std::ostringstream csv;
  csv << "scheme,value,trial,iteration,secrecy_rate,radar_sinr_db,wall_s\n";
  csv.precision(10);
  int runs = 0, within10 = 0;
  for (std::size_t p = 0; p < spec.values.size(); ++p)
    for (std::size_t v = 0; v < spec.schemes.size(); ++v)
      for (int t = 0; t < spec.trials; ++t) {
        const ScenarioConfig cfg = configure_point(spec, spec.schemes[v], spec.values[p]);
        const ChannelSet ch = trial_channels(cfg, spec.seed, t);
        Rng rng = trial_algorithm_rng(spec.seed, t, v, p);
        const AoResult r = run(ch, cfg, spec.schemes[v].scheme, rng);
        for (const auto& rec : r.trace.records)
          csv << spec.schemes[v].label() << ',' << spec.values[p] << ',' << t << ',' << rec.iteration << ','
              << rec.secrecy << ',' << rec.radar_sinr_db << ',' << rec.wall_s << '\n';
        ++runs;
        if (r.reason != Termination::MaxIterations && r.outer_iterations <= 10) ++within10;
        std::cerr << spec.schemes[v].label() << " value=" << spec.values[p] << " trial=" << t << ": "
                  << r.outer_iterations << " iteration(s), " << termination_name(r.reason) << "\n";
      }
  if (spec.out.empty()) std::cout << csv.str();
  else write_text(spec.out + ".convergence.csv", csv.str());
  std::cerr << within10 << "/" << runs << " runs stopped within 10 outer iterations\n";
  return kOk;
}

int cmd_validate(const Common& o) {
  bool all = true;
  for (const auto& r : validation::run_all(o.seed.value_or(1))) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    all = all && r.pass;
  }
  return all ? kOk : kNumericalFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Precoder and RIS optimizer for secure dual-function radar-communication"};
  app.require_subcommand(1);
  Common o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "key = value scenario or experiment file");
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--trials", o.trials, "channel realizations")->check(CLI::PositiveNumber);
    sub->add_option("--scheme", o.scheme, "active | passive | noris, optionally name@eta_db");
    sub->add_option("--out", o.out, "output prefix");
  };

  bool dump_sdp = false, quiet = false;
  int threads = -1, points = 721;
  std::string result_path;

  auto* sim = app.add_subcommand("simulate", "one optimized run; prints the iteration trace");
  common(sim);
  sim->add_flag("--dump-sdp", dump_sdp, "write both subproblems at the initial point to <out>.*.sdp");
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo experiment from a spec file");
  common(sweep);
  sweep->add_option("--threads", threads, "worker threads (0 = all cores)");
  sweep->add_flag("--quiet", quiet, "no per-trial progress");
  auto* beam = app.add_subcommand("beampattern", "transmit beampattern of a result");
  common(beam);
  beam->add_option("--result", result_path, "result file written by simulate");
  beam->add_option("--points", points, "grid size over [-90, 90] deg")->check(CLI::Range(3, 100000));
  auto* conv = app.add_subcommand("convergence", "secrecy rate per outer iteration");
  common(conv);
  auto* val = app.add_subcommand("validate", "run the property suites");
  common(val);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*sim) return cmd_simulate(o, dump_sdp);
    if (*sweep) return cmd_sweep(o, threads, quiet);
    if (*beam) return cmd_beampattern(o, result_path, points);
    if (*conv) return cmd_convergence(o);
    if (*val) return cmd_validate(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const AoFailure& e) {
    std::cerr << "numerical failure: " << e.what() << " (after " << e.trace.records.size() << " trace records)\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kOk;
}
