#include "aris/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace aris {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_db(double lin) {
  return lin > 0.0 ? 10.0 * std::log10(lin) : -std::numeric_limits<double>::infinity();
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": `" + s + "` is not a number");
  }
}

Point parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ConfigError("user position `" + s + "`: expected `x,y`");
  return {parse_number(s.substr(0, comma), "user x"), parse_number(s.substr(comma + 1), "user y")};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write `" + path + "`");
  f << text;
  if (!f) throw ConfigError("short write to `" + path + "`");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read `" + path + "`");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

json mat_json(const CMat& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> re, im;
  for (Eigen::Index k = 0; k < m.size(); ++k) re.push_back(m.data()[k].real()), im.push_back(m.data()[k].imag());
  j["re"] = re;
  j["im"] = im;
  return j;
}

CMat mat_from(const json& j) {
  const Eigen::Index r = j.at("rows").get<Eigen::Index>(), c = j.at("cols").get<Eigen::Index>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != std::size_t(r * c) || im.size() != re.size()) throw ConfigError("result file: bad matrix size");
  CMat m(r, c);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = {re[std::size_t(k)], im[std::size_t(k)]};
  return m;
}

}  // namespace

double total_power_budget(const ScenarioConfig& cfg) {
  if (cfg.ris_elements == 0) return cfg.bs_power_w;
  return cfg.bs_power_w + cfg.ris_power_w + cfg.ris_elements * (cfg.switch_power_w + cfg.dc_power_w);
}

ScenarioConfig fair_power_budgets(const ScenarioConfig& cfg, Scheme scheme) {
  ScenarioConfig out = cfg;
  const double q = total_power_budget(cfg);
  switch (scheme) {
    case Scheme::Active: break;
    case Scheme::Passive: out.bs_power_w = q - cfg.ris_elements * cfg.switch_power_w; break;
    case Scheme::NoRis: out.bs_power_w = q; break;
  }
  if (!(out.bs_power_w > 0.0))
    throw ConfigError("fair power budget leaves " + fmt(out.bs_power_w) + " W at the BS for scheme " +
                      scheme_name(scheme));
  return out;
}

std::string SchemeVariant::label() const {
  if (!has_eta) return scheme_name(scheme);
  char buf[32];
  std::snprintf(buf, sizeof buf, "@%g", eta_db);
  return scheme_name(scheme) + buf;
}

SchemeVariant parse_variant(const std::string& s) {
  SchemeVariant v;
  const auto at = s.find('@');
  v.scheme = parse_scheme(s.substr(0, at));
  if (at != std::string::npos) {
    if (v.scheme != Scheme::Active) throw ConfigError("scheme `" + s + "`: only active takes an amplitude gain");
    v.has_eta = true;
    v.eta_db = parse_number(s.substr(at + 1), "scheme `" + s + "` gain");
  }
  return v;
}

std::string sweep_name(SweepVar v) {
  switch (v) {
    case SweepVar::None: return "none";
    case SweepVar::BsPower: return "bs_power_w";
    case SweepVar::RisPower: return "ris_power_w";
    case SweepVar::Elements: return "ris_elements";
    case SweepVar::GammaDb: return "sinr_threshold_db";
    case SweepVar::EtaDb: return "amp_gain_db";
    case SweepVar::User: return "user_position";
  }
  return "?";
}

void ExperimentSpec::validate() const {
  if (schemes.empty()) throw ConfigError("experiment: `schemes` is empty");
  if (values.empty()) throw ConfigError("experiment: sweep grid is empty");
  if (trials < 1) throw ConfigError("experiment: trials must be >= 1");
  if (threads < 0) throw ConfigError("experiment: threads must be >= 0");
}

ExperimentSpec parse_experiment(KeyValueFile& kv) {
  ExperimentSpec s;
  if (kv.has("schemes"))
    for (const auto& w : kv.take_words("schemes")) s.schemes.push_back(parse_variant(w));
  else
    s.schemes = {parse_variant("active"), parse_variant("passive"), parse_variant("noris")};
  if (kv.has("sweep")) {
    const std::string v = kv.take("sweep");
    bool found = false;
    for (SweepVar c : {SweepVar::None, SweepVar::BsPower, SweepVar::RisPower, SweepVar::Elements, SweepVar::GammaDb,
                       SweepVar::EtaDb, SweepVar::User})
      if (sweep_name(c) == v) s.sweep = c, found = true;
    if (!found) throw ConfigError(kv.origin() + ": unknown sweep variable `" + v + "`");
  }
  if (kv.has("values")) s.values = kv.take_words("values");
  if (s.sweep == SweepVar::None) {
    if (!s.values.empty()) throw ConfigError(kv.origin() + ": `values` given without `sweep`");
    s.values = {"-"};
  }
  if (kv.has("trials")) s.trials = int(kv.take_int("trials"));
  if (kv.has("seed")) s.seed = std::uint64_t(kv.take_int("seed"));
  if (kv.has("fair_power")) s.fair_power = kv.take_bool("fair_power");
  if (kv.has("threads")) s.threads = int(kv.take_int("threads"));
  if (kv.has("out")) s.out = kv.take("out");
  s.base = scenario_from_kv(kv, true);
  s.validate();
  // Every grid value must parse now rather than mid-sweep.
  for (const auto& v : s.schemes)
    for (const auto& x : s.values) (void)configure_point(s, v, x);
  return s;
}

ExperimentSpec load_experiment(const std::string& path) {
  KeyValueFile kv = KeyValueFile::load(path);
  return parse_experiment(kv);
}

ScenarioConfig configure_point(const ExperimentSpec& spec, const SchemeVariant& v, const std::string& value) {
  ScenarioConfig c = spec.base;
  if (v.has_eta) set_amp_gain_db(c, v.eta_db);
  const std::string what = sweep_name(spec.sweep);
  switch (spec.sweep) {
    case SweepVar::None: break;
    case SweepVar::BsPower: c.bs_power_w = parse_number(value, what); break;
    case SweepVar::RisPower: c.ris_power_w = parse_number(value, what); break;
    case SweepVar::Elements: {
      const double n = parse_number(value, what);
      if (n != std::floor(n) || n < 1) throw ConfigError("ris_elements sweep: `" + value + "` is not a positive integer");
      const double cap = c.amp_caps.empty() ? 1.0 : c.amp_caps[0];
      c.ris_elements = int(n);
      c.amp_caps.assign(std::size_t(c.ris_elements), cap);
      break;
    }
    case SweepVar::GammaDb: c.sinr_threshold = db_to_linear(parse_number(value, what)); break;
    case SweepVar::EtaDb: set_amp_gain_db(c, parse_number(value, what)); break;
    case SweepVar::User: c.user = parse_point(value); break;
  }
  if (spec.fair_power) c = fair_power_budgets(c, v.scheme);
  validate(c);
  return c;
}

ChannelSet trial_channels(const ScenarioConfig& cfg, std::uint64_t seed, int trial) {
  Rng rng = Rng(seed).substream(std::uint64_t(trial), 0);
  return generate_channels(cfg, rng);
}

Rng trial_algorithm_rng(std::uint64_t seed, int trial, std::size_t variant, std::size_t point) {
  return Rng(seed).substream(std::uint64_t(trial), 1 + (std::uint64_t(variant) << 20) + std::uint64_t(point));
}

std::string csv_header() {
  return "scheme,value,variant,point,trial,seed,secrecy_rate,radar_sinr_db,initial_radar_sinr_db,converged,"
         "reason,outer_iterations,feasible,channel_hash,config_hash";
}

std::string csv_line(const ResultRow& r) {
  std::ostringstream os;
  os << r.scheme << ',' << r.value << ',' << r.variant << ',' << r.point << ',' << r.trial << ',' << r.seed << ','
     << fmt(r.secrecy) << ',' << fmt(r.radar_sinr_db) << ',' << fmt(r.initial_radar_sinr_db) << ','
     << (r.converged ? 1 : 0) << ',' << r.reason << ',' << r.outer_iterations << ',' << (r.feasible ? 1 : 0) << ','
     << hex64(r.channel_hash) << ',' << hex64(r.config_hash);
  return os.str();
}

std::vector<ResultRow> read_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::vector<ResultRow> rows;
  if (!std::getline(in, line) || line != csv_header()) throw ConfigError(path + ": not a result table");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 15) throw ConfigError(path + ": malformed row `" + line + "`");
    ResultRow r;
    r.scheme = f[0];
    r.value = f[1];
    r.variant = std::stoul(f[2]);
    r.point = std::stoul(f[3]);
    r.trial = std::stoi(f[4]);
    r.seed = std::stoull(f[5]);
    r.secrecy = std::strtod(f[6].c_str(), nullptr);
    r.radar_sinr_db = std::strtod(f[7].c_str(), nullptr);
    r.initial_radar_sinr_db = std::strtod(f[8].c_str(), nullptr);
    r.converged = f[9] == "1";
    r.reason = f[10];
    r.outer_iterations = std::stoi(f[11]);
    r.feasible = f[12] == "1";
    r.channel_hash = std::stoull(f[13], nullptr, 16);
    r.config_hash = std::stoull(f[14], nullptr, 16);
    rows.push_back(r);
  }
  return rows;
}

ResultRow run_trial(const ExperimentSpec& spec, std::size_t variant, std::size_t point, int trial) {
  const auto t0 = std::chrono::steady_clock::now();
  const SchemeVariant& v = spec.schemes[variant];
  const ScenarioConfig cfg = configure_point(spec, v, spec.values[point]);
  ResultRow row;
  row.scheme = v.label();
  row.value = spec.values[point];
  row.variant = variant;
  row.point = point;
  row.trial = trial;
  row.seed = spec.seed;
  row.config_hash = cfg.hash();
  const ChannelSet ch = trial_channels(cfg, spec.seed, trial);
  row.channel_hash = ch.hash();
  Rng rng = trial_algorithm_rng(spec.seed, trial, variant, point);
  try {
    const AoResult r = run(ch, cfg, v.scheme, rng);
    row.secrecy = r.secrecy();
    row.radar_sinr_db = r.trace.records.back().radar_sinr_db;
    row.initial_radar_sinr_db = to_db(r.initial_radar_sinr);
    row.converged = r.converged();
    row.reason = termination_name(r.reason);
    row.outer_iterations = r.outer_iterations;
    const bool sensing = v.scheme != Scheme::NoRis && r.reason != Termination::SensingInfeasible;
    row.feasible = check_feasibility(r.w, r.phi, ch, cfg, v.scheme, sensing, 1e-6).ok();
  } catch (const std::exception&) {
    row.converged = false;
    row.reason = "numerical-failure";
    row.feasible = false;
    row.secrecy = std::numeric_limits<double>::quiet_NaN();
    row.radar_sinr_db = row.initial_radar_sinr_db = std::numeric_limits<double>::quiet_NaN();
  }
  row.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

Cdf empirical_cdf(std::vector<double> values) {
  Cdf c;
  values.erase(std::remove_if(values.begin(), values.end(), [](double x) { return !std::isfinite(x); }), values.end());
  std::sort(values.begin(), values.end());
  const double n = double(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    c.x.push_back(values[i]);
    c.p.push_back(double(i + 1) / n);
  }
  return c;
}

double percentile(std::vector<double> values, double q) {
  values.erase(std::remove_if(values.begin(), values.end(), [](double x) { return !std::isfinite(x); }), values.end());
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double pos = q * double(values.size() - 1);
  const std::size_t lo = std::size_t(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - double(lo)) * (values[hi] - values[lo]);
}

std::vector<Aggregate> aggregate(const std::vector<ResultRow>& rows) {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<const ResultRow*>> groups;
  for (const auto& r : rows) groups[{r.variant, r.point}].push_back(&r);
  std::vector<Aggregate> out;
  auto mean_finite = [](const std::vector<double>& v) {
    double s = 0.0;
    int n = 0;
    for (double x : v)
      if (std::isfinite(x)) s += x, ++n;
    return n ? s / n : std::numeric_limits<double>::quiet_NaN();
  };
  for (const auto& [key, g] : groups) {
    Aggregate a;
    a.scheme = g.front()->scheme;
    a.value = g.front()->value;
    std::vector<double> sr, rad, rad0;
    for (const ResultRow* r : g) {
      ++a.trials;
      a.converged += r->converged;
      a.sensing_infeasible += r->reason == "sensing-infeasible";
      a.failed += r->reason == "numerical-failure";
      a.infeasible += !r->feasible && r->reason != "numerical-failure";
      sr.push_back(r->secrecy);
      rad.push_back(r->radar_sinr_db);
      rad0.push_back(r->initial_radar_sinr_db);
    }
    a.mean_secrecy = mean_finite(sr);
    a.p10 = percentile(sr, 0.1);
    a.p50 = percentile(sr, 0.5);
    a.p90 = percentile(sr, 0.9);
    a.mean_radar_db = mean_finite(rad);
    a.mean_initial_radar_db = mean_finite(rad0);
    a.radar_cdf = empirical_cdf(rad);
    a.initial_radar_cdf = empirical_cdf(rad0);
    out.push_back(std::move(a));
  }
  return out;
}

std::string aggregates_json(const std::vector<Aggregate>& aggs, const ExperimentSpec& spec) {
  json j;
  j["seed"] = spec.seed;
  j["config_hash"] = hex64(spec.base.hash());
  j["trials"] = spec.trials;
  j["sweep"] = sweep_name(spec.sweep);
  j["fair_power"] = spec.fair_power;
  json arr = json::array();
  for (const auto& a : aggs) {
    json g;
    g["scheme"] = a.scheme;
    g["value"] = a.value;
    g["trials"] = a.trials;
    g["converged"] = a.converged;
    g["sensing_infeasible"] = a.sensing_infeasible;
    g["numerical_failures"] = a.failed;
    g["infeasible"] = a.infeasible;
    g["mean_secrecy_rate"] = a.mean_secrecy;
    g["secrecy_p10"] = a.p10;
    g["secrecy_p50"] = a.p50;
    g["secrecy_p90"] = a.p90;
    g["mean_radar_sinr_db"] = a.mean_radar_db;
    g["mean_initial_radar_sinr_db"] = a.mean_initial_radar_db;
    g["radar_cdf"] = {{"x", a.radar_cdf.x}, {"p", a.radar_cdf.p}};
    g["initial_radar_cdf"] = {{"x", a.initial_radar_cdf.x}, {"p", a.initial_radar_cdf.p}};
    arr.push_back(g);
  }
  j["groups"] = arr;
  return j.dump(2) + "\n";
}

MonteCarloOutput monte_carlo(const ExperimentSpec& spec, bool progress) {
  spec.validate();
  struct Task {
    std::size_t variant, point;
    int trial;
  };
  std::vector<Task> tasks;
  for (std::size_t p = 0; p < spec.values.size(); ++p)
    for (int t = 0; t < spec.trials; ++t)
      for (std::size_t v = 0; v < spec.schemes.size(); ++v) tasks.push_back({v, p, t});

  std::ofstream partial;
  if (!spec.out.empty()) {
    partial.open(spec.out + ".partial", std::ios::trunc);
    if (!partial) throw ConfigError("cannot write `" + spec.out + ".partial`");
    partial << csv_header() << '\n';
  }

  std::vector<ResultRow> rows;
  rows.reserve(tasks.size());
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      const Task& t = tasks[k];
      ResultRow r = run_trial(spec, t.variant, t.point, t.trial);
      std::lock_guard<std::mutex> lock(mu);
      if (partial.is_open()) partial << csv_line(r) << '\n' << std::flush;
      if (progress)
        std::cerr << "[" << rows.size() + 1 << "/" << tasks.size() << "] " << r.scheme << " value=" << r.value
                  << " trial=" << r.trial << " SR=" << r.secrecy << " " << r.reason << "\n";
      rows.push_back(std::move(r));
    }
  };
  int nthreads = spec.threads > 0 ? spec.threads : int(std::max(1u, std::thread::hardware_concurrency()));
  nthreads = std::min<int>(nthreads, int(tasks.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.variant, a.point, a.trial) < std::tie(b.variant, b.point, b.trial);
  });
  MonteCarloOutput out;
  out.aggregates = aggregate(rows);
  out.rows = std::move(rows);

  if (!spec.out.empty()) {
    partial.close();
    std::ostringstream csv, timing;
    csv << csv_header() << '\n';
    timing << "scheme,value,trial,wall_s\n";
    for (const auto& r : out.rows) {
      csv << csv_line(r) << '\n';
      timing << r.scheme << ',' << r.value << ',' << r.trial << ',' << fmt(r.wall_s) << '\n';
    }
    write_file(spec.out + ".csv", csv.str());
    write_file(spec.out + ".json", aggregates_json(out.aggregates, spec));
    write_file(spec.out + ".timing.csv", timing.str());
    std::remove((spec.out + ".partial").c_str());
  }
  return out;
}

std::string result_to_json(const ResultFile& r) {
  json j;
  j["config"] = r.cfg.canonical();
  j["config_hash"] = hex64(r.cfg.hash());
  j["scheme"] = scheme_name(r.scheme);
  j["seed"] = r.seed;
  j["trial"] = r.trial;
  j["reason"] = r.reason;
  j["secrecy_rate"] = r.secrecy;
  json ch;
  ch["h_br"] = mat_json(r.ch.h_br);
  ch["h_bu"] = mat_json(r.ch.h_bu);
  ch["h_be"] = mat_json(r.ch.h_be);
  ch["h_ru"] = mat_json(r.ch.h_ru);
  ch["h_re"] = mat_json(r.ch.h_re);
  ch["g"] = mat_json(r.ch.g);
  ch["gamma"] = {r.ch.gamma.real(), r.ch.gamma.imag()};
  ch["theta_user"] = r.ch.theta_user;
  ch["theta_eve"] = r.ch.theta_eve;
  ch["theta_target"] = r.ch.theta_target;
  ch["hash"] = hex64(r.ch.hash());
  j["channels"] = ch;
  j["w"] = mat_json(r.w.w);
  j["phi"] = mat_json(r.phi.phi);
  return j.dump(1) + "\n";
}

ResultFile result_from_json(const std::string& text) {
  ResultFile r;
  try {
    const json j = json::parse(text);
    KeyValueFile kv = KeyValueFile::parse(j.at("config").get<std::string>(), "result config");
    r.cfg = scenario_from_kv(kv, true);
    r.scheme = parse_scheme(j.at("scheme").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.trial = j.at("trial").get<int>();
    r.reason = j.at("reason").get<std::string>();
    r.secrecy = j.at("secrecy_rate").get<double>();
    const json& c = j.at("channels");
    r.ch.h_br = mat_from(c.at("h_br"));
    r.ch.h_bu = mat_from(c.at("h_bu"));
    r.ch.h_be = mat_from(c.at("h_be"));
    r.ch.h_ru = mat_from(c.at("h_ru"));
    r.ch.h_re = mat_from(c.at("h_re"));
    r.ch.g = mat_from(c.at("g"));
    const auto gm = c.at("gamma").get<std::vector<double>>();
    if (gm.size() != 2) throw ConfigError("result file: bad gamma");
    r.ch.gamma = {gm[0], gm[1]};
    r.ch.theta_user = c.at("theta_user").get<double>();
    r.ch.theta_eve = c.at("theta_eve").get<double>();
    r.ch.theta_target = c.at("theta_target").get<double>();
    r.w.w = mat_from(j.at("w"));
    r.phi.phi = mat_from(j.at("phi"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("result file: ") + e.what());
  }
  if (r.w.w.rows() != r.ch.antennas() || r.w.w.cols() != r.ch.antennas() + 1 || r.phi.elements() != r.ch.elements())
    throw ConfigError("result file: dimensions do not match the channels");
  return r;
}

void save_result(const ResultFile& r, const std::string& path) { write_file(path, result_to_json(r)); }
ResultFile load_result(const std::string& path) { return result_from_json(read_file(path)); }

BeamReport beampattern_report(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi,
                              double spacing_ratio, int points) {
  if (points < 2) throw ContractViolation("beampattern_report: need at least two grid points");
  BeamReport b;
  const double deg = std::numbers::pi / 180.0;
  std::vector<double> th;
  b.step_deg = 180.0 / double(points - 1);
  for (int k = 0; k < points; ++k) {
    b.theta_deg.push_back(-90.0 + b.step_deg * k);
    th.push_back(b.theta_deg.back() * deg);
  }
  b.user_deg = ch.theta_user / deg;
  b.eve_deg = ch.theta_eve / deg;
  b.target_deg = ch.theta_target / deg;
  th.push_back(ch.theta_user);
  th.push_back(ch.theta_eve);
  th.push_back(ch.theta_target);
  const std::vector<double> p = beampattern(ch, w, phi, th, spacing_ratio);
  const double peak = *std::max_element(p.begin(), p.begin() + points);
  const double ref = std::max({peak, p[std::size_t(points)], p[std::size_t(points) + 1], p[std::size_t(points) + 2]});
  std::size_t arg = 0;
  for (int k = 0; k < points; ++k) {
    b.gain_db.push_back(to_db(p[std::size_t(k)] / ref));
    if (p[std::size_t(k)] > p[arg]) arg = std::size_t(k);
  }
  b.argmax_deg = b.theta_deg[arg];
  b.at_user_db = to_db(p[std::size_t(points)] / ref);
  b.at_eve_db = to_db(p[std::size_t(points) + 1] / ref);
  b.at_target_db = to_db(p[std::size_t(points) + 2] / ref);
  return b;
}

std::string beam_csv(const BeamReport& b) {
  std::ostringstream os;
  os << "theta_deg,gain_db\n";
  for (std::size_t k = 0; k < b.theta_deg.size(); ++k) os << fmt(b.theta_deg[k]) << ',' << fmt(b.gain_db[k]) << '\n';
  return os.str();
}

std::string beam_json(const BeamReport& b) {
  json j;
  j["points"] = b.theta_deg.size();
  j["step_deg"] = b.step_deg;
  j["argmax_deg"] = b.argmax_deg;
  j["user_deg"] = b.user_deg;
  j["eve_deg"] = b.eve_deg;
  j["target_deg"] = b.target_deg;
  j["at_user_db"] = b.at_user_db;
  j["at_eve_db"] = b.at_eve_db;
  j["at_target_db"] = b.at_target_db;
  return j.dump(2) + "\n";
}

}  // namespace aris
