#include "aris/aodriver.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace aris {

std::string termination_name(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::MaxIterations: return "max-iterations";
    case Termination::SensingInfeasible: return "sensing-infeasible";
  }
  return "?";
}

std::string IterationTrace::to_jsonl() const {
  std::ostringstream os;
  for (const auto& r : records) {
    nlohmann::json j;
    j["iteration"] = r.iteration;
    j["secrecy_rate"] = r.secrecy;
    j["radar_sinr"] = r.radar_sinr;
    j["radar_sinr_db"] = r.radar_sinr_db;
    j["bs_power"] = r.bs_power;
    j["ris_power"] = r.ris_power;
    j["inner_w"] = r.inner_w;
    j["inner_phi"] = r.inner_phi;
    j["w_status"] = r.w_status;
    j["phi_status"] = r.phi_status;
    j["wall_s"] = r.wall_s;
    os << j.dump() << '\n';
  }
  return os.str();
}

std::vector<double> IterationTrace::secrecy() const {
  std::vector<double> s;
  for (const auto& r : records) s.push_back(r.secrecy);
  return s;
}

StepLimits limits_for(const ScenarioConfig& cfg, Scheme scheme) {
  StepLimits l;
  l.p0 = cfg.bs_power_w;
  l.p_ris = cfg.ris_power_w;
  l.gamma_r = cfg.sinr_threshold;
  l.sensing = scheme != Scheme::NoRis;
  l.ris_power = scheme == Scheme::Active;
  return l;
}

namespace {

Precoder initial_precoder(const ChannelSet& ch, const RisCoeffs& phi, double p0) {
  const int m = ch.antennas();
  Precoder w;
  w.w = CMat::Zero(m, m + 1);
  for (int i = 0; i < m; ++i) w.w(i, i) = std::sqrt(p0 / (2.0 * m));
  const CVec reflected = ch.h_ru.conjugate().cwiseProduct(phi.phi);
  const CVec heff = ch.h_bu + ch.h_br.adjoint() * reflected.conjugate();
  const double nrm = heff.norm();
  CVec wc = nrm > 0.0 ? CVec(heff / nrm) : CVec(CVec::Unit(m, 0));
  w.w.col(m) = wc * std::sqrt(p0 / 2.0);
  return w;
}

// Largest β ∈ [0, cap] with P_A1 + P_A2 ≤ P_RIS at β·(unit phases).
double amplitude_bisection(const ChannelSet& ch, const Precoder& w, const CVec& phases,
                           const NoiseParams& noise, double cap, double p_ris) {
  auto power = [&](double b) { return ris_power(ch, w, RisCoeffs{phases * b}, noise).total(); };
  if (power(cap) <= p_ris) return cap;
  double lo = 0.0, hi = cap;
  for (int k = 0; k < 80; ++k) {
    const double mid = 0.5 * (lo + hi);
    (power(mid) <= p_ris ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

InitPoint initialize(const ChannelSet& ch, const ScenarioConfig& cfg, Scheme scheme, Rng& rng) {
  const int n = ch.elements();
  const NoiseParams noise = noise_for(cfg, scheme);
  const StepLimits lim = limits_for(cfg, scheme);
  if (scheme == Scheme::NoRis) {
    InitPoint ip;
    ip.phi.phi = CVec::Zero(n);
    ip.w = initial_precoder(ch, ip.phi, cfg.bs_power_w);
    return ip;
  }
  double cap = 1.0;
  if (scheme == Scheme::Active) {
    cap = cfg.amp_caps.empty() ? 1.0 : cfg.amp_caps[0];
    for (double c : cfg.amp_caps) cap = std::min(cap, c);
  }

  auto draw = [&]() {
    CVec ph(n);
    for (int i = 0; i < n; ++i) ph(i) = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    InitPoint ip;
    if (scheme == Scheme::Passive) {
      ip.phi.phi = ph;
      ip.w = initial_precoder(ch, ip.phi, cfg.bs_power_w);
      return ip;
    }
    // W depends on Φ through h̄_U and the RIS budget depends on W: two passes.
    Precoder w = initial_precoder(ch, RisCoeffs{ph * cap}, cfg.bs_power_w);
    double beta = amplitude_bisection(ch, w, ph, noise, cap, cfg.ris_power_w);
    w = initial_precoder(ch, RisCoeffs{ph * beta}, cfg.bs_power_w);
    beta = amplitude_bisection(ch, w, ph, noise, beta, cfg.ris_power_w);
    ip.phi.phi = ph * beta;
    ip.w = w;
    return ip;
  };

  InitPoint best = draw();
  if (!lim.sensing || lim.gamma_r <= 0.0) return best;
  double best_sinr = radar_sinr(ch, best.w, best.phi, noise);
  int draws = 1;
  while (best_sinr < lim.gamma_r && draws <= cfg.algo.init_retries) {
    InitPoint ip = draw();
    ++draws;
    const double s = radar_sinr(ch, ip.w, ip.phi, noise);
    if (s > best_sinr) best = ip, best_sinr = s;
  }
  best.draws = draws;
  best.sensing_infeasible = best_sinr < lim.gamma_r;
  return best;
}

AoResult run(const ChannelSet& ch, const ScenarioConfig& cfg, Scheme scheme, Rng& rng) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const NoiseParams noise = noise_for(cfg, scheme);
  StepLimits lim = limits_for(cfg, scheme);

  AoResult res;
  res.scheme = scheme;
  InitPoint ip = initialize(ch, cfg, scheme, rng);
  bool sensing_infeasible = ip.sensing_infeasible;
  if (sensing_infeasible) lim.sensing = false;
  res.w = ip.w;
  res.phi = ip.phi;

  auto record = [&](int it, int iw, int iphi, std::vector<std::string> ws, std::vector<std::string> ps) {
    IterationRecord r;
    r.iteration = it;
    r.secrecy = secrecy_rate(ch, res.w, res.phi, noise);
    r.radar_sinr = radar_sinr(ch, res.w, res.phi, noise);
    r.radar_sinr_db = r.radar_sinr > 0.0 ? 10.0 * std::log10(r.radar_sinr) : -std::numeric_limits<double>::infinity();
    r.bs_power = bs_power(res.w);
    r.ris_power = ris_power(ch, res.w, res.phi, noise).total();
    r.inner_w = iw;
    r.inner_phi = iphi;
    r.w_status = std::move(ws);
    r.phi_status = std::move(ps);
    r.wall_s = std::chrono::duration<double>(clock::now() - t0).count();
    res.trace.records.push_back(std::move(r));
  };

  try {
    record(0, 0, 0, {}, {});
    res.initial_radar_sinr = res.trace.records.back().radar_sinr;
    res.reason = Termination::MaxIterations;
    for (int t = 1; t <= cfg.algo.max_outer; ++t) {
      const double s_prev = res.trace.records.back().secrecy;
      WStepResult wr = solve_wstep(ch, res.w, res.phi, noise, lim, cfg.algo, rng);
      res.w = wr.w;
      if (wr.sensing_infeasible) sensing_infeasible = true, lim.sensing = false;
      std::vector<std::string> ws, ps;
      for (auto s : wr.statuses) ws.push_back(conic::status_name(s));
      int iphi = 0;
      if (scheme != Scheme::NoRis) {
        PhiStepResult pr = solve_phistep(ch, res.w, res.phi, noise, lim, scheme, cfg.amp_caps, cfg.algo, rng);
        res.phi = pr.phi;
        iphi = pr.iterations;
        if (pr.sensing_infeasible) sensing_infeasible = true, lim.sensing = false;
        for (auto s : pr.statuses) ps.push_back(conic::status_name(s));
      }
      record(t, wr.iterations, iphi, std::move(ws), std::move(ps));
      res.outer_iterations = t;
      const double s_now = res.trace.records.back().secrecy;
      // Φ is fixed without a RIS, so one W-step loop is the whole problem.
      if (scheme == Scheme::NoRis || std::abs(s_now - s_prev) < cfg.algo.outer_tol * std::max(1.0, std::abs(s_now))) {
        res.reason = Termination::Converged;
        break;
      }
    }
  } catch (const std::exception& e) {
    throw AoFailure(e.what(), res.trace);
  }
  if (sensing_infeasible && scheme != Scheme::NoRis) res.reason = Termination::SensingInfeasible;
  return res;
}

ComplexityEstimate complexity_estimate(int m, int n, int t_ao, int t1, int t2) {
  ComplexityEstimate c;
  c.j1 = m + 4.0;
  c.k1 = m + 1.0;
  c.n1 = std::pow(m + 1.0, 3);
  c.o1 = std::sqrt(c.j1 * c.k1) * c.n1 * (c.n1 * c.n1 + c.n1 * c.j1 * c.k1 * c.k1 + c.j1 * std::pow(c.k1, 3));
  c.j2 = 2.0;
  c.k2 = n + 1.0;
  c.n2 = std::pow(n + 1.0, 2);
  c.m2 = 2.0;
  c.a2 = std::pow(n + 1.0, 2);
  c.o2 = std::sqrt(c.j2 * c.k2 + 2.0 * c.m2) * c.n2 *
         (c.n2 * c.n2 + c.n2 * c.j2 * c.k2 * c.k2 + c.j2 * std::pow(c.k2, 3) + c.n2 * c.m2 * c.a2);
  c.total = double(t_ao) * (t1 * c.o1 + t2 * c.o2);
  return c;
}

}  // namespace aris
