#include "aris/sysmodel.hpp"

#include <cmath>
#include <sstream>

#include "aris/kernels.hpp"

namespace aris {

NoiseParams noise_for(const ScenarioConfig& cfg, Scheme scheme) {
  const double s2 = cfg.noise_power();
  NoiseParams n;
  n.user = n.eve = n.radar = s2;
  if (scheme == Scheme::Active) n.v1 = n.v2 = s2;
  n.rho = cfg.si_coeff;
  return n;
}

double receiver_snr(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi,
                    const NoiseParams& noise, Node node) {
  const bool user = node == Node::User;
  const CVec& hb = user ? ch.h_bu : ch.h_be;
  const CVec& hr = user ? ch.h_ru : ch.h_re;
  const double sigma2 = user ? noise.user : noise.eve;
  // h_Rᴴ Φ as a row: entries conj(h_R,i) φ_i.
  const CVec reflected = hr.conjugate().cwiseProduct(phi.phi);
  const cdouble gain = (hb.adjoint() + reflected.transpose() * ch.h_br) * w.comm();
  const double denom = noise.v1 * reflected.squaredNorm() + sigma2;
  return std::norm(gain) / denom;
}

Rates rates(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi, const NoiseParams& noise) {
  return {std::log1p(receiver_snr(ch, w, phi, noise, Node::User)),
          std::log1p(receiver_snr(ch, w, phi, noise, Node::Eve))};
}

double secrecy_rate(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi,
                    const NoiseParams& noise) {
  return rates(ch, w, phi, noise).secrecy();
}

RadarOperators radar_operators(const ChannelSet& ch, const RisCoeffs& phi, const NoiseParams& noise) {
  const CMat P = phi.diag();
  const CMat& h = ch.h_br;
  RadarOperators ops;
  const CMat hPg = h.adjoint() * P.adjoint() * ch.g;  // Hᴴ Φᴴ G
  ops.a = hPg * P * h;
  ops.b = noise.rho * h.adjoint() * P * h;
  ops.c = hPg * P + h.adjoint() * P;
  ops.d = h.adjoint() * P.adjoint();
  const Eigen::Index m = h.cols();
  ops.noise = noise.v1 * ops.c * ops.c.adjoint() + noise.v2 * ops.d * ops.d.adjoint() +
              noise.radar * CMat::Identity(m, m);
  return ops;
}

CMat radar_interference(const RadarOperators& ops, const CMat& r) {
  return hermitian_part(ops.b * r * ops.b.adjoint() + ops.noise);
}

double radar_sinr_from_ops(const RadarOperators& ops, const CMat& r) {
  const CMat j = radar_interference(ops, r);
  Eigen::LLT<CMat> llt(j);
  if (llt.info() != Eigen::Success) throw NotPsdError("radar_sinr: J is not positive definite");
  // R = Σ w_i w_iᴴ is PSD; use its factor so tr(A R Aᴴ J⁻¹) = ‖L⁻¹ A F‖².
  const CMat f = psd_cholesky(r);
  const CMat y = llt.matrixL().solve(ops.a * f);
  return y.squaredNorm();
}

double radar_sinr(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi,
                  const NoiseParams& noise) {
  const RadarOperators ops = radar_operators(ch, phi, noise);
  const CMat j = radar_interference(ops, w.covariance());
  Eigen::LLT<CMat> llt(j);
  if (llt.info() != Eigen::Success) throw NotPsdError("radar_sinr: J is not positive definite");
  const CMat y = llt.matrixL().solve(ops.a * w.w);
  return y.squaredNorm();
}

RisPower ris_power(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi,
                   const NoiseParams& noise) {
  const CMat P = phi.diag();
  const CMat first = P * ch.h_br * w.w;             // Φ H W
  const CMat pgp = P.adjoint() * ch.g * P;          // Φᴴ G Φ
  const CMat second = pgp * ch.h_br * w.w;          // Φᴴ G Φ H W
  RisPower out;
  out.pa1 = first.squaredNorm() + noise.v1 * phi.phi.squaredNorm();
  out.pa2 = second.squaredNorm() + noise.v1 * pgp.squaredNorm() + noise.v2 * phi.phi.squaredNorm();
  return out;
}

double bs_power(const Precoder& w) { return w.w.squaredNorm(); }

std::vector<double> beampattern(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi,
                                const std::vector<double>& thetas, double spacing_ratio) {
  const int n = ch.elements();
  const CMat t = phi.diag() * ch.h_br * w.w;  // Φ H W
  const CMat s = t * t.adjoint();
  CMat a(n, Eigen::Index(thetas.size()));
  for (std::size_t k = 0; k < thetas.size(); ++k) a.col(Eigen::Index(k)) = steering_vector(n, spacing_ratio, thetas[k]);
  std::vector<double> out(thetas.size());
  kernels::active().quadform_batch(s.data(), std::size_t(n), a.data(), thetas.size(), out.data());
  return out;
}

bool FeasibilityReport::ok() const {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

std::string FeasibilityReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks)
    os << c.name << (c.ok ? " ok" : " VIOLATED") << " (value " << c.value << ", limit " << c.limit << ") ";
  return os.str();
}

FeasibilityReport check_feasibility(const Precoder& w, const RisCoeffs& phi, const ChannelSet& ch,
                                    const ScenarioConfig& cfg, Scheme scheme, bool sensing,
                                    double tol, double p0) {
  FeasibilityReport rep;
  const NoiseParams noise = noise_for(cfg, scheme);
  auto upper = [&](const std::string& name, double value, double limit) {
    FeasibilityCheck c{name, value, limit, 0.0, true};
    const double scale = std::max(std::abs(limit), 1e-300);
    c.slack = (limit - value) / scale;
    c.ok = c.slack >= -tol;
    rep.checks.push_back(c);
  };
  auto lower = [&](const std::string& name, double value, double limit) {
    FeasibilityCheck c{name, value, limit, 0.0, true};
    const double scale = std::max(std::abs(limit), 1e-300);
    c.slack = (value - limit) / scale;
    c.ok = limit == 0.0 ? value >= 0.0 : c.slack >= -tol;
    rep.checks.push_back(c);
  };

  upper("bs_power", bs_power(w), p0 > 0 ? p0 : cfg.bs_power_w);
  switch (scheme) {
    case Scheme::Active: {
      upper("ris_power", ris_power(ch, w, phi, noise).total(), cfg.ris_power_w);
      double worst = 0.0;
      for (int i = 0; i < phi.elements(); ++i)
        worst = std::max(worst, std::abs(phi.phi(i)) / std::max(cfg.amp_caps[std::size_t(i)], 1e-300));
      upper("amplitude", worst, 1.0);
      break;
    }
    case Scheme::Passive: {
      double dev = 0.0;
      for (int i = 0; i < phi.elements(); ++i) dev = std::max(dev, std::abs(std::abs(phi.phi(i)) - 1.0));
      upper("unit_modulus", 1.0 + dev, 1.0);
      break;
    }
    case Scheme::NoRis:
      upper("no_ris", 1.0 + phi.phi.norm(), 1.0);
      break;
  }
  if (sensing) lower("radar_sinr", radar_sinr(ch, w, phi, noise), cfg.sinr_threshold);
  return rep;
}

}  // namespace aris
