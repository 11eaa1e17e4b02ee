#include <cmath>
#include <limits>
#include <numbers>

#include "aris/validation.hpp"

namespace aris::validation {

namespace {
double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }
}  // namespace

CMat random_matrix(int r, int c, Rng& rng) { return rng.cnormal_mat(r, c); }

CMat random_pd(int n, Rng& rng) {
  const CMat x = rng.cnormal_mat(n, n);
  CMat j = x * x.adjoint();
  j.diagonal().array() += 0.1 + rng.uniform();
  return hermitian_part(j);
}

RisCoeffs random_phi(int n, double max_amp, Rng& rng) {
  RisCoeffs p;
  p.phi.resize(n);
  for (int i = 0; i < n; ++i)
    p.phi(i) = std::polar(max_amp * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform());
  return p;
}

Instance random_instance(int m, int n, Rng& rng, bool active) {
  Instance in;
  in.ch.h_br = rng.cnormal_mat(n, m);
  in.ch.h_bu = rng.cnormal_vec(m);
  in.ch.h_be = rng.cnormal_vec(m);
  in.ch.h_ru = rng.cnormal_vec(n);
  in.ch.h_re = rng.cnormal_vec(n);
  const double theta = uniform(rng, -1.2, 1.2);
  in.a = steering_vector(n, 0.5, theta);
  in.ch.gamma = 0.5 * rng.cnormal();
  in.ch.g = in.ch.gamma * in.a * in.a.adjoint();
  in.ch.theta_target = theta;

  in.noise.user = uniform(rng, 0.05, 0.5);
  in.noise.eve = uniform(rng, 0.05, 0.5);
  in.noise.radar = uniform(rng, 0.05, 0.5);
  if (active) {
    in.noise.v1 = uniform(rng, 0.05, 0.5);
    in.noise.v2 = uniform(rng, 0.05, 0.5);
  }
  in.noise.rho = uniform(rng, 0.05, 0.5);
  in.w.w = 0.5 * rng.cnormal_mat(m, m + 1);
  in.phi = random_phi(n, active ? 1.5 : 1.0, rng);
  if (!active)
    for (int i = 0; i < n; ++i) in.phi.phi(i) /= std::abs(in.phi.phi(i));
  return in;
}

double quartic_trace(const ChannelSet& ch, const RisCoeffs& phi, const CMat& e, double sigma_v1) {
  const CMat P = phi.diag();
  const CMat& h = ch.h_br;
  const CMat x = h.adjoint() * P.adjoint() * ch.g * P * P.adjoint() * ch.g.adjoint() * P * h;
  return sigma_v1 * (e * x).trace().real();
}

double cubic_trace(const ChannelSet& ch, const RisCoeffs& phi, const CMat& e, double sigma_v1) {
  const CMat P = phi.diag();
  const CMat& h = ch.h_br;
  const CMat x = h.adjoint() * P.adjoint() * ch.g * P * P.adjoint() * h;
  return 2.0 * sigma_v1 * (e * x).trace().real();
}

double quadratic_trace(const ChannelSet& ch, const RisCoeffs& phi, const CMat& e, const CMat& r,
                       const NoiseParams& noise) {
  const CMat P = phi.diag();
  const CMat& h = ch.h_br;
  const CMat b = h.adjoint() * P * h;
  const CMat x = noise.rho * noise.rho * b * r * b.adjoint() + noise.v1 * h.adjoint() * P * P.adjoint() * h +
                 noise.v2 * h.adjoint() * P.adjoint() * P * h;
  return (e * x).trace().real();
}

cdouble linear_trace(const ChannelSet& ch, const RisCoeffs& phi, const RisCoeffs& phi_l, const CMat& r,
                     const NoiseParams& noise) {
  const CMat& h = ch.h_br;
  auto a_of = [&](const RisCoeffs& p) {
    const CMat P = p.diag();
    return CMat(h.adjoint() * P.adjoint() * ch.g * P * h);
  };
  const CMat al = a_of(phi_l);
  const RadarOperators ops = radar_operators(ch, phi_l, noise);
  const CMat jl = radar_interference(ops, r);
  const CMat jinv = jl.inverse();
  return (a_of(phi) * r * al.adjoint() * jinv).trace();
}

CMat quartic_q3(const ChannelSet& ch, const CMat& xi3) {
  const Eigen::Index n = ch.elements();
  const CVec vg = vec(ch.g);
  const CMat inner = kron(CMat(xi3.transpose()), CMat::Identity(n, n));
  return vg.conjugate().asDiagonal() * inner * vg.asDiagonal();
}

double rank1_defect(const CMat& m) {
  Eigen::JacobiSVD<CMat> svd(m);
  const RVec s = svd.singularValues();
  if (s.size() < 2 || s(0) == 0.0) return 0.0;
  return s(1) / s(0);
}

GridResult grid_search_n2(const std::function<double(const RisCoeffs&)>& f,
                          const std::function<bool(const RisCoeffs&)>& feasible, double cap0, double cap1,
                          bool unit_modulus) {
  // x = (β0, β1, ϑ0, ϑ1)
  auto make = [](const double* x) {
    RisCoeffs p;
    p.phi.resize(2);
    p.phi(0) = std::polar(x[0], x[2]);
    p.phi(1) = std::polar(x[1], x[3]);
    return p;
  };
  const double caps[2] = {unit_modulus ? 1.0 : cap0, unit_modulus ? 1.0 : cap1};
  auto value = [&](const double* x) {
    for (int i = 0; i < 2; ++i)
      if (x[i] < 0.0 || x[i] > caps[i]) return -std::numeric_limits<double>::infinity();
    const RisCoeffs p = make(x);
    if (!feasible(p)) return -std::numeric_limits<double>::infinity();
    const double v = f(p);
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
  };

  const int nb = unit_modulus ? 1 : 17;
  const int nt = 72;
  const double two_pi = 2.0 * std::numbers::pi;
  double best[4] = {caps[0], caps[1], 0.0, 0.0};
  double best_v = -std::numeric_limits<double>::infinity();
  double x[4];
  for (int i0 = 0; i0 < nb; ++i0)
    for (int i1 = 0; i1 < nb; ++i1)
      for (int t0 = 0; t0 < nt; ++t0)
        for (int t1 = 0; t1 < nt; ++t1) {
          x[0] = unit_modulus ? 1.0 : caps[0] * i0 / (nb - 1);
          x[1] = unit_modulus ? 1.0 : caps[1] * i1 / (nb - 1);
          x[2] = two_pi * t0 / nt;
          x[3] = two_pi * t1 / nt;
          const double v = value(x);
          if (v > best_v) best_v = v, std::copy(x, x + 4, best);
        }

  // Compass search from the best grid cell.
  double step[4] = {unit_modulus ? 0.0 : caps[0] / (nb - 1), unit_modulus ? 0.0 : caps[1] / (nb - 1), two_pi / nt,
                    two_pi / nt};
  for (int round = 0; round < 400; ++round) {
    bool moved = false;
    for (int k = 0; k < 4; ++k) {
      if (step[k] == 0.0) continue;
      for (double sgn : {1.0, -1.0}) {
        std::copy(best, best + 4, x);
        x[k] += sgn * step[k];
        if (k < 2) x[k] = std::clamp(x[k], 0.0, caps[k]);
        const double v = value(x);
        if (v > best_v) {
          best_v = v, std::copy(x, x + 4, best);
          moved = true;
        }
      }
    }
    if (!moved) {
      double biggest = 0.0;
      for (double& s : step) s *= 0.5, biggest = std::max(biggest, s);
      if (biggest < 1e-9) break;
    }
  }
  return {make(best), best_v};
}

}  // namespace aris::validation
