#include <doctest.h>

#include <cmath>

#include "aris/scenario.hpp"
#include "aris/sysmodel.hpp"

using namespace aris;

namespace {

struct Case {
  ChannelSet ch;
  NoiseParams noise;
  Precoder w;
  RisCoeffs phi;
};

Case random_case(int m, int n, std::uint64_t seed) {
  Rng rng(seed);
  Case c;
  c.ch.h_br = rng.cnormal_mat(n, m);
  c.ch.h_bu = rng.cnormal_vec(m);
  c.ch.h_be = rng.cnormal_vec(m);
  c.ch.h_ru = rng.cnormal_vec(n);
  c.ch.h_re = rng.cnormal_vec(n);
  const CVec a = steering_vector(n, 0.5, 0.4);
  c.ch.gamma = cdouble(0.3, 0.2);
  c.ch.g = c.ch.gamma * a * a.adjoint();
  c.noise = {0.2, 0.3, 0.1, 0.15, 0.05, 0.2};
  c.w.w = 0.5 * rng.cnormal_mat(m, m + 1);
  c.phi.phi = rng.cnormal_vec(n);
  return c;
}

}  // namespace

TEST_CASE("precoder covariance") {
  Rng rng(41);
  Precoder w;
  w.w = rng.cnormal_mat(4, 5);
  CHECK(rtrace(w.covariance()) == doctest::Approx(w.w.squaredNorm()));
  CHECK(bs_power(w) == doctest::Approx(w.w.squaredNorm()));
  Precoder e;
  e.w = CMat::Zero(3, 4);
  e.w.leftCols(3) = CMat::Identity(3, 3);
  CHECK((e.covariance() - CMat::Identity(3, 3)).norm() < 1e-15);
}

TEST_CASE("receiver SNR and secrecy rate") {
  Case c = random_case(3, 5, 42);
  // Brute force of the received signal and noise.
  const CMat P = c.phi.diag();
  const cdouble s = (c.ch.h_bu.adjoint() + c.ch.h_ru.adjoint() * P * c.ch.h_br) * c.w.comm();
  const double den = c.noise.v1 * (c.ch.h_ru.adjoint() * P).squaredNorm() + c.noise.user;
  CHECK(receiver_snr(c.ch, c.w, c.phi, c.noise, Node::User) == doctest::Approx(std::norm(s) / den).epsilon(1e-12));

  RisCoeffs zero{CVec::Zero(5)};
  const double direct = std::norm(c.ch.h_bu.dot(c.w.comm())) / c.noise.user;
  CHECK(receiver_snr(c.ch, c.w, zero, c.noise, Node::User) == doctest::Approx(direct).epsilon(1e-12));

  Precoder nocomm = c.w;
  nocomm.w.col(3).setZero();
  CHECK(receiver_snr(c.ch, nocomm, c.phi, c.noise, Node::User) == 0.0);

  // Identical user and eve links leak everything.
  Case sym = c;
  sym.ch.h_be = sym.ch.h_bu;
  sym.ch.h_re = sym.ch.h_ru;
  sym.noise.eve = sym.noise.user;
  CHECK(secrecy_rate(sym.ch, sym.w, sym.phi, sym.noise) == 0.0);
  const Rates r = rates(c.ch, c.w, c.phi, c.noise);
  CHECK(secrecy_rate(c.ch, c.w, c.phi, c.noise) == doctest::Approx(std::max(0.0, r.user - r.eve)));
  CHECK(Rates{1.0, 0.0}.secrecy() == 1.0);
  CHECK(Rates{0.5, 1.0}.secrecy() == 0.0);

  // A common phase on w_c changes nothing.
  Precoder rot = c.w;
  rot.w.col(3) *= std::polar(1.0, 0.7);
  CHECK(secrecy_rate(c.ch, rot, c.phi, c.noise) == doctest::Approx(secrecy_rate(c.ch, c.w, c.phi, c.noise)));
  // ln(1 + (e − 1)) = 1.
  CHECK(std::log1p(std::exp(1.0) - 1.0) == doctest::Approx(1.0));
}

TEST_CASE("radar operators and SINR") {
  Case c = random_case(3, 4, 43);
  const RadarOperators ops = radar_operators(c.ch, c.phi, c.noise);
  const CMat r = c.w.covariance();
  const CMat j = radar_interference(ops, r);
  CHECK(is_hermitian(j));
  CHECK(min_eigenvalue(j) >= c.noise.radar - 1e-12);
  CHECK(min_eigenvalue(CMat(j - ops.noise)) >= -1e-12 * j.norm());

  // Brute-force assembly of the echo second moments.
  const CMat P = c.phi.diag();
  const CMat& h = c.ch.h_br;
  const CMat a = h.adjoint() * P.adjoint() * c.ch.g * P * h;
  const CMat b = c.noise.rho * h.adjoint() * P * h;
  const CMat cc = h.adjoint() * P.adjoint() * c.ch.g * P + h.adjoint() * P;
  const CMat d = h.adjoint() * P.adjoint();
  const CMat jj = b * r * b.adjoint() + c.noise.v1 * cc * cc.adjoint() + c.noise.v2 * d * d.adjoint() +
                  c.noise.radar * CMat::Identity(3, 3);
  const double ref = (a * r * a.adjoint() * jj.inverse()).trace().real();
  CHECK(radar_sinr(c.ch, c.w, c.phi, c.noise) == doctest::Approx(ref).epsilon(1e-10));
  CHECK(radar_sinr_from_ops(ops, r) == doctest::Approx(ref).epsilon(1e-10));

  RisCoeffs zero{CVec::Zero(4)};
  CHECK(radar_sinr(c.ch, c.w, zero, c.noise) == 0.0);
  const RadarOperators z = radar_operators(c.ch, zero, c.noise);
  CHECK((radar_interference(z, r) - c.noise.radar * CMat::Identity(3, 3)).norm() < 1e-15);

  NoiseParams quiet = c.noise;
  quiet.rho = quiet.v1 = quiet.v2 = 0.0;
  const RadarOperators q = radar_operators(c.ch, c.phi, quiet);
  CHECK(q.b.norm() == 0.0);
  CHECK(radar_sinr(c.ch, c.w, c.phi, quiet) ==
        doctest::Approx((a * r * a.adjoint()).trace().real() / quiet.radar).epsilon(1e-10));

  // The phase of γ only reaches ξ_R through the cross term of C Cᴴ, so it
  // drops out once the first-hop amplifier noise is off.
  Case rot = c;
  rot.ch.g *= std::polar(1.0, 1.1);
  NoiseParams no_v1 = c.noise;
  no_v1.v1 = 0.0;
  CHECK(radar_sinr(rot.ch, rot.w, rot.phi, no_v1) ==
        doctest::Approx(radar_sinr(c.ch, c.w, c.phi, no_v1)).epsilon(1e-10));
  const CMat hp = h.adjoint() * P;
  const CMat hpg = h.adjoint() * P.adjoint() * rot.ch.g * P;
  const CMat cross = hpg * hp.adjoint() + hp * hpg.adjoint();
  const CMat jrot = radar_interference(radar_operators(rot.ch, rot.phi, rot.noise), r);
  const CMat cc_rot = c.noise.v1 * (hpg * hpg.adjoint() + hp * hp.adjoint() + cross);
  CHECK((jrot - (b * r * b.adjoint() + cc_rot + c.noise.v2 * d * d.adjoint() +
                 c.noise.radar * CMat::Identity(3, 3)))
            .norm() <= 1e-12 * jrot.norm());
}

TEST_CASE("RIS power") {
  Case c = random_case(3, 4, 44);
  RisCoeffs zero{CVec::Zero(4)};
  const RisPower p0 = ris_power(c.ch, c.w, zero, c.noise);
  CHECK(p0.pa1 == 0.0);
  CHECK(p0.pa2 == 0.0);

  Case bare = c;
  bare.ch.h_br.setZero();
  bare.ch.g.setZero();
  RisCoeffs ones{CVec::Ones(4)};
  const RisPower pn = ris_power(bare.ch, bare.w, ones, bare.noise);
  CHECK(pn.pa1 == doctest::Approx(c.noise.v1 * 4));
  CHECK(pn.pa2 == doctest::Approx(c.noise.v2 * 4));

  // Trace forms of both amplifier outputs.
  const CMat P = c.phi.diag();
  const CMat& h = c.ch.h_br;
  const CMat r = c.w.covariance();
  const CMat pgp = P.adjoint() * c.ch.g * P;
  const double pa1 = (h.adjoint() * P.adjoint() * P * h * r).trace().real() + c.noise.v1 * c.phi.phi.squaredNorm();
  const double pa2 = (h.adjoint() * pgp.adjoint() * pgp * h * r).trace().real() + c.noise.v1 * pgp.squaredNorm() +
                     c.noise.v2 * c.phi.phi.squaredNorm();
  const RisPower p = ris_power(c.ch, c.w, c.phi, c.noise);
  CHECK(p.pa1 == doctest::Approx(pa1).epsilon(1e-12));
  CHECK(p.pa2 == doctest::Approx(pa2).epsilon(1e-12));

  // Sample mean of ‖Φ(H x + v₁)‖² over random symbols and amplifier noise.
  Rng rng(45);
  double acc = 0.0;
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) {
    const CVec s = rng.cnormal_vec(4);
    const CVec v1 = std::sqrt(c.noise.v1) * rng.cnormal_vec(4);
    acc += (P * (h * c.w.w * s + v1)).squaredNorm();
  }
  CHECK(acc / draws == doctest::Approx(p.pa1).epsilon(0.02));
}

TEST_CASE("beampattern") {
  const int n = 8;
  ChannelSet ch;
  ch.h_br = CMat::Identity(n, n);
  ch.g = CMat::Zero(n, n);
  Precoder w;
  w.w = CMat::Zero(n, n + 1);
  w.w.leftCols(n) = CMat::Identity(n, n);
  RisCoeffs phi{CVec::Ones(n)};
  std::vector<double> th;
  for (int k = -10; k <= 10; ++k) th.push_back(0.15 * k);
  for (double v : beampattern(ch, w, phi, th, 0.5)) CHECK(v == doctest::Approx(double(n)));

  // Matched filter toward θ₀ peaks at θ₀.
  const double theta0 = 0.45;
  w.w.setZero();
  w.w.col(n) = steering_vector(n, 0.5, theta0);
  std::vector<double> grid;
  for (int k = 0; k <= 720; ++k) grid.push_back(-M_PI / 2 + M_PI * k / 720.0);
  const std::vector<double> pat = beampattern(ch, w, phi, grid, 0.5);
  std::size_t best = 0;
  for (std::size_t k = 0; k < pat.size(); ++k) {
    CHECK(pat[k] >= 0.0);
    if (pat[k] > pat[best]) best = k;
  }
  CHECK(std::abs(grid[best] - theta0) <= M_PI / 720.0);
}

TEST_CASE("feasibility report") {
  Case c = random_case(2, 3, 46);
  ScenarioConfig cfg = default_scenario();
  cfg.antennas = 2;
  cfg.ris_elements = 3;
  cfg.amp_caps.assign(3, 2.0);
  cfg.sinr_threshold = 1e-3;
  Precoder w;
  w.w = CMat::Zero(2, 3);
  RisCoeffs zero{CVec::Zero(3)};
  const FeasibilityReport rep = check_feasibility(w, zero, c.ch, cfg, Scheme::Active);
  for (const auto& k : rep.checks) CHECK(k.ok == (k.name != "radar_sinr"));

  RisCoeffs edge{CVec::Constant(3, cdouble(0.0, 2.0))};
  const FeasibilityReport e = check_feasibility(w, edge, c.ch, cfg, Scheme::Active, false);
  for (const auto& k : e.checks)
    if (k.name == "amplitude") CHECK(k.ok);
  RisCoeffs over{CVec::Constant(3, cdouble(2.001, 0.0))};
  CHECK_FALSE(check_feasibility(w, over, c.ch, cfg, Scheme::Active, false).ok());
  RisCoeffs unit{CVec::Constant(3, std::polar(1.0, 0.3))};
  CHECK(check_feasibility(w, unit, c.ch, cfg, Scheme::Passive, false).ok());
}
