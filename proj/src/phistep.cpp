#include "aris/phistep.hpp"

#include <cmath>
#include <limits>

namespace aris {

namespace {

CMat embed(const CMat& top, Eigen::Index n, double corner = 0.0) {
  CMat m = CMat::Zero(n, n);
  m.topLeftCorner(top.rows(), top.cols()) = top;
  m(n - 1, n - 1) = corner;
  return m;
}

// Drop the zero columns psd_cholesky leaves past the numerical rank.
CMat trimmed_factor(const CMat& m) {
  const CMat l = psd_cholesky(hermitian_part(m));
  std::vector<Eigen::Index> keep;
  const double ref = l.norm();
  for (Eigen::Index j = 0; j < l.cols(); ++j)
    if (l.col(j).norm() > 1e-14 * ref) keep.push_back(j);
  CMat out(l.rows(), Eigen::Index(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) out.col(Eigen::Index(j)) = l.col(keep[j]);
  return out;
}

double lin(const CMat& h, const CMat& v) { return (h * v).trace().real(); }

}  // namespace

RateMatrices rate_matrices(const ChannelSet& ch, const Precoder& w, const NoiseParams& noise, Node node) {
  const bool user = node == Node::User;
  const CVec& hb = user ? ch.h_bu : ch.h_be;
  const CVec& hr = user ? ch.h_ru : ch.h_re;
  const double sigma2 = user ? noise.user : noise.eve;
  const Eigen::Index n = ch.elements();
  const CVec wc = w.comm();
  const CVec b = hr.conjugate().cwiseProduct(ch.h_br * wc);  // diag(h_Rᴴ) H w_c
  const cdouble c = hb.dot(wc);                              // h_Bᴴ w_c
  const RVec hn = noise.v1 * hr.cwiseAbs2();

  RateMatrices r;
  r.h1 = CMat::Zero(n + 1, n + 1);
  r.h1.topLeftCorner(n, n) = b * b.adjoint();
  r.h1.topLeftCorner(n, n).diagonal() += hn.cast<cdouble>();
  r.h1.block(0, n, n, 1) = b * std::conj(c);
  r.h1.block(n, 0, 1, n) = c * b.adjoint();
  r.h1(n, n) = std::norm(c) + sigma2;
  r.h2 = CMat::Zero(n + 1, n + 1);
  r.h2.topLeftCorner(n, n).diagonal() = hn.cast<cdouble>();
  r.h2(n, n) = sigma2;
  return r;
}

CMat lift_phi(const RisCoeffs& phi) {
  const Eigen::Index n = phi.elements();
  CVec z(n + 1);
  z.head(n) = phi.phi.conjugate();
  z(n) = 1.0;
  return z * z.adjoint();
}

CVec vhat(const RisCoeffs& phi) {
  const CVec v = phi.phi.conjugate();
  return vec(CMat(v * v.adjoint()));
}

double lemma3_bound(const CMat& k, const CMat& l, const CMat& k_l, const CMat& l_l) {
  const double nk = k_l.norm(), nl = l_l.norm();
  const double b2 = nk > 0.0 && nl > 0.0 ? nk / nl : 1.0;
  return k.squaredNorm() / b2 + b2 * l.squaredNorm();
}

SinrQuadratic assemble_sinr_quadratic(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi_l,
                                      const NoiseParams& noise, double gamma_r) {
  const Eigen::Index n = ch.elements();
  const CMat& h = ch.h_br;
  const CMat r = w.covariance();
  const RadarOperators ops = radar_operators(ch, phi_l, noise);
  const CMat j = radar_interference(ops, r);
  Eigen::LLT<CMat> llt(j);
  if (llt.info() != Eigen::Success) throw NotPsdError("assemble_sinr_quadratic: J is not positive definite");

  SinrQuadratic q;
  const CMat jinv_a = llt.solve(ops.a);                       // J⁻¹ A_l
  const CMat ara = ops.a * r * ops.a.adjoint();
  q.e = hermitian_part(llt.solve(CMat(llt.solve(ara).adjoint())));
  q.f = hermitian_part(h * q.e * h.adjoint());
  const CMat y = h * jinv_a * r * h.adjoint();                // H J⁻¹ A_l R Hᴴ
  const CVec vg = vec(ch.g);
  q.p1 = vg.conjugate().cwiseProduct(vec(y));

  const CMat hrh = hermitian_part(h * r * h.adjoint());
  q.xi1 = noise.rho * noise.rho * hrh;
  q.xi1.diagonal().array() += noise.v1 + noise.v2;
  const CVec p21 = vec(q.f).conjugate().cwiseProduct(vec(q.xi1));

  const CMat P = phi_l.diag();
  const double nk = (P.adjoint() * ch.g * P).norm();
  const double nl = (P.adjoint() * q.f).norm();
  q.beta2 = nk > 0.0 && nl > 0.0 ? nk / nl : 1.0;
  CVec p22 = CVec::Zero(n * n);
  if (noise.v1 > 0.0) {
    const CMat f2 = q.f * q.f;
    for (Eigen::Index i = 0; i < n; ++i) p22(i + i * n) = noise.v1 * q.beta2 * f2(i, i).real();
  }
  q.p2 = p21 + p22;

  // Blocks of Q₁ and Q₂ along the diagonal all coincide for G = γ a aᴴ; take the first.
  const CVec g1 = ch.g.col(0);
  q.m11 = hermitian_part(noise.v1 * g1.conjugate().asDiagonal() * q.f * g1.asDiagonal());
  q.m12 = CMat::Zero(n, n);
  q.m12.diagonal() = (noise.v1 / q.beta2 * g1.cwiseAbs2()).cast<cdouble>();
  q.m1 = q.m11 + q.m12;

  const CMat s1 = unvec_sigma(CVec(q.p1 - q.p2), n);
  q.n1 = hermitian_part(s1.adjoint() + unvec_sigma(q.p1, n));
  q.alpha2 = noise.radar * rtrace(q.e);
  q.e2 = q.alpha2 + gamma_r;
  return q;
}

CMat quartic_q1(const ChannelSet& ch, const CMat& f, double sigma_v1) {
  const Eigen::Index n = ch.elements();
  const CVec vg = vec(ch.g);
  const CMat inner = kron(CMat::Identity(n, n), f);
  return sigma_v1 * vg.conjugate().asDiagonal() * inner * vg.asDiagonal();
}

CMat quartic_q2(const ChannelSet& ch, double sigma_v1, double beta2) {
  const CVec vg = vec(ch.g);
  CMat q = CMat::Zero(vg.size(), vg.size());
  q.diagonal() = (sigma_v1 / beta2 * vg.cwiseAbs2()).cast<cdouble>();
  return q;
}

double sinr_minorizer(const SinrQuadratic& q, const RisCoeffs& phi) {
  const CVec v = phi.phi.conjugate();
  const CMat vv = v * v.adjoint();
  return -(vv * q.m1 * vv).trace().real() + (q.n1 * vv).trace().real() - q.alpha2;
}

PowerQuadratic ris_power_quadratic(const ChannelSet& ch, const Precoder& w, const NoiseParams& noise) {
  const Eigen::Index n = ch.elements();
  const CMat hrh = hermitian_part(ch.h_br * w.covariance() * ch.h_br.adjoint());
  PowerQuadratic q;
  q.xi2 = hrh;
  q.xi2.diagonal().array() += noise.v1 + noise.v2;
  q.xi3 = hrh;
  q.xi3.diagonal().array() += noise.v1;
  // Row blocks of Q₃ coincide for G = γ a aᴴ; the first gives M₂.
  const CVec g0 = ch.g.row(0).transpose();
  q.m2 = hermitian_part(g0.asDiagonal() * q.xi3 * g0.conjugate().asDiagonal());
  q.n2 = CMat::Zero(n, n);
  q.n2.diagonal() = q.xi2.diagonal().real().cast<cdouble>();
  return q;
}

double ris_power_quadratic_value(const PowerQuadratic& q, const RisCoeffs& phi) {
  const CVec v = phi.phi.conjugate();
  const CMat vv = v * v.adjoint();
  return (vv * q.m2 * vv).trace().real() + (q.n2 * vv).trace().real();
}

PhiStepContext build_phi_context(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi_l,
                                 const NoiseParams& noise, const StepLimits& limits, Scheme scheme,
                                 const std::vector<double>& caps) {
  if (scheme == Scheme::NoRis) throw ContractViolation("build_phi_context: no RIS to optimize");
  if (phi_l.elements() != ch.elements()) throw DimensionError("build_phi_context: RIS size mismatch");
  if (scheme == Scheme::Active && caps.size() != std::size_t(ch.elements()))
    throw DimensionError("build_phi_context: one amplitude cap per element");
  PhiStepContext c;
  c.ch = ch;
  c.w = w;
  c.noise = noise;
  c.limits = limits;
  c.scheme = scheme;
  c.caps = caps;
  c.anchor = phi_l;
  c.user = rate_matrices(ch, w, noise, Node::User);
  c.eve = rate_matrices(ch, w, noise, Node::Eve);
  c.sinr = assemble_sinr_quadratic(ch, w, phi_l, noise, limits.gamma_r);
  c.l1 = trimmed_factor(c.sinr.m1);
  if (scheme == Scheme::Active) {
    c.power = ris_power_quadratic(ch, w, noise);
    c.l2 = trimmed_factor(c.power.m2);
  }
  return c;
}

conic::SdpProblem build_phi_sdp(const PhiStepContext& ctx) {
  const Eigen::Index n = ctx.ch.elements();
  conic::SdpProblem p;
  const std::size_t b = p.add_block(n + 1, "Vbar");
  const CMat va = lift_phi(ctx.anchor);
  const double su2 = lin(ctx.user.h2, va);
  const double se1 = lin(ctx.eve.h1, va);

  conic::LogTerm u1, e2;
  u1.label = "user_signal";
  u1.arg.add(b, ctx.user.h1);
  e2.label = "eve_noise";
  e2.arg.add(b, ctx.eve.h2);
  p.log_terms.push_back(u1);
  p.log_terms.push_back(e2);
  p.objective.add(b, CMat(-ctx.user.h2 / su2 - ctx.eve.h1 / se1));
  p.objective.constant = 2.0 - std::log(su2) - std::log(se1);

  if (ctx.limits.sensing) {
    if (ctx.l1.cols() > 0) {
      conic::Affine bound;
      bound.add(b, embed(ctx.sinr.n1, n + 1));
      bound.constant = -ctx.sinr.e2;
      p.lmis.push_back(conic::frobenius_quadratic_as_lmi(b, n, ctx.l1, bound, "radar_sinr"));
    } else {
      conic::LinearConstraint c;
      c.label = "radar_sinr";
      c.lhs.add(b, CMat(-embed(ctx.sinr.n1, n + 1)));
      c.lhs.constant = ctx.sinr.e2;
      p.linear.push_back(c);
    }
  }
  if (ctx.scheme == Scheme::Active && ctx.limits.ris_power) {
    conic::Affine bound;
    bound.add(b, CMat(-embed(ctx.power.n2, n + 1)));
    bound.constant = ctx.limits.p_ris;
    p.lmis.push_back(conic::frobenius_quadratic_as_lmi(b, n, ctx.l2, bound, "ris_power"));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ctx.scheme == Scheme::Active)
      p.entries.push_back({b, i, conic::Sense::LessEqual, ctx.caps[std::size_t(i)] * ctx.caps[std::size_t(i)],
                           "amp" + std::to_string(i)});
    else
      p.entries.push_back({b, i, conic::Sense::Equal, 1.0, "unit" + std::to_string(i)});
  }
  p.entries.push_back({b, n, conic::Sense::Equal, 1.0, "corner"});
  return p;
}

double phi_surrogate(const PhiStepContext& ctx, const CMat& vbar) {
  const CMat va = lift_phi(ctx.anchor);
  const double su2 = lin(ctx.user.h2, va);
  const double se1 = lin(ctx.eve.h1, va);
  return std::log(lin(ctx.user.h1, vbar)) + std::log(lin(ctx.eve.h2, vbar)) - lin(ctx.user.h2, vbar) / su2 -
         lin(ctx.eve.h1, vbar) / se1 + 2.0 - std::log(su2) - std::log(se1);
}

bool phi_feasible(const PhiStepContext& ctx, const RisCoeffs& phi, double tol) {
  if (!phi.phi.allFinite()) return false;
  for (Eigen::Index i = 0; i < phi.elements(); ++i) {
    const double a = std::abs(phi.phi(i));
    if (ctx.scheme == Scheme::Active && a > ctx.caps[std::size_t(i)] * (1.0 + tol)) return false;
    if (ctx.scheme == Scheme::Passive && std::abs(a - 1.0) > tol) return false;
  }
  if (ctx.scheme == Scheme::Active && ctx.limits.ris_power &&
      ris_power(ctx.ch, ctx.w, phi, ctx.noise).total() > ctx.limits.p_ris * (1.0 + tol))
    return false;
  if (ctx.limits.sensing && ctx.limits.gamma_r > 0.0 &&
      radar_sinr(ctx.ch, ctx.w, phi, ctx.noise) < ctx.limits.gamma_r * (1.0 - tol))
    return false;
  return true;
}

namespace {

// Largest c ∈ [0, c_max] with P_A1 + P_A2 ≤ P_RIS at c·φ (power is increasing in c).
double power_scale(const PhiStepContext& ctx, const RisCoeffs& phi, double c_max) {
  auto power = [&](double c) {
    RisCoeffs s{phi.phi * c};
    return ris_power(ctx.ch, ctx.w, s, ctx.noise).total();
  };
  if (power(c_max) <= ctx.limits.p_ris) return c_max;
  double lo = 0.0, hi = c_max;
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    (power(mid) <= ctx.limits.p_ris ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

RisCoeffs recover_rank1_phi(const conic::SdpSolution& sol, int trials, const PhiStepContext& ctx, Rng& rng) {
  const Eigen::Index n = ctx.ch.elements();
  if (sol.blocks.size() != 1 || sol.blocks[0].rows() != n + 1)
    throw DimensionError("recover_rank1_phi: expected one (N+1) block");
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(sol.blocks[0]));
  const RVec ev = es.eigenvalues().cwiseMax(0.0);
  const CVec nu = es.eigenvectors().col(n);
  const CMat half = es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  const bool rank_one = ev(n - 1) <= 1e-6 * ev(n) && std::abs(nu(n)) > 1e-8;

  auto from_v = [&](const CVec& v) { return RisCoeffs{v.conjugate()}; };
  auto principal = [&]() {
    const cdouble last = nu(n);
    const cdouble align = std::abs(last) > 0.0 ? std::conj(last) / std::abs(last) : cdouble(1.0);
    return from_v(nu.head(n) * (std::sqrt(ev(n)) * align));
  };
  auto normalized = [&](const CVec& xi) {
    if (std::abs(xi(n)) < 1e-300) return RisCoeffs{CVec::Zero(n)};
    return from_v(xi.head(n) / xi(n));
  };

  // Returns up to two repaired variants: as drawn, and pushed to the largest feasible scale.
  auto repair = [&](RisCoeffs phi, std::vector<RisCoeffs>& out) {
    if (!phi.phi.allFinite()) return;
    if (ctx.scheme == Scheme::Passive) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double a = std::abs(phi.phi(i));
        phi.phi(i) = a > 0.0 ? phi.phi(i) / a : cdouble(1.0);
      }
      out.push_back(phi);
      return;
    }
    double c_cap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double a = std::abs(phi.phi(i)), cap = ctx.caps[std::size_t(i)];
      if (a > cap) phi.phi(i) *= cap / a;
      if (a > 0.0) c_cap = std::min(c_cap, cap / std::abs(phi.phi(i)));
    }
    if (!std::isfinite(c_cap)) return;
    if (ctx.limits.ris_power) {
      const double c1 = power_scale(ctx, phi, 1.0);
      out.push_back(RisCoeffs{phi.phi * c1});
      const double c2 = power_scale(ctx, phi, c_cap);
      if (c2 > c1 * (1.0 + 1e-9)) out.push_back(RisCoeffs{phi.phi * c2});
    } else {
      out.push_back(phi);
    }
  };

  auto score = [&](const RisCoeffs& phi) { return secrecy_objective(ctx.ch, ctx.w, phi, ctx.noise); };

  if (rank_one) {
    std::vector<RisCoeffs> c;
    repair(principal(), c);
    for (const auto& phi : c)
      if (phi_feasible(ctx, phi)) return phi;
  }
  if (trials <= 0) throw RecoveryFailure("recover_rank1_phi: no randomization trials and solution is not rank one");

  RisCoeffs best;
  double best_f = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    std::vector<RisCoeffs> c;
    if (t == 0)
      repair(principal(), c);
    else if (t == 1)
      repair(normalized(nu), c);
    else
      repair(normalized(CVec(half * rng.cnormal_vec(n + 1))), c);
    for (const auto& phi : c) {
      if (!phi_feasible(ctx, phi)) continue;
      const double f = score(phi);
      if (f > best_f) best_f = f, best = phi;
    }
  }
  if (!std::isfinite(best_f))
    throw RecoveryFailure("recover_rank1_phi: no feasible candidate among " + std::to_string(trials));
  return best;
}

PhiStepResult solve_phistep(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi_l,
                            const NoiseParams& noise, const StepLimits& limits, Scheme scheme,
                            const std::vector<double>& caps, const AlgoConfig& algo, Rng& rng) {
  PhiStepResult res;
  res.phi = phi_l;
  StepLimits lim = limits;
  if (scheme != Scheme::Active) lim.ris_power = false;
  double f_cur = secrecy_objective(ch, w, phi_l, noise);
  for (int it = 0; it < algo.max_inner_phi; ++it) {
    PhiStepContext ctx = build_phi_context(ch, w, res.phi, noise, lim, scheme, caps);
    conic::SdpSolution sol = conic::solve(build_phi_sdp(ctx));
    res.statuses.push_back(sol.status);
    const bool anchor_feasible = phi_feasible(ctx, res.phi);
    if (sol.status == conic::Status::Infeasible && lim.sensing && !anchor_feasible &&
        radar_sinr(ch, w, res.phi, noise) < lim.gamma_r) {
      lim.sensing = false;
      res.sensing_infeasible = true;
      continue;
    }
    if (!sol.ok() && sol.status != conic::Status::MaxIterations) break;
    RisCoeffs cand;
    try {
      cand = recover_rank1_phi(sol, algo.randomization_trials, ctx, rng);
    } catch (const RecoveryFailure&) {
      break;
    }
    const double f_new = secrecy_objective(ch, w, cand, noise);
    if (anchor_feasible && f_new < f_cur) {
      res.fallback = true;
      break;
    }
    const double gain = f_new - f_cur;
    res.phi = cand;
    f_cur = f_new;
    ++res.iterations;
    res.objective.push_back(f_cur);
    if (anchor_feasible && gain <= algo.inner_tol * std::max(1.0, std::abs(f_cur))) break;
  }
  return res;
}

}  // namespace aris
