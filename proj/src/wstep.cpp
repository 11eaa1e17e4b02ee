#include "aris/wstep.hpp"

#include <cmath>
#include <limits>

namespace aris {

namespace {

CMat solve_herm(const CMat& j, const CMat& rhs) {
  Eigen::LLT<CMat> llt(j);
  if (llt.info() != Eigen::Success) throw NotPsdError("interference matrix is not positive definite");
  return llt.solve(rhs);
}

CMat embed(const CMat& top, Eigen::Index n, double corner = 0.0) {
  CMat m = CMat::Zero(n, n);
  m.topLeftCorner(top.rows(), top.cols()) = top;
  m(n - 1, n - 1) = corner;
  return m;
}

double true_objective_for(const WStepContext& ctx, const Precoder& w) {
  return secrecy_objective(ctx.ch, w, ctx.phi, ctx.noise);
}

}  // namespace

double lemma1_bound(const CMat& x, const CMat& j, const CMat& xk, const CMat& jk) {
  const CMat jx = solve_herm(jk, xk);  // J_k⁻¹ X_k
  const double lin = 2.0 * (jx.adjoint() * x).trace().real();
  const double quad = (jx * jx.adjoint() * j).trace().real();
  return lin - quad;
}

std::vector<CMat> lift(const Precoder& w) {
  const Eigen::Index m = w.w.rows();
  std::vector<CMat> out;
  out.reserve(std::size_t(w.w.cols()));
  for (Eigen::Index i = 0; i < w.w.cols(); ++i) {
    CVec z(m + 1);
    z.head(m) = w.w.col(i);
    z(m) = 1.0;
    out.push_back(z * z.adjoint());
  }
  return out;
}

double secrecy_objective(const ChannelSet& ch, const Precoder& w, const RisCoeffs& phi,
                         const NoiseParams& noise) {
  return rates(ch, w, phi, noise).difference();
}

WStepContext build_context(const ChannelSet& ch, const Precoder& wk, const RisCoeffs& phi,
                           const NoiseParams& noise, const StepLimits& limits) {
  const Eigen::Index m = ch.antennas();
  if (wk.w.rows() != m || wk.w.cols() != m + 1)
    throw DimensionError("build_context: precoder must be M x (M+1)");
  if (phi.elements() != ch.elements()) throw DimensionError("build_context: RIS size mismatch");

  WStepContext c;
  c.ch = ch;
  c.phi = phi;
  c.noise = noise;
  c.limits = limits;
  c.anchor = wk;

  const CMat P = phi.diag();
  const CMat& h = ch.h_br;
  auto effective = [&](const CVec& hb, const CVec& hr, double sigma2) {
    const CVec reflected = hr.conjugate().cwiseProduct(phi.phi);  // (h_Rᴴ Φ)ᵀ
    const CVec heff = hb + h.adjoint() * reflected.conjugate();
    const double denom = noise.v1 * reflected.squaredNorm() + sigma2;
    return CVec(heff / std::sqrt(denom));
  };
  c.hbar_u = effective(ch.h_bu, ch.h_ru, noise.user);
  c.hbar_e = effective(ch.h_be, ch.h_re, noise.eve);
  c.h_u = embed(c.hbar_u * c.hbar_u.adjoint(), m + 1, 1.0);
  c.h_e = embed(c.hbar_e * c.hbar_e.adjoint(), m + 1, 1.0);

  const CMat pgp = P.adjoint() * ch.g * P;
  const CMat ph = P * h;
  const CMat pph = pgp * h;
  c.t = hermitian_part(ph.adjoint() * ph + pph.adjoint() * pph);
  c.tbar = embed(c.t, m + 1);
  const double phi2 = phi.phi.squaredNorm();
  c.pbar_ris = limits.p_ris - (noise.v1 + noise.v2) * phi2 - noise.v1 * pgp.squaredNorm();

  const RadarOperators ops = radar_operators(ch, phi, noise);
  c.a = ops.a;
  c.b = ops.b;
  c.radar_noise = ops.noise;
  const CMat rk = wk.covariance();
  c.j_k = radar_interference(ops, rk);
  const CMat jinv_a = solve_herm(c.j_k, ops.a);            // J_k⁻¹ A
  const CMat ara = ops.a * rk * ops.a.adjoint();
  c.e_w = hermitian_part(solve_herm(c.j_k, CMat(solve_herm(c.j_k, ara).adjoint())));
  c.alpha1 = rtrace(c.e_w * ops.noise);
  c.e1 = c.alpha1 + limits.gamma_r;

  const CMat bEb = hermitian_part(ops.b.adjoint() * c.e_w * ops.b);
  const CMat k = hermitian_part(ops.a.adjoint() * jinv_a);  // Aᴴ J_k⁻¹ A
  c.h_i.clear();
  for (Eigen::Index i = 0; i <= m; ++i) {
    const CVec u = k * wk.w.col(i);
    CMat hi = CMat::Zero(m + 1, m + 1);
    hi.topLeftCorner(m, m) = bEb;
    hi.block(0, m, m, 1) = -u;
    hi.block(m, 0, 1, m) = -u.adjoint();
    c.h_i.push_back(hi);
  }
  return c;
}

double sinr_constraint_value(const WStepContext& ctx, const std::vector<CMat>& blocks) {
  double v = ctx.e1;
  for (std::size_t i = 0; i < blocks.size(); ++i) v += (ctx.h_i[i] * blocks[i]).trace().real();
  return v;
}

conic::SdpProblem build_sdp(const WStepContext& ctx) {
  const Eigen::Index m = ctx.ch.antennas();
  const Eigen::Index n = m + 1;
  conic::SdpProblem p;
  for (Eigen::Index i = 0; i < m; ++i) p.add_block(n, "W" + std::to_string(i + 1));
  const std::size_t comm = p.add_block(n, "Wc");

  const CMat anchor_c = lift(ctx.anchor).back();
  const double s_k = (ctx.h_e * anchor_c).trace().real();

  conic::LogTerm lu;
  lu.label = "user";
  lu.arg.add(comm, ctx.h_u);
  p.log_terms.push_back(lu);
  p.objective.add(comm, -ctx.h_e / s_k);
  p.objective.constant = 1.0 - std::log(s_k);

  const CMat id = embed(CMat::Identity(m, m), n, 1.0);
  if (ctx.limits.sensing) {
    conic::LinearConstraint c;
    c.label = "radar_sinr";
    for (std::size_t i = 0; i < std::size_t(n); ++i) c.lhs.add(i, ctx.h_i[i]);
    c.lhs.constant = ctx.e1;
    c.rhs = 0.0;
    p.linear.push_back(c);
  }
  {
    conic::LinearConstraint c;
    c.label = "bs_power";
    for (std::size_t i = 0; i < std::size_t(n); ++i) c.lhs.add(i, id);
    c.rhs = ctx.limits.p0 + double(n);
    p.linear.push_back(c);
  }
  if (ctx.limits.ris_power) {
    conic::LinearConstraint c;
    c.label = "ris_power";
    for (std::size_t i = 0; i < std::size_t(n); ++i) c.lhs.add(i, ctx.tbar);
    c.rhs = ctx.pbar_ris;
    p.linear.push_back(c);
  }
  for (std::size_t i = 0; i < std::size_t(n); ++i)
    p.entries.push_back({i, m, conic::Sense::Equal, 1.0, "corner" + std::to_string(i)});
  return p;
}

double wstep_surrogate(const WStepContext& ctx, const CMat& wc_lifted) {
  const double s_k = (ctx.h_e * lift(ctx.anchor).back()).trace().real();
  return std::log((ctx.h_u * wc_lifted).trace().real()) - (ctx.h_e * wc_lifted).trace().real() / s_k + 1.0 -
         std::log(s_k);
}

double wstep_true_objective(const WStepContext& ctx, const CMat& wc_lifted) {
  return std::log((ctx.h_u * wc_lifted).trace().real()) - std::log((ctx.h_e * wc_lifted).trace().real());
}

double wstep_scale(const WStepContext& ctx, const Precoder& w) {
  const CMat r = w.covariance();
  const double tr = rtrace(r);
  if (!(tr > 0.0)) return 0.0;
  double c2 = ctx.limits.p0 / tr;
  if (ctx.limits.ris_power) {
    if (!(ctx.pbar_ris > 0.0)) return 0.0;
    const double ris = rtrace(ctx.t * r);
    if (ris > 0.0) c2 = std::min(c2, ctx.pbar_ris / ris);
  }
  return std::sqrt(c2);
}

bool wstep_feasible(const WStepContext& ctx, const Precoder& w, double tol) {
  if (!w.w.allFinite()) return false;
  const CMat r = w.covariance();
  if (rtrace(r) > ctx.limits.p0 * (1.0 + tol)) return false;
  if (ctx.limits.ris_power && rtrace(ctx.t * r) > ctx.pbar_ris + tol * ctx.limits.p_ris) return false;
  if (ctx.limits.sensing && ctx.limits.gamma_r > 0.0)
    if (radar_sinr(ctx.ch, w, ctx.phi, ctx.noise) < ctx.limits.gamma_r * (1.0 - tol)) return false;
  return true;
}

Precoder recover_rank1(const conic::SdpSolution& sol, int trials, const WStepContext& ctx, Rng& rng) {
  const Eigen::Index m = ctx.ch.antennas();
  if (sol.blocks.size() != std::size_t(m + 1)) throw DimensionError("recover_rank1: expected M+1 blocks");

  struct Spec {
    CVec nu;
    double lam1 = 0.0, lam2 = 0.0;
    CMat half;  // W_i^{1/2}
  };
  std::vector<Spec> specs;
  bool rank_one = true;
  for (const auto& blk : sol.blocks) {
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(blk));
    Spec s;
    const RVec ev = es.eigenvalues().cwiseMax(0.0);
    s.lam1 = ev(m);
    s.lam2 = ev(m - 1);
    s.nu = es.eigenvectors().col(m);
    s.half = es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
    if (!(s.lam2 <= 1e-6 * s.lam1) || std::abs(s.nu(m)) < 1e-8) rank_one = false;
    specs.push_back(std::move(s));
  }

  auto principal = [&]() {
    Precoder w;
    w.w = CMat::Zero(m, m + 1);
    for (Eigen::Index i = 0; i <= m; ++i) {
      const Spec& s = specs[std::size_t(i)];
      const cdouble last = s.nu(m);
      const cdouble align = std::abs(last) > 0.0 ? std::conj(last) / std::abs(last) : cdouble(1.0);
      w.w.col(i) = s.nu.head(m) * (std::sqrt(s.lam1) * align);
    }
    return w;
  };
  // Principal direction of the covariance part X_i, phased to the lifted column.
  auto xblock = [&]() {
    Precoder w;
    w.w = CMat::Zero(m, m + 1);
    for (Eigen::Index i = 0; i <= m; ++i) {
      const CMat& blk = sol.blocks[std::size_t(i)];
      const EigPair ep = herm_eig_max(hermitian_part(blk.topLeftCorner(m, m)));
      CVec col = ep.vector * std::sqrt(std::max(ep.value, 0.0));
      const cdouble ip = col.dot(blk.col(m).head(m));
      if (std::abs(ip) > 0.0) col *= ip / std::abs(ip);
      w.w.col(i) = col;
    }
    return w;
  };
  auto gaussian = [&]() {
    Precoder w;
    w.w = CMat::Zero(m, m + 1);
    for (Eigen::Index i = 0; i <= m; ++i) {
      const CVec xi = specs[std::size_t(i)].half * rng.cnormal_vec(m + 1);
      const cdouble t = xi(m);
      const cdouble ph = std::abs(t) > 0.0 ? std::conj(t) / std::abs(t) : cdouble(1.0);
      w.w.col(i) = xi.head(m) * ph;
    }
    return w;
  };

  if (rank_one) {
    Precoder w = principal();
    const double c = wstep_scale(ctx, w);
    if (c < 1.0) w.w *= c;
    if (wstep_feasible(ctx, w, 1e-6)) return w;
  }
  if (trials <= 0) throw RecoveryFailure("recover_rank1: no randomization trials and solution is not rank one");

  Precoder best;
  double best_f = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Precoder w = t == 0 ? principal() : t == 1 ? xblock() : gaussian();
    const double c = wstep_scale(ctx, w);
    if (!(c > 0.0) || !std::isfinite(c)) continue;
    w.w *= c;
    if (!wstep_feasible(ctx, w, 1e-6)) continue;
    const double f = true_objective_for(ctx, w);
    if (f > best_f) best_f = f, best = w;
  }
  if (!std::isfinite(best_f)) throw RecoveryFailure("recover_rank1: no feasible candidate among " + std::to_string(trials));
  return best;
}

WStepResult solve_wstep(const ChannelSet& ch, const Precoder& wk, const RisCoeffs& phi,
                        const NoiseParams& noise, const StepLimits& limits, const AlgoConfig& algo,
                        Rng& rng) {
  WStepResult res;
  res.w = wk;
  StepLimits lim = limits;
  if (lim.sensing && lim.gamma_r > 0.0 && phi.phi.squaredNorm() == 0.0) {
    // No reflected echo: the SINR constraint cannot hold.
    lim.sensing = false;
    res.sensing_infeasible = true;
  }
  double f_cur = secrecy_objective(ch, wk, phi, noise);
  for (int it = 0; it < algo.max_inner_w; ++it) {
    WStepContext ctx = build_context(ch, res.w, phi, noise, lim);
    conic::SdpSolution sol = conic::solve(build_sdp(ctx));
    res.statuses.push_back(sol.status);
    if (sol.status == conic::Status::Infeasible && lim.sensing) {
      const bool anchor_ok = radar_sinr(ch, res.w, phi, noise) >= lim.gamma_r * (1.0 - 1e-9);
      if (!anchor_ok) {
        lim.sensing = false;
        res.sensing_infeasible = true;
        continue;
      }
    }
    if (!sol.ok() && sol.status != conic::Status::MaxIterations) break;
    Precoder cand;
    try {
      cand = recover_rank1(sol, algo.randomization_trials, ctx, rng);
    } catch (const RecoveryFailure&) {
      break;
    }
    const double f_new = secrecy_objective(ch, cand, phi, noise);
    // A sensing-infeasible anchor may be replaced by anything feasible.
    const bool anchor_feasible = wstep_feasible(ctx, res.w, 1e-6);
    if (anchor_feasible && f_new < f_cur) {
      res.fallback = true;
      break;
    }
    const double gain = f_new - f_cur;
    res.w = cand;
    f_cur = f_new;
    ++res.iterations;
    res.objective.push_back(f_cur);
    if (anchor_feasible && gain <= algo.inner_tol * std::max(1.0, std::abs(f_cur))) break;
  }
  return res;
}

}  // namespace aris
