#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "aris/conic.hpp"
#include "aris/validation.hpp"
#include "aris/wstep.hpp"

namespace aris::validation {

namespace {

using clock_type = std::chrono::steady_clock;

double rel(double a, double b, double scale = 0.0) {
  const double s = std::max({std::abs(b), scale, 1e-300});
  return std::abs(a - b) / s;
}

// Tracks the worst value of each named check and renders them.
class Tally {
 public:
  void worst(const std::string& name, double v) {
    for (auto& [k, x] : items_)
      if (k == name) {
        x = std::max(x, v);
        return;
      }
    items_.emplace_back(name, v);
  }
  void fail(const std::string& why) {
    if (failures_.empty()) first_failure_ = why;
    failures_.push_back(why);
  }
  bool ok() const { return failures_.empty(); }
  std::string render() const {
    std::ostringstream os;
    os.precision(3);
    for (std::size_t i = 0; i < items_.size(); ++i) os << (i ? ", " : "") << items_[i].first << " " << items_[i].second;
    if (!failures_.empty()) os << "; " << failures_.size() << " failure(s), first: " << first_failure_;
    return os.str();
  }

 private:
  std::vector<std::pair<std::string, double>> items_;
  std::vector<std::string> failures_;
  std::string first_failure_;
};

SuiteResult finish(const std::string& name, const Tally& t, clock_type::time_point t0, double budget_s = 0.0) {
  SuiteResult r;
  r.name = name;
  r.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
  r.pass = t.ok() && (budget_s <= 0.0 || r.seconds < budget_s);
  std::ostringstream os;
  os.precision(3);
  os << t.render() << " (" << r.seconds << " s";
  if (budget_s > 0.0) os << ", budget " << budget_s << " s";
  os << ")";
  r.detail = os.str();
  return r;
}

int pick(Rng& rng, int lo, int hi) { return lo + int(rng.uniform() * (hi - lo + 1)) % (hi - lo + 1); }

CMat lift_vec(const CVec& w) {
  CVec z(w.size() + 1);
  z.head(w.size()) = w;
  z(w.size()) = 1.0;
  return z * z.adjoint();
}

RisCoeffs perturbed(const RisCoeffs& p, const CVec& d, double t) { return RisCoeffs{p.phi + t * d}; }

}  // namespace

SuiteResult lemma1_suite(std::uint64_t seed, int instances) {
  const auto t0 = clock_type::now();
  Rng rng = Rng(seed).substream(101);
  Tally t;
  for (int k = 0; k < instances; ++k) {
    const int m = pick(rng, 1, 8), c = pick(rng, 1, 8);
    const CMat j = random_pd(m, rng), jk = random_pd(m, rng);
    const CMat x = random_matrix(m, c, rng), xk = random_matrix(m, c, rng);
    const double truth = (x.adjoint() * j.ldlt().solve(x)).trace().real();
    const double bound = lemma1_bound(x, j, xk, jk);
    const double excess = (bound - truth) / std::abs(truth);
    t.worst("max (bound-truth)/|truth|", excess);
    if (bound > truth + 1e-10 * std::abs(truth)) t.fail("bound above truth at instance " + std::to_string(k));

    const double at = (xk.adjoint() * jk.ldlt().solve(xk)).trace().real();
    const double eq = rel(lemma1_bound(xk, jk, xk, jk), at);
    t.worst("anchor equality", eq);
    if (eq > 1e-10) t.fail("anchor equality at instance " + std::to_string(k));
  }
  // Scalar case x = 2, j = 1, anchor (1, 1): 2·2 − 1 = 3 ≤ 4.
  const CMat two = CMat::Constant(1, 1, 2.0), one = CMat::Constant(1, 1, 1.0);
  if (std::abs(lemma1_bound(two, one, one, one) - 3.0) > 1e-14) t.fail("scalar hand case");
  return finish("linearized bound", t, t0, 5.0);
}

SuiteResult lemma3_suite(std::uint64_t seed, int instances) {
  const auto t0 = clock_type::now();
  Rng rng = Rng(seed).substream(102);
  Tally t;
  for (int k = 0; k < instances; ++k) {
    const int r = pick(rng, 1, 8), c = pick(rng, 1, 8);
    const CMat kk = random_matrix(r, c, rng), l = random_matrix(r, c, rng);
    const CMat kl = random_matrix(r, c, rng), ll = random_matrix(r, c, rng);
    const double truth = 2.0 * (kk * l.adjoint()).trace().real();
    const double bound = lemma3_bound(kk, l, kl, ll);
    t.worst("max (truth-bound)/|truth|", (truth - bound) / std::abs(truth));
    if (bound < truth - 1e-10 * std::abs(truth)) t.fail("bound below truth at instance " + std::to_string(k));

    // Proportional anchors: L_l = c K_l and (K, L) = (K_l, L_l).
    const double scale = 0.1 + 3.0 * rng.uniform();
    const CMat lp = scale * kl;
    const double tp = 2.0 * (kl * lp.adjoint()).trace().real();
    const double eq = rel(lemma3_bound(kl, lp, kl, lp), tp);
    t.worst("proportional equality", eq);
    if (eq > 1e-10) t.fail("proportional equality at instance " + std::to_string(k));
  }
  // Sign flip: L = −K with matching anchors gives 2‖K‖² ≥ −2‖K‖².
  const CMat kk = random_matrix(3, 3, rng);
  const double b = lemma3_bound(kk, CMat(-kk), kk, kk);
  if (rel(b, 2.0 * kk.squaredNorm()) > 1e-12) t.fail("sign-flip case");
  return finish("cubic bound", t, t0, 5.0);
}

SuiteResult vectorization_suite(std::uint64_t seed, int instances) {
  const auto t0 = clock_type::now();
  Rng rng = Rng(seed).substream(103);
  Tally t;
  auto check = [&](const std::string& name, double a, double b, double scale, int k) {
    const double e = rel(a, b, scale);
    t.worst(name, e);
    if (e > 1e-10) t.fail(name + " at instance " + std::to_string(k));
  };
  for (int k = 0; k < instances; ++k) {
    const int m = pick(rng, 1, 4), n = pick(rng, 1, 6);
    const Instance in = random_instance(m, n, rng);
    const RisCoeffs phi = random_phi(n, 1.5, rng);
    const ChannelSet& ch = in.ch;
    const NoiseParams& nz = in.noise;
    const CMat r = in.w.covariance();
    const SinrQuadratic q = assemble_sinr_quadratic(ch, in.w, in.phi, nz, 0.0);
    const CVec vh = vhat(phi);
    const CVec v = phi.phi.conjugate();
    const CMat vv = v * v.adjoint();

    // Quartic term as a quadratic in v̂, and as tr(V M₁,₁ V).
    const double quartic = quartic_trace(ch, phi, q.e, nz.v1);
    const CMat q1 = quartic_q1(ch, q.f, nz.v1);
    check("quartic (dense Q1)", (vh.adjoint() * q1 * vh)(0).real(), quartic, 0.0, k);
    check("quartic (V M11 V)", (vv * q.m11 * vv).trace().real(), quartic, 0.0, k);

    // Linear and quadratic terms.
    const cdouble lin = linear_trace(ch, phi, in.phi, r, nz);
    check("p1 form", (q.p1.adjoint() * vh)(0).real(), lin.real(), std::abs(lin), k);
    const CVec p21 = vec(q.f).conjugate().cwiseProduct(vec(q.xi1));
    const double quad = quadratic_trace(ch, phi, q.e, r, nz);
    check("p21 form", (p21.adjoint() * vh)(0).real(), quad, 0.0, k);

    // Cubic-term bound pieces: p₂,₂ᴴv̂ + v̂ᴴQ₂v̂ = σ1² (‖K‖²/β² + β²‖L‖²).
    const CMat P = phi.diag(), Pl = in.phi.diag();
    const CMat kk = P.adjoint() * ch.g * P, ll = q.f * P;
    const double cubic_bound = nz.v1 * lemma3_bound(kk, ll, CMat(Pl.adjoint() * ch.g * Pl), CMat(q.f * Pl));
    const CMat q2 = quartic_q2(ch, nz.v1, q.beta2);
    const CVec p22 = q.p2 - p21;
    check("cubic bound form", (p22.adjoint() * vh)(0).real() + (vh.adjoint() * q2 * vh)(0).real(), cubic_bound, 0.0,
          k);

    // tr(E J) splits into the pieces above.
    const double cubic = cubic_trace(ch, phi, q.e, nz.v1);
    const CMat j = radar_interference(radar_operators(ch, phi, nz), r);
    const double tej = (q.e * j).trace().real();
    check("tr(EJ) split", quad + quartic + cubic + nz.radar * rtrace(q.e), tej, 0.0, k);

    // Whole chain down to the V-form minorizer.
    const double chain = 2.0 * lin.real() - quad - quartic - cubic_bound - q.alpha2;
    const double scale = 2.0 * std::abs(lin) + quad + quartic + cubic_bound + q.alpha2;
    check("minorizer V-form", sinr_minorizer(q, phi), chain, scale, k);
    const double imag = (q.n1 * vv).trace().imag();
    t.worst("Im tr(N1 V) rel", std::abs(imag) / scale);
    if (std::abs(imag) > 1e-9 * scale) t.fail("tr(N1 V) not real at instance " + std::to_string(k));

    // RIS power: quadratic form in v̂ and V-form against the direct expression.
    const PowerQuadratic pq = ris_power_quadratic(ch, in.w, nz);
    const RisPower pw = ris_power(ch, in.w, phi, nz);
    check("ris power V-form", ris_power_quadratic_value(pq, phi), pw.total(), 0.0, k);
    const CMat pgp = P.adjoint() * ch.g * P;
    const double p_quartic = (pgp * ch.h_br * in.w.w).squaredNorm() + nz.v1 * pgp.squaredNorm();
    check("ris power dense Q3", (vh.adjoint() * quartic_q3(ch, pq.xi3) * vh)(0).real(), p_quartic, 0.0, k);
    check("ris power (V M2 V)", (vv * pq.m2 * vv).trace().real(), p_quartic, 0.0, k);

    // Lifted rates.
    const CMat vb = lift_phi(phi);
    const Rates rt = rates(ch, in.w, phi, nz);
    for (Node node : {Node::User, Node::Eve}) {
      const RateMatrices rm = rate_matrices(ch, in.w, nz, node);
      const double lifted = std::log((rm.h1 * vb).trace().real()) - std::log((rm.h2 * vb).trace().real());
      check("lifted rate", lifted, node == Node::User ? rt.user : rt.eve, 0.0, k);
    }
  }
  return finish("vectorization", t, t0, 10.0);
}

SuiteResult structure_suite(std::uint64_t seed, int instances) {
  const auto t0 = clock_type::now();
  Rng rng = Rng(seed).substream(104);
  Tally t;
  for (int k = 0; k < instances; ++k) {
    const int m = pick(rng, 1, 4), n = pick(rng, 2, 4);
    const Instance in = random_instance(m, n, rng);
    const ChannelSet& ch = in.ch;
    const SinrQuadratic q = assemble_sinr_quadratic(ch, in.w, in.phi, in.noise, 0.0);
    const CMat q1 = quartic_q1(ch, q.f, in.noise.v1);
    const double qn = q1.norm();
    const CMat b0 = q1.topLeftCorner(n, n);
    double off = 0.0, mismatch = 0.0;
    for (int bi = 0; bi < n; ++bi)
      for (int bj = 0; bj < n; ++bj) {
        const CMat blk = q1.block(bi * n, bj * n, n, n);
        if (bi == bj) mismatch = std::max(mismatch, (blk - b0).norm() / b0.norm());
        else off = std::max(off, blk.norm() / qn);
      }
    t.worst("Q1 off-diagonal blocks", off);
    t.worst("Q1 diagonal-block spread", mismatch);
    if (off > 1e-12 || mismatch > 1e-10) t.fail("Q1 block structure at instance " + std::to_string(k));

    // M₁,₁ against the Q₁ extract and the closed form σ1² G₁ᴴ F G₁, G₁ = diag(γ λ₁ a).
    const CMat g1 = CVec(ch.gamma * std::conj(in.a(0)) * in.a).asDiagonal();
    const CMat closed = in.noise.v1 * g1.adjoint() * q.f * g1;
    const double e1 = (q.m11 - b0).norm() / b0.norm(), e2 = (q.m11 - closed).norm() / closed.norm();
    t.worst("M11 vs Q1 block", e1);
    t.worst("M11 vs closed form", e2);
    if (e1 > 1e-10 || e2 > 1e-10) t.fail("M11 extraction at instance " + std::to_string(k));

    const CMat Pl = in.phi.diag();
    const CMat a = ch.h_br.adjoint() * Pl.adjoint() * ch.g * Pl * ch.h_br;
    const std::pair<const char*, CMat> rank_one[] = {{"G", ch.g}, {"A", a}, {"E", q.e}, {"F", q.f}, {"M11", q.m11}};
    for (const auto& [name, mat] : rank_one) {
      const double d = rank1_defect(mat);
      t.worst(std::string("rank defect ") + name, d);
      if (d > 1e-9) t.fail(std::string(name) + " not rank 1 at instance " + std::to_string(k));
    }

    const PowerQuadratic pq = ris_power_quadratic(ch, in.w, in.noise);
    for (const auto& [name, mat] : {std::pair<const char*, CMat>{"M1", q.m1}, {"M2", pq.m2}}) {
      const double lo = min_eigenvalue(mat) / mat.norm();
      t.worst(std::string("-min eig ") + name, -lo);
      if (lo < -1e-9) t.fail(std::string(name) + " not PSD at instance " + std::to_string(k));
    }
  }
  return finish("structure", t, t0);
}

SuiteResult surrogate_suite(std::uint64_t seed, int points) {
  const auto t0 = clock_type::now();
  Rng rng = Rng(seed).substream(105);
  Tally t;
  const int m = 4, n = 8, anchors = 5, directions = 4;
  const double h = 1e-5;

  for (int k = 0; k < anchors; ++k) {
    const Instance in = random_instance(m, n, rng);
    const std::vector<double> caps(n, 1.5);
    StepLimits lim;
    lim.p0 = in.w.w.squaredNorm();
    lim.p_ris = 1e3;
    lim.gamma_r = 0.0;

    // W-step surrogate: value, directional derivative and global minorization.
    const WStepContext wc = build_context(in.ch, in.w, in.phi, in.noise, lim);
    const CVec w0 = in.w.comm();
    const double truth = secrecy_objective(in.ch, in.w, in.phi, in.noise);
    const double sv = wstep_surrogate(wc, lift_vec(w0));
    t.worst("W value", rel(sv, truth));
    t.worst("W lifting", rel(wstep_true_objective(wc, lift_vec(w0)), truth));
    if (rel(sv, truth) > 1e-10 || rel(wstep_true_objective(wc, lift_vec(w0)), truth) > 1e-10)
      t.fail("W surrogate value at anchor " + std::to_string(k));
    for (int d = 0; d < directions; ++d) {
      const CVec dir = rng.cnormal_vec(m);
      auto sur = [&](double s) { return wstep_surrogate(wc, lift_vec(w0 + s * dir)); };
      auto tru = [&](double s) { return wstep_true_objective(wc, lift_vec(w0 + s * dir)); };
      const double ds = (sur(h) - sur(-h)) / (2 * h), dt = (tru(h) - tru(-h)) / (2 * h);
      const double e = std::abs(ds - dt) / std::max(1.0, std::abs(dt));
      t.worst("W gradient", e);
      if (e > 1e-5) t.fail("W surrogate gradient at anchor " + std::to_string(k));
    }
    for (int p = 0; p < points / anchors; ++p) {
      CVec w = rng.cnormal_vec(m);
      w *= std::sqrt(lim.p0 * rng.uniform()) / w.norm();
      const CMat x = lift_vec(w);
      const double gap = wstep_surrogate(wc, x) - wstep_true_objective(wc, x);
      t.worst("W minorization excess", gap);
      if (gap > 1e-12 * std::max(1.0, std::abs(wstep_true_objective(wc, x))))
        t.fail("W surrogate above objective at anchor " + std::to_string(k));
    }
    // Linearized sensing constraint is tight at the anchor.
    const double sinr_k = radar_sinr(in.ch, in.w, in.phi, in.noise);
    const double cv = sinr_constraint_value(wc, lift(in.w));
    t.worst("SINR linearization at anchor", rel(cv, -sinr_k));
    if (rel(cv, -sinr_k) > 1e-8) t.fail("linearized SINR constraint not tight at anchor " + std::to_string(k));

    // Φ-step surrogate.
    const PhiStepContext pc = build_phi_context(in.ch, in.w, in.phi, in.noise, lim, Scheme::Active, caps);
    auto ptrue = [&](const RisCoeffs& p) { return secrecy_objective(in.ch, in.w, p, in.noise); };
    const double pv = phi_surrogate(pc, lift_phi(in.phi));
    t.worst("Phi value", rel(pv, ptrue(in.phi)));
    if (rel(pv, ptrue(in.phi)) > 1e-10) t.fail("Phi surrogate value at anchor " + std::to_string(k));
    for (int d = 0; d < directions; ++d) {
      const CVec dir = rng.cnormal_vec(n);
      auto sur = [&](double s) { return phi_surrogate(pc, lift_phi(perturbed(in.phi, dir, s))); };
      auto tru = [&](double s) { return ptrue(perturbed(in.phi, dir, s)); };
      const double ds = (sur(h) - sur(-h)) / (2 * h), dt = (tru(h) - tru(-h)) / (2 * h);
      const double e = std::abs(ds - dt) / std::max(1.0, std::abs(dt));
      t.worst("Phi gradient", e);
      if (e > 1e-5) t.fail("Phi surrogate gradient at anchor " + std::to_string(k));
    }
    for (int p = 0; p < points / anchors; ++p) {
      const RisCoeffs phi = random_phi(n, 1.5, rng);
      const double tv = ptrue(phi);
      const double gap = phi_surrogate(pc, lift_phi(phi)) - tv;
      t.worst("Phi minorization excess", gap);
      if (gap > 1e-12 * std::max(1.0, std::abs(tv))) t.fail("Phi surrogate above objective at anchor " + std::to_string(k));

      // Radar-SINR minorizer is a global lower bound as well.
      const double xi = radar_sinr(in.ch, in.w, phi, in.noise);
      const double mq = sinr_minorizer(pc.sinr, phi);
      t.worst("SINR minorizer excess (rel)", (mq - xi) / std::max(xi, 1e-300));
      if (mq > xi + 1e-9 * std::max(std::abs(xi), std::abs(mq)))
        t.fail("SINR minorizer above the SINR at anchor " + std::to_string(k));
    }
    // At the anchor the gap is exactly the slack of the cubic-term bound.
    const CMat Pl = in.phi.diag();
    const CMat kl = Pl.adjoint() * in.ch.g * Pl, ll = pc.sinr.f * Pl;
    const double slack = in.noise.v1 * (lemma3_bound(kl, ll, kl, ll) - 2.0 * (kl * ll.adjoint()).trace().real());
    const double agap = sinr_k - sinr_minorizer(pc.sinr, in.phi);
    const double se = std::abs(agap - slack) / std::max({std::abs(slack), sinr_k, 1e-300});
    t.worst("anchor gap vs cubic-bound slack", se);
    if (se > 1e-9) t.fail("anchor gap differs from cubic-bound slack at anchor " + std::to_string(k));
  }
  return finish("surrogate", t, t0);
}

SuiteResult sdp_oracle_suite(std::uint64_t seed) {
  const auto t0 = clock_type::now();
  Rng rng = Rng(seed).substream(106);
  Tally t;
  auto constraints_ok = [&](const conic::SdpSolution& s, const std::string& name) {
    double worst = 0.0;
    for (double x : s.linear_slack) worst = std::min(worst, x);
    for (double x : s.entry_slack) worst = std::min(worst, x);
    for (double x : s.lmi_slack) worst = std::min(worst, x);
    for (const auto& b : s.blocks) worst = std::min(worst, min_eigenvalue(b) / std::max(1.0, b.norm()));
    t.worst(name + " constraint violation", -worst);
    if (worst < -1e-7) t.fail(name + ": constraint violated");
    if (!s.ok()) t.fail(name + ": status " + conic::status_name(s.status));
  };

  // max tr(diag(1,2) X) s.t. tr X = 1 → 2 at e₂e₂ᵀ; then random Hermitian C against λ_max.
  {
    conic::SdpProblem p;
    const std::size_t b = p.add_block(2, "X");
    CMat c = CMat::Zero(2, 2);
    c(0, 0) = 1.0;
    c(1, 1) = 2.0;
    p.objective.add(b, c);
    conic::LinearConstraint tr;
    tr.lhs.add(b, CMat::Identity(2, 2));
    tr.sense = conic::Sense::Equal;
    tr.rhs = 1.0;
    p.linear.push_back(tr);
    const conic::SdpSolution s = conic::solve(p);
    constraints_ok(s, "max-eig 2x2");
    CMat target = CMat::Zero(2, 2);
    target(1, 1) = 1.0;
    t.worst("max-eig value", std::abs(s.objective - 2.0));
    if (std::abs(s.objective - 2.0) > 1e-7 || (s.blocks[0] - target).norm() > 1e-4) t.fail("max-eig 2x2 solution");
    for (int k = 0; k < 5; ++k) {
      const int n = 2 + k;
      const CMat x = rng.cnormal_mat(n, n);
      const CMat ch = hermitian_part(x);
      conic::SdpProblem q;
      const std::size_t bq = q.add_block(n, "X");
      q.objective.add(bq, ch);
      conic::LinearConstraint tq;
      tq.lhs.add(bq, CMat::Identity(n, n));
      tq.sense = conic::Sense::Equal;
      tq.rhs = 1.0;
      q.linear.push_back(tq);
      const conic::SdpSolution sq = conic::solve(q);
      constraints_ok(sq, "max-eig random");
      Eigen::SelfAdjointEigenSolver<CMat> es(ch);
      const double lmax = es.eigenvalues().maxCoeff();
      t.worst("max-eig random value", rel(sq.objective, lmax));
      if (rel(sq.objective, lmax) > 1e-7) t.fail("max-eig random value");
    }
  }
  // max tr(C X) with unit diagonal; for 2×2 real C the optimum is the best ±1 vector.
  for (int k = 0; k < 6; ++k) {
    RMat c(2, 2);
    if (k == 0) c << 0, 1, 1, 0;
    else {
      const double a = rng.normal();
      c << rng.normal(), a, a, rng.normal();
    }
    conic::SdpProblem p;
    const std::size_t b = p.add_block(2, "X");
    p.objective.add(b, c.cast<cdouble>());
    for (Eigen::Index i = 0; i < 2; ++i) p.entries.push_back({b, i, conic::Sense::Equal, 1.0, "diag"});
    const conic::SdpSolution s = conic::solve(p);
    constraints_ok(s, "+-1 toy");
    double brute = -std::numeric_limits<double>::infinity();
    for (int mask = 0; mask < 4; ++mask) {
      RVec x(2);
      x << (mask & 1 ? -1.0 : 1.0), (mask & 2 ? -1.0 : 1.0);
      brute = std::max(brute, x.dot(c * x));
    }
    t.worst("+-1 toy value", std::abs(s.objective - brute));
    if (std::abs(s.objective - brute) > 1e-7 * std::max(1.0, std::abs(brute))) t.fail("+-1 toy value");
    if (k == 0 && (s.blocks[0] - CMat::Ones(2, 2)).norm() > 1e-4) t.fail("+-1 toy solution is not all-ones");
  }
  // Φ-step SDP at N = 2 with a diagonal BS-RIS channel against a direct search.
  for (Scheme scheme : {Scheme::Passive, Scheme::Active}) {
    for (int k = 0; k < 3; ++k) {
      const bool active = scheme == Scheme::Active;
      Instance in = random_instance(2, 2, rng, active);
      in.ch.h_br = CMat::Zero(2, 2);
      in.ch.h_br(0, 0) = rng.cnormal();
      in.ch.h_br(1, 1) = rng.cnormal();
      const std::vector<double> caps(2, 1.5);
      StepLimits lim;
      lim.sensing = false;
      lim.ris_power = active;
      if (active) {
        RisCoeffs full{CVec::Constant(2, 1.5)};
        lim.p_ris = 0.5 * ris_power(in.ch, in.w, full, in.noise).total();
        in.phi.phi *= 0.3;
      }
      const PhiStepContext pc = build_phi_context(in.ch, in.w, in.phi, in.noise, lim, scheme, caps);
      const conic::SdpSolution s = conic::solve(build_phi_sdp(pc));
      const std::string name = std::string(active ? "N=2 active" : "N=2 passive");
      constraints_ok(s, name);
      const double sdp = phi_surrogate(pc, s.blocks[0]);
      auto f = [&](const RisCoeffs& p) { return phi_surrogate(pc, lift_phi(p)); };
      auto feasible = [&](const RisCoeffs& p) {
        return !active || ris_power(in.ch, in.w, p, in.noise).total() <= lim.p_ris;
      };
      const GridResult g = grid_search_n2(f, feasible, caps[0], caps[1], !active);
      const double e = std::abs(sdp - g.value) / std::max(1.0, std::abs(g.value));
      t.worst(name + " vs grid", e);
      if (e > 1e-3) t.fail(name + " SDP optimum differs from grid search");
    }
  }
  return finish("sdp_oracle", t, t0);
}

std::vector<SuiteResult> run_all(std::uint64_t seed) {
  return {lemma1_suite(seed), lemma3_suite(seed), vectorization_suite(seed),
          structure_suite(seed), surrogate_suite(seed), sdp_oracle_suite(seed)};
}

}  // namespace aris::validation
