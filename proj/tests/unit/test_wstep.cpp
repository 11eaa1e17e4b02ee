#include <doctest.h>

#include <cmath>

#include "aris/aodriver.hpp"
#include "aris/validation.hpp"
#include "aris/wstep.hpp"

using namespace aris;

namespace {

CMat scalar(double v) { return CMat::Constant(1, 1, v); }

struct Setup {
  ScenarioConfig cfg;
  ChannelSet ch;
  NoiseParams noise;
  InitPoint ip;
  StepLimits lim;
};

Setup physical(std::uint64_t seed, Scheme scheme = Scheme::Active) {
  Setup s;
  s.cfg = default_scenario();
  Rng rng(seed);
  s.ch = generate_channels(s.cfg, rng);
  s.noise = noise_for(s.cfg, scheme);
  Rng init = rng.substream(7);
  s.ip = initialize(s.ch, s.cfg, scheme, init);
  s.lim = limits_for(s.cfg, scheme);
  return s;
}

conic::SdpSolution as_solution(const std::vector<CMat>& blocks) {
  conic::SdpSolution s;
  s.status = conic::Status::Optimal;
  s.blocks = blocks;
  return s;
}

}  // namespace

TEST_CASE("linearized bound: hand example and anchor equality") {
  CHECK(lemma1_bound(scalar(2.0), scalar(1.0), scalar(1.0), scalar(1.0)) == doctest::Approx(3.0));
  Rng rng(61);
  const CMat x = rng.cnormal_mat(3, 2);
  const CMat j = validation::random_pd(3, rng);
  const double truth = (x.adjoint() * j.inverse() * x).trace().real();
  CHECK(std::abs(lemma1_bound(x, j, x, j) - truth) <= 1e-10 * truth);
}

TEST_CASE("context at zero reflection") {
  Rng rng(62);
  validation::Instance in = validation::random_instance(3, 4, rng);
  in.phi.phi.setZero();
  StepLimits lim;
  lim.p_ris = 0.7;
  lim.gamma_r = 0.2;
  const WStepContext ctx = build_context(in.ch, in.w, in.phi, in.noise, lim);
  for (const auto& h : ctx.h_i) CHECK(h.norm() == 0.0);
  CHECK(ctx.pbar_ris == doctest::Approx(0.7));
  CHECK(sinr_constraint_value(ctx, lift(in.w)) == doctest::Approx(ctx.e1));
}

TEST_CASE("context structure and SINR linearization tightness") {
  Rng rng(63);
  for (int k = 0; k < 10; ++k) {
    const validation::Instance in = validation::random_instance(2 + k % 3, 3 + k % 4, rng);
    StepLimits lim;
    lim.gamma_r = 0.3;
    lim.p_ris = 5.0;
    const WStepContext ctx = build_context(in.ch, in.w, in.phi, in.noise, lim);
    const Eigen::Index m = in.ch.antennas();
    CHECK(min_eigenvalue(ctx.t) >= -1e-10 * ctx.t.norm());
    CHECK(ctx.tbar.row(m).norm() == 0.0);
    CHECK(ctx.tbar.col(m).norm() == 0.0);
    CHECK((ctx.tbar.topLeftCorner(m, m) - ctx.t).norm() == doctest::Approx(0.0));
    for (const auto& h : ctx.h_i) CHECK(std::abs(h(m, m)) == 0.0);
    const double xi = radar_sinr(in.ch, in.w, in.phi, in.noise);
    const double value = sinr_constraint_value(ctx, lift(in.w));
    CHECK(std::abs(value - (lim.gamma_r - xi)) <= 1e-8 * std::max(std::abs(xi), lim.gamma_r));
  }
}

TEST_CASE("SDP shape: block count and constraint count") {
  const Setup s = physical(64);
  const WStepContext ctx = build_context(s.ch, s.ip.w, s.ip.phi, s.noise, s.lim);
  const conic::SdpProblem p = build_sdp(ctx);
  const int m = s.ch.antennas();
  REQUIRE(p.block_dims.size() == std::size_t(m + 1));
  for (auto d : p.block_dims) CHECK(d == m + 1);
  CHECK(p.constraint_count() == std::size_t(m + 4));
  CHECK(p.entries.size() == std::size_t(m + 1));
}

TEST_CASE("M = 1: relaxation optimum dominates the lifted anchor") {
  Rng rng(65);
  for (int k = 0; k < 3; ++k) {
    const validation::Instance in = validation::random_instance(1, 3, rng);
    StepLimits lim;
    lim.p0 = 2.0 * in.w.w.squaredNorm();
    lim.p_ris = 1e3;
    lim.gamma_r = 0.0;
    const WStepContext ctx = build_context(in.ch, in.w, in.phi, in.noise, lim);
    const conic::SdpProblem p = build_sdp(ctx);
    const conic::SdpSolution sol = conic::solve(p);
    REQUIRE(sol.ok());
    CHECK(sol.objective >= p.objective_value(lift(in.w)) - 1e-8);
  }
}

TEST_CASE("zero channels give a constant objective") {
  Rng rng(66);
  validation::Instance in = validation::random_instance(2, 3, rng);
  in.ch.h_bu.setZero();
  in.ch.h_ru.setZero();
  StepLimits lim;
  lim.sensing = false;
  lim.ris_power = false;
  const WStepContext ctx = build_context(in.ch, in.w, in.phi, in.noise, lim);
  const conic::SdpSolution sol = conic::solve(build_sdp(ctx));
  CHECK(sol.ok());
}

TEST_CASE("rank-one recovery") {
  const Setup s = physical(67);
  StepLimits lim = s.lim;
  lim.sensing = false;
  const WStepContext ctx = build_context(s.ch, s.ip.w, s.ip.phi, s.noise, lim);
  Rng rng(1);

  SUBCASE("rank-one blocks are returned as is") {
    const Precoder w = recover_rank1(as_solution(lift(s.ip.w)), 0, ctx, rng);
    CHECK((w.w - s.ip.w.w).norm() <= 1e-8 * s.ip.w.w.norm());
  }
  SUBCASE("rank-two blocks: feasible candidate, or failure without trials") {
    std::vector<CMat> blocks = lift(s.ip.w);
    const int m = s.ch.antennas();
    Rng g(5);
    for (auto& b : blocks) {
      CVec u = CVec::Zero(m + 1);
      u.head(m) = 1e-2 * g.cnormal_vec(m) * std::sqrt(s.cfg.bs_power_w);
      b += u * u.adjoint();
    }
    CHECK_THROWS_AS(recover_rank1(as_solution(blocks), 0, ctx, rng), RecoveryFailure);
    const Precoder w = recover_rank1(as_solution(blocks), 50, ctx, rng);
    CHECK(wstep_feasible(ctx, w, 1e-6));
    const FeasibilityReport rep = check_feasibility(w, s.ip.phi, s.ch, s.cfg, Scheme::Active, false);
    CHECK_MESSAGE(rep.ok(), rep.summary());
  }
}

TEST_CASE("W-step: monotone, bounded inner loop, feasible output") {
  for (std::uint64_t seed : {68u, 69u}) {
    const Setup s = physical(seed);
    StepLimits lim = s.lim;
    if (s.ip.sensing_infeasible) lim.sensing = false;
    Rng rng(seed);
    const double before = secrecy_objective(s.ch, s.ip.w, s.ip.phi, s.noise);
    const WStepResult r = solve_wstep(s.ch, s.ip.w, s.ip.phi, s.noise, lim, s.cfg.algo, rng);
    CHECK(r.iterations <= s.cfg.algo.max_inner_w);
    CHECK(secrecy_objective(s.ch, r.w, s.ip.phi, s.noise) >= before - 1e-9);
    for (std::size_t i = 1; i < r.objective.size(); ++i) CHECK(r.objective[i] >= r.objective[i - 1] - 1e-9);
    const FeasibilityReport rep =
        check_feasibility(r.w, s.ip.phi, s.ch, s.cfg, Scheme::Active, lim.sensing && !r.sensing_infeasible);
    CHECK_MESSAGE(rep.ok(), rep.summary());

    // Restarting from the output is close to stationary.
    Rng again(seed + 100);
    const WStepResult r2 = solve_wstep(s.ch, r.w, s.ip.phi, s.noise, lim, s.cfg.algo, again);
    CHECK(secrecy_objective(s.ch, r2.w, s.ip.phi, s.noise) >= secrecy_objective(s.ch, r.w, s.ip.phi, s.noise) - 1e-9);
  }
}

TEST_CASE("W-step without sensing never worsens the objective") {
  Rng rng(70);
  for (int k = 0; k < 3; ++k) {
    const validation::Instance in = validation::random_instance(3, 4, rng);
    StepLimits lim;
    lim.p0 = in.w.w.squaredNorm();
    lim.p_ris = 1e3;
    lim.gamma_r = 0.0;
    lim.sensing = false;
    AlgoConfig algo;
    algo.max_inner_w = 5;
    const double before = secrecy_objective(in.ch, in.w, in.phi, in.noise);
    const WStepResult r = solve_wstep(in.ch, in.w, in.phi, in.noise, lim, algo, rng);
    CHECK(secrecy_objective(in.ch, r.w, in.phi, in.noise) >= before - 1e-9);
  }
}
