#include <cmath>

#include "aris/conic.hpp"

namespace aris::conic {

namespace {

using Blocks = std::vector<CMat>;

Blocks lerp(const Blocks& a, const Blocks& b, double alpha) {
  Blocks out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + alpha * (b[i] - a[i]);
  return out;
}

// d/dα of the true objective along a + α (b - a).
double directional(const SdpProblem& p, const Blocks& a, const Blocks& b, double alpha) {
  const Blocks x = lerp(a, b, alpha);
  Blocks dir(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) dir[i] = b[i] - a[i];
  Affine lin = p.objective;
  lin.constant = 0.0;
  double v = lin.eval(dir);
  for (const auto& l : p.log_terms) {
    Affine h = l.arg;
    h.constant = 0.0;
    v += l.weight * h.eval(dir) / l.arg.eval(x);
  }
  return v;
}

double line_search(const SdpProblem& p, const Blocks& a, const Blocks& b) {
  if (directional(p, a, b, 1.0) >= 0.0) return 1.0;
  if (directional(p, a, b, 0.0) <= 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (directional(p, a, b, mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SdpProblem linearize(const SdpProblem& p, const Blocks& at) {
  SdpProblem q = p;
  q.log_terms.clear();
  for (const auto& l : p.log_terms) {
    const double s = l.arg.eval(at);
    const double w = l.weight / s;
    for (const auto& t : l.arg.terms) q.objective.add(t.block, w * t.coeff);
    // Tangent: weight * (ln s + (arg - s) / s)
    q.objective.constant += w * l.arg.constant + l.weight * (std::log(s) - 1.0);
  }
  return q;
}

void fill_report(const SdpProblem& p, SdpSolution& sol) {
  sol.objective = p.objective_value(sol.blocks);
  sol.linear_slack.clear();
  sol.entry_slack.clear();
  sol.lmi_slack.clear();
  for (const auto& c : p.linear) sol.linear_slack.push_back(c.rhs - c.lhs.eval(sol.blocks));
  for (const auto& e : p.entries) sol.entry_slack.push_back(e.value - sol.blocks[e.block](e.index, e.index).real());
  for (const auto& m : p.lmis) sol.lmi_slack.push_back(m.slack(sol.blocks));
}

}  // namespace

ReductionResult reduce_log_terms(const SdpProblem& problem, const SolveOptions& opts, int max_iter,
                                 double tol, const std::optional<Blocks>& start) {
  problem.validate();
  ReductionResult out;
  if (problem.log_terms.empty()) {
    out.solution = solve(problem, opts);
    out.iterations = 1;
    out.linearized.push_back(problem);
    out.objective_trace.push_back(out.solution.objective);
    out.converged = out.solution.ok();
    return out;
  }

  Blocks cur;
  if (start) {
    cur = *start;
  } else {
    // Analytic center of the feasible set with every log argument positive.
    SdpProblem c = problem;
    c.objective = Affine{};
    c.log_terms.clear();
    for (const auto& l : problem.log_terms) {
      LinearConstraint pos;
      pos.lhs = l.arg;
      for (auto& t : pos.lhs.terms) t.coeff = -t.coeff;
      pos.lhs.constant = -pos.lhs.constant;
      pos.sense = Sense::LessEqual;
      pos.rhs = 0.0;
      pos.label = "positive " + l.label;
      c.linear.push_back(pos);
    }
    SdpSolution s0 = solve(c, opts);
    if (!s0.ok()) {
      out.solution = s0;
      return out;
    }
    cur = s0.blocks;
  }
  double fcur = problem.objective_value(cur);
  out.objective_trace.push_back(fcur);

  SdpSolution last;
  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it + 1;
    SdpProblem lin = linearize(problem, cur);
    last = solve(lin, opts);
    out.linearized.push_back(lin);
    if (!last.ok()) break;
    // Upper bound from concavity: f* ≤ f(cur) + ∇f(cur)·(x̂ - cur).
    const double bound_gap = directional(problem, cur, last.blocks, 0.0);
    const double alpha = line_search(problem, cur, last.blocks);
    Blocks next = lerp(cur, last.blocks, alpha);
    const double fnext = problem.objective_value(next);
    if (fnext >= fcur) {
      cur = std::move(next);
      fcur = fnext;
    }
    out.objective_trace.push_back(fcur);
    if (bound_gap <= tol * (1.0 + std::abs(fcur))) {
      out.converged = true;
      break;
    }
  }
  out.solution = last;
  out.solution.blocks = cur;
  if (out.solution.status == Status::Optimal && !out.converged) out.solution.status = Status::MaxIterations;
  fill_report(problem, out.solution);
  return out;
}

}  // namespace aris::conic
