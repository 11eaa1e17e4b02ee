#include <cmath>

#include "aris/conic.hpp"

namespace aris::conic {

Affine& Affine::add(std::size_t block, CMat coeff) {
  terms.push_back({block, std::move(coeff)});
  return *this;
}

double Affine::eval(const std::vector<CMat>& x) const {
  double v = constant;
  for (const auto& t : terms) v += (t.coeff.cwiseProduct(x[t.block].transpose())).sum().real();
  return v;
}

double FrobeniusLmi::slack(const std::vector<CMat>& x) const {
  const CMat xs = x[block].topLeftCorner(sub_dim, sub_dim);
  return bound.eval(x) - (xs * factor).squaredNorm();
}

CMat FrobeniusLmi::materialize(const std::vector<CMat>& x) const {
  const CMat xs = x[block].topLeftCorner(sub_dim, sub_dim);
  const CVec u = vec(CMat(xs * factor));
  const Eigen::Index k = u.size();
  CMat m = CMat::Identity(k + 1, k + 1);
  m(0, 0) = bound.eval(x);
  m.block(1, 0, k, 1) = u;
  m.block(0, 1, 1, k) = u.adjoint();
  return m;
}

FrobeniusLmi frobenius_quadratic_as_lmi(std::size_t block, Eigen::Index sub_dim, const CMat& factor,
                                        Affine bound, std::string label) {
  if (factor.rows() != sub_dim)
    throw DimensionError("frobenius_quadratic_as_lmi: factor has " + std::to_string(factor.rows()) +
                         " rows, expected " + std::to_string(sub_dim));
  FrobeniusLmi c;
  c.block = block;
  c.sub_dim = sub_dim;
  c.factor = factor;
  c.bound = std::move(bound);
  c.label = std::move(label);
  return c;
}

std::size_t SdpProblem::add_block(Eigen::Index dim, std::string name) {
  block_dims.push_back(dim);
  block_names.push_back(name.empty() ? "X" + std::to_string(block_dims.size() - 1) : std::move(name));
  return block_dims.size() - 1;
}

std::size_t SdpProblem::constraint_count() const {
  return block_dims.size() + linear.size() + lmis.size();
}

void SdpProblem::validate() const {
  auto check_affine = [&](const Affine& a, const std::string& what) {
    if (!std::isfinite(a.constant)) throw ContractViolation(what + ": non-finite constant");
    for (const auto& t : a.terms) {
      if (t.block >= block_dims.size()) throw DimensionError(what + ": block index out of range");
      const Eigen::Index n = block_dims[t.block];
      if (t.coeff.rows() != n || t.coeff.cols() != n)
        throw DimensionError(what + ": coefficient is " + std::to_string(t.coeff.rows()) + "x" +
                             std::to_string(t.coeff.cols()) + ", block is " + std::to_string(n));
      if (!t.coeff.allFinite()) throw ContractViolation(what + ": non-finite coefficient");
      if (!is_hermitian(t.coeff, 1e-10)) throw ContractViolation(what + ": coefficient is not Hermitian");
    }
  };
  if (block_dims.empty()) throw DimensionError("SdpProblem: no blocks");
  for (auto n : block_dims)
    if (n < 1) throw DimensionError("SdpProblem: empty block");
  check_affine(objective, "objective");
  for (const auto& l : log_terms) {
    if (!(l.weight > 0.0)) throw ContractViolation("log term `" + l.label + "`: weight must be positive");
    check_affine(l.arg, "log term `" + l.label + "`");
  }
  for (const auto& c : linear) {
    check_affine(c.lhs, "constraint `" + c.label + "`");
    if (!std::isfinite(c.rhs)) throw ContractViolation("constraint `" + c.label + "`: non-finite rhs");
  }
  for (const auto& e : entries) {
    if (e.block >= block_dims.size() || e.index < 0 || e.index >= block_dims[e.block])
      throw DimensionError("entry constraint `" + e.label + "`: index out of range");
    if (!std::isfinite(e.value)) throw ContractViolation("entry constraint `" + e.label + "`: non-finite value");
  }
  for (const auto& m : lmis) {
    if (m.block >= block_dims.size()) throw DimensionError("LMI `" + m.label + "`: block index out of range");
    if (m.sub_dim < 1 || m.sub_dim > block_dims[m.block] || m.factor.rows() != m.sub_dim)
      throw DimensionError("LMI `" + m.label + "`: bad leading block size");
    if (!m.factor.allFinite()) throw ContractViolation("LMI `" + m.label + "`: non-finite factor");
    check_affine(m.bound, "LMI `" + m.label + "` bound");
  }
}

double SdpProblem::objective_value(const std::vector<CMat>& x) const {
  double v = objective.eval(x);
  for (const auto& l : log_terms) v += l.weight * std::log(l.arg.eval(x));
  return v;
}

std::string status_name(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::NumericalFailure: return "numerical-failure";
    case Status::MaxIterations: return "max-iterations";
  }
  return "?";
}

}  // namespace aris::conic
