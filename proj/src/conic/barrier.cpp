// Primal log-barrier path following over the real coordinates of the
// Hermitian blocks, with Newton centering and a phase-I feasibility stage.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>

#include "aris/conic.hpp"
#include "aris/kernels.hpp"

namespace aris::conic {

namespace {

using kernels::BasisElem;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool trace_enabled() {
  static const bool on = std::getenv("ARIS_SDP_TRACE") != nullptr;
  return on;
}

double basis_coeff(const CMat& c, const BasisElem& e) {
  if (e.kind == 0) return c(e.i, e.i).real();
  if (e.kind == 1) return (c(e.i, e.j) + c(e.j, e.i)).real();
  return c(e.i, e.j).imag() - c(e.j, e.i).imag();
}

void basis_add(CMat& x, const BasisElem& e, double v) {
  if (e.kind == 0) {
    x(e.i, e.i) += v;
  } else if (e.kind == 1) {
    x(e.i, e.j) += v;
    x(e.j, e.i) += v;
  } else {
    x(e.i, e.j) += cdouble(0.0, v);
    x(e.j, e.i) -= cdouble(0.0, v);
  }
}

struct BlockMap {
  Eigen::Index n = 0;
  CMat x0;                      // fixed part
  int offset = 0, count = 0;    // free variables occupy [offset, offset+count)
  std::vector<int> basis;       // basis index of each free variable
  int s_var = -1;               // phase-I shift variable, if any
};

struct LinIneq {  // aᵀy + a0 ≤ 0
  RVec a;
  double a0 = 0.0;
  std::vector<int> nz;
  int source = -1;
  int kind = 0;     // 0 linear, 1 entry, 2 phase-I helper
};

struct QuadIneq {  // y_bᵀ Q y_b + 2 qᵀ y_b + ℓᵀ y + c0 ≤ 0
  int offset = 0;
  RMat q2;
  RVec q1;
  RVec l;
  double c0 = 0.0;
  int source = -1;
};

struct LogFn {
  double w = 1.0;
  RVec h;
  double h0 = 0.0;
};

struct Model {
  int d = 0;
  std::vector<BlockMap> blocks;
  std::vector<LinIneq> lin;
  std::vector<QuadIneq> quad;
  RVec c;
  double c0 = 0.0;
  std::vector<LogFn> logs;
  bool has_eq = false;
  RMat z;   // nullspace basis (d × dz)
  double nu() const {
    double v = double(lin.size() + quad.size());
    for (const auto& b : blocks) v += double(b.n);
    return v;
  }
};

std::vector<CMat> block_values(const Model& m, const RVec& y) {
  std::vector<CMat> xs;
  xs.reserve(m.blocks.size());
  for (const auto& b : m.blocks) {
    CMat x = b.x0;
    for (int k = 0; k < b.count; ++k)
      basis_add(x, kernels::hermitian_basis_elem(std::size_t(b.n), std::size_t(b.basis[std::size_t(k)])),
                y(b.offset + k));
    if (b.s_var >= 0) x.diagonal().array() += y(b.s_var);
    xs.push_back(std::move(x));
  }
  return xs;
}

double quad_value(const QuadIneq& q, const RVec& y) {
  const auto yb = y.segment(q.offset, q.q2.rows());
  return yb.dot(q.q2 * yb) + 2.0 * q.q1.dot(yb) + q.l.dot(y) + q.c0;
}

// Barrier objective F_t(y) = -t f(y) + φ(y); +inf outside the domain.
double barrier_value(const Model& m, const RVec& y, double t) {
  double f = 0.0;
  for (const auto& li : m.lin) {
    const double g = li.a.dot(y) + li.a0;
    if (!(g < 0.0)) return kInf;
    f -= std::log(-g);
  }
  for (const auto& q : m.quad) {
    const double g = quad_value(q, y);
    if (!(g < 0.0)) return kInf;
    f -= std::log(-g);
  }
  double obj = m.c.dot(y) + m.c0;
  for (const auto& l : m.logs) {
    const double a = l.h.dot(y) + l.h0;
    if (!(a > 0.0)) return kInf;
    obj += l.w * std::log(a);
  }
  const auto xs = block_values(m, y);
  for (const auto& x : xs) {
    Eigen::LLT<CMat> llt(x);
    if (llt.info() != Eigen::Success) return kInf;
    double ld = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double dii = llt.matrixL()(i, i).real();
      if (!(dii > 0.0)) return kInf;
      ld += std::log(dii);
    }
    f -= 2.0 * ld;
  }
  if (!std::isfinite(f) || !std::isfinite(obj)) return kInf;
  return f - t * obj;
}

double objective_of(const Model& m, const RVec& y) {
  double obj = m.c.dot(y) + m.c0;
  for (const auto& l : m.logs) obj += l.w * std::log(l.h.dot(y) + l.h0);
  return obj;
}

void assemble(const Model& m, const RVec& y, double t, RVec& g, RMat& h) {
  const int d = m.d;
  g = -t * m.c;
  h.setZero(d, d);
  for (const auto& l : m.logs) {
    const double a = l.h.dot(y) + l.h0;
    g.noalias() -= (t * l.w / a) * l.h;
    h.noalias() += (t * l.w / (a * a)) * l.h * l.h.transpose();
  }
  for (const auto& li : m.lin) {
    const double s = -(li.a.dot(y) + li.a0);
    for (int i : li.nz) {
      g(i) += li.a(i) / s;
      for (int j : li.nz) h(i, j) += li.a(i) * li.a(j) / (s * s);
    }
  }
  for (const auto& q : m.quad) {
    const double s = -quad_value(q, y);
    const Eigen::Index nb = q.q2.rows();
    RVec grad = q.l;
    grad.segment(q.offset, nb) += 2.0 * (q.q2 * y.segment(q.offset, nb) + q.q1);
    g += grad / s;
    h.noalias() += grad * grad.transpose() / (s * s);
    h.block(q.offset, q.offset, nb, nb) += (2.0 / s) * q.q2;
  }
  const auto xs = block_values(m, y);
  const auto& kern = kernels::active();
  std::vector<double> hb;
  for (std::size_t bi = 0; bi < m.blocks.size(); ++bi) {
    const BlockMap& b = m.blocks[bi];
    const std::size_t n = std::size_t(b.n);
    Eigen::LLT<CMat> llt(xs[bi]);
    const CMat s = llt.solve(CMat::Identity(b.n, b.n));
    const CMat sh = hermitian_part(s);
    hb.assign(n * n * n * n, 0.0);
    kern.logdet_hessian(sh.data(), n, hb.data());
    for (int k = 0; k < b.count; ++k) {
      const std::size_t bk = std::size_t(b.basis[std::size_t(k)]);
      g(b.offset + k) -= basis_coeff(sh, kernels::hermitian_basis_elem(n, bk));
      const double* row = hb.data() + bk * n * n;
      for (int l = 0; l < b.count; ++l) h(b.offset + k, b.offset + l) += row[b.basis[std::size_t(l)]];
    }
    if (b.s_var >= 0) {
      const CMat s2 = sh * sh;
      g(b.s_var) -= sh.trace().real();
      h(b.s_var, b.s_var) += sh.squaredNorm();
      for (int k = 0; k < b.count; ++k) {
        const double v = basis_coeff(s2, kernels::hermitian_basis_elem(n, std::size_t(b.basis[std::size_t(k)])));
        h(b.offset + k, b.s_var) += v;
        h(b.s_var, b.offset + k) += v;
      }
    }
  }
}

bool newton_direction(const Model& m, const RVec& g, const RMat& h, RVec& dy, double& dec2) {
  RVec gz;
  RMat hz;
  if (m.has_eq) {
    gz = m.z.transpose() * g;
    hz = m.z.transpose() * h * m.z;
  } else {
    gz = g;
    hz = h;
  }
  if (gz.size() == 0) {
    dy = RVec::Zero(m.d);
    dec2 = 0.0;
    return true;
  }
  const double diag = hz.diagonal().cwiseAbs().maxCoeff();
  double reg = 0.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    RMat hr = hz;
    if (reg > 0.0) hr.diagonal().array() += reg;
    Eigen::LLT<RMat> llt(hr);
    if (llt.info() == Eigen::Success) {
      const RVec dz = -llt.solve(gz);
      if (!dz.allFinite()) return false;
      dy = m.has_eq ? RVec(m.z * dz) : dz;
      dec2 = -gz.dot(dz);
      return true;
    }
    reg = reg == 0.0 ? 1e-14 * std::max(diag, 1e-300) : reg * 100.0;
  }
  return false;
}

enum class CenterResult { Converged, Stalled, Failed, Budget };

CenterResult center(const Model& m, RVec& y, double t, int& budget,
                    const std::function<bool(const RVec&)>& early_stop = nullptr) {
  RVec g, dy;
  RMat h;
  double fy = barrier_value(m, y, t);
  if (!std::isfinite(fy)) return CenterResult::Failed;
  for (int it = 0; it < 80; ++it) {
    if (budget-- <= 0) return CenterResult::Budget;
    assemble(m, y, t, g, h);
    double dec2 = 0.0;
    if (!newton_direction(m, g, h, dy, dec2)) return CenterResult::Failed;
    if (dec2 < 0.0) dec2 = 0.0;
    if (dec2 / 2.0 <= 1e-10) return CenterResult::Converged;
    const double slope = g.dot(dy);
    double alpha = 1.0;
    double fn = kInf;
    for (int ls = 0; ls < 80; ++ls) {
      fn = barrier_value(m, y + alpha * dy, t);
      if (std::isfinite(fn) && fn <= fy + 0.25 * alpha * slope) break;
      alpha *= 0.5;
    }
    if (!std::isfinite(fn) || !(fn <= fy + 0.25 * alpha * slope)) {
      // Roundoff floor on the decrease; accept as centered if the decrement is tiny.
      return dec2 < 1e-6 ? CenterResult::Converged : CenterResult::Stalled;
    }
    y += alpha * dy;
    fy = fn;
    if (!y.allFinite() || y.cwiseAbs().maxCoeff() > 1e14) return CenterResult::Failed;
    if (early_stop && early_stop(y)) return CenterResult::Converged;
  }
  return CenterResult::Stalled;
}

struct Build {
  Model m;
  RVec y_start;
  double obj_scale = 1.0;
  bool trivially_infeasible = false;
  std::string why;
  // Where each inequality came from, for reporting.
  std::vector<double> lin_norm;  // normalization factor applied
  std::vector<double> quad_norm;
  int objective_kind = 0;  // 0 none, 1 linear, 2 logs
  RMat a_eq;
  RVec b_eq;
};

void affine_to_real(const Affine& a, const std::vector<BlockMap>& blocks, int d, RVec& coef, double& c0) {
  coef = RVec::Zero(d);
  c0 = a.constant;
  for (const auto& t : a.terms) {
    const BlockMap& b = blocks[t.block];
    const CMat c = hermitian_part(t.coeff);
    c0 += (c.cwiseProduct(b.x0.transpose())).sum().real();
    for (int k = 0; k < b.count; ++k)
      coef(b.offset + k) += basis_coeff(c, kernels::hermitian_basis_elem(std::size_t(b.n), std::size_t(b.basis[std::size_t(k)])));
  }
}

Build build_model(const SdpProblem& p) {
  Build out;
  Model& m = out.m;
  const std::size_t nb = p.block_dims.size();

  // Fixed diagonal entries.
  std::vector<std::vector<std::optional<double>>> fixed(nb);
  for (std::size_t b = 0; b < nb; ++b) fixed[b].assign(std::size_t(p.block_dims[b]), std::nullopt);
  for (const auto& e : p.entries) {
    if (e.sense != Sense::Equal) continue;
    auto& f = fixed[e.block][std::size_t(e.index)];
    if (f && std::abs(*f - e.value) > 1e-12 * (1.0 + std::abs(e.value))) {
      out.trivially_infeasible = true;
      out.why = "conflicting fixed entries";
    }
    f = e.value;
  }

  int d = 0;
  for (std::size_t b = 0; b < nb; ++b) {
    BlockMap bm;
    bm.n = p.block_dims[b];
    bm.x0 = CMat::Zero(bm.n, bm.n);
    bm.offset = d;
    const std::size_t n = std::size_t(bm.n);
    for (std::size_t k = 0; k < n * n; ++k) {
      const BasisElem e = kernels::hermitian_basis_elem(n, k);
      if (e.kind == 0 && fixed[b][e.i]) {
        bm.x0(e.i, e.i) = *fixed[b][e.i];
        continue;
      }
      bm.basis.push_back(int(k));
    }
    bm.count = int(bm.basis.size());
    d += bm.count;
    m.blocks.push_back(std::move(bm));
  }
  m.d = d;

  // Equalities.
  std::vector<RVec> eq_rows;
  std::vector<double> eq_rhs;
  for (const auto& c : p.linear) {
    if (c.sense != Sense::Equal) continue;
    RVec a;
    double a0;
    affine_to_real(c.lhs, m.blocks, d, a, a0);
    eq_rows.push_back(a);
    eq_rhs.push_back(c.rhs - a0);
  }
  out.a_eq = RMat::Zero(Eigen::Index(eq_rows.size()), d);
  out.b_eq = RVec::Zero(Eigen::Index(eq_rows.size()));
  for (std::size_t i = 0; i < eq_rows.size(); ++i) {
    out.a_eq.row(Eigen::Index(i)) = eq_rows[i].transpose();
    out.b_eq(Eigen::Index(i)) = eq_rhs[i];
  }

  // Starting point: free diagonal entries at 1.
  out.y_start = RVec::Zero(d);
  for (const auto& b : m.blocks)
    for (int k = 0; k < b.count; ++k)
      if (kernels::hermitian_basis_elem(std::size_t(b.n), std::size_t(b.basis[std::size_t(k)])).kind == 0)
        out.y_start(b.offset + k) = 1.0;

  if (!eq_rows.empty()) {
    Eigen::JacobiSVD<RMat> svd(out.a_eq, Eigen::ComputeFullV | Eigen::ComputeThinU);
    const RVec& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-12 * std::max(smax, 1e-300)) ++rank;
    const RMat& v = svd.matrixV();
    m.has_eq = true;
    m.z = v.rightCols(d - rank);
    // Project the start onto the affine set.
    const RVec r = out.b_eq - out.a_eq * out.y_start;
    RVec corr = RVec::Zero(d);
    const RMat& u = svd.matrixU();
    for (Eigen::Index i = 0; i < rank; ++i) corr += v.col(i) * (u.col(i).dot(r) / sv(i));
    out.y_start += corr;
    const double resid = (out.a_eq * out.y_start - out.b_eq).norm();
    if (resid > 1e-8 * (1.0 + out.b_eq.norm())) {
      out.trivially_infeasible = true;
      out.why = "inconsistent equality constraints";
    }
  }

  auto push_lin = [&](RVec a, double a0, int source, int kind) {
    const double na = a.norm();
    if (na <= 1e-300) {
      if (a0 > 0.0) {
        out.trivially_infeasible = true;
        out.why = "constant constraint violated";
      }
      out.lin_norm.push_back(0.0);
      return;
    }
    LinIneq li;
    li.a = a / na;
    li.a0 = a0 / na;
    for (int i = 0; i < d; ++i)
      if (li.a(i) != 0.0) li.nz.push_back(i);
    li.source = source;
    li.kind = kind;
    m.lin.push_back(std::move(li));
    out.lin_norm.push_back(na);
  };

  for (std::size_t i = 0; i < p.linear.size(); ++i) {
    const auto& c = p.linear[i];
    if (c.sense != Sense::LessEqual) continue;
    RVec a;
    double a0;
    affine_to_real(c.lhs, m.blocks, d, a, a0);
    push_lin(a, a0 - c.rhs, int(i), 0);
  }
  for (std::size_t i = 0; i < p.entries.size(); ++i) {
    const auto& e = p.entries[i];
    if (e.sense != Sense::LessEqual) continue;
    Affine a;
    CMat c = CMat::Zero(p.block_dims[e.block], p.block_dims[e.block]);
    c(e.index, e.index) = 1.0;
    a.add(e.block, c);
    RVec coef;
    double c0;
    affine_to_real(a, m.blocks, d, coef, c0);
    push_lin(coef, c0 - e.value, int(i), 1);
  }

  for (std::size_t i = 0; i < p.lmis.size(); ++i) {
    const auto& lm = p.lmis[i];
    const BlockMap& b = m.blocks[lm.block];
    const Eigen::Index k = lm.sub_dim;
    const std::size_t n = std::size_t(b.n);
    // u(y) = vec(X_s L) = u0 + U y_b
    const CMat x0s = b.x0.topLeftCorner(k, k);
    const CVec u0 = vec(CMat(x0s * lm.factor));
    CMat u = CMat::Zero(u0.size(), b.count);
    for (int j = 0; j < b.count; ++j) {
      const BasisElem e = kernels::hermitian_basis_elem(n, std::size_t(b.basis[std::size_t(j)]));
      if (Eigen::Index(e.j) >= k) continue;
      CMat ej = CMat::Zero(k, k);
      basis_add(ej, e, 1.0);
      u.col(j) = vec(CMat(ej * lm.factor));
    }
    QuadIneq q;
    q.offset = b.offset;
    q.q2 = (u.adjoint() * u).real();
    q.q2 = 0.5 * (q.q2 + q.q2.transpose()).eval();
    q.q1 = (u.adjoint() * u0).real();
    RVec lb;
    double lb0;
    affine_to_real(lm.bound, m.blocks, d, lb, lb0);
    q.l = -lb;
    q.c0 = u0.squaredNorm() - lb0;
    q.source = int(i);
    double scale = std::max({q.q2.norm(), q.l.norm() + 2.0 * q.q1.norm(), std::abs(q.c0)});
    if (!(scale > 1e-300)) scale = 1.0;
    q.q2 /= scale;
    q.q1 /= scale;
    q.l /= scale;
    q.c0 /= scale;
    out.quad_norm.push_back(scale);
    m.quad.push_back(std::move(q));
  }

  // Objective.
  affine_to_real(p.objective, m.blocks, d, m.c, m.c0);
  for (const auto& l : p.log_terms) {
    LogFn f;
    f.w = l.weight;
    affine_to_real(l.arg, m.blocks, d, f.h, f.h0);
    m.logs.push_back(std::move(f));
  }
  if (m.logs.empty()) {
    const double cn = m.has_eq ? (m.z.transpose() * m.c).norm() : m.c.norm();
    // Terms that cancel down to roundoff count as a zero objective.
    double gross = 0.0;
    for (const auto& t : p.objective.terms) gross += t.coeff.norm();
    if (cn > 1e-300 && cn > 1e-13 * gross) {
      out.obj_scale = 1.0 / cn;
      out.objective_kind = 1;
    } else {
      out.obj_scale = 1.0;
      out.objective_kind = 0;
    }
  } else {
    out.objective_kind = 2;
  }
  m.c *= out.obj_scale;
  m.c0 *= out.obj_scale;
  for (auto& l : m.logs) l.w *= out.obj_scale;
  return out;
}

// Strictly feasible point via min s s.t. g_i ≤ s, X_b + sI ⪰ 0, s ≥ -1.
Status phase_one(const Model& m, RVec& y, const SolveOptions& opts, int& budget, std::string& msg) {
  Model ph;
  ph.d = m.d + 1;
  const int s = m.d;
  ph.blocks = m.blocks;
  for (auto& b : ph.blocks) b.s_var = s;
  for (const auto& li : m.lin) {
    LinIneq l = li;
    l.a.conservativeResize(ph.d);
    l.a(s) = -1.0;
    l.nz.push_back(s);
    ph.lin.push_back(std::move(l));
  }
  for (const auto& lf : m.logs) {  // keep log arguments positive
    if (lf.h.norm() == 0.0) continue;
    LinIneq l;
    const double scale = std::max(lf.h.norm(), std::abs(lf.h0));
    l.a = RVec::Zero(ph.d);
    l.a.head(m.d) = -lf.h / scale;
    l.a0 = -lf.h0 / scale;
    l.a(s) = -1.0;
    for (int i = 0; i < ph.d; ++i)
      if (l.a(i) != 0.0) l.nz.push_back(i);
    l.kind = 2;
    ph.lin.push_back(std::move(l));
  }
  // Loose trace caps keep the phase-I barrier bounded below on unbounded
  // feasible sets (a free epigraph variable would otherwise run off).
  {
    const auto x_start = block_values(m, y);
    for (std::size_t bi = 0; bi < m.blocks.size(); ++bi) {
      const BlockMap& b = m.blocks[bi];
      LinIneq l;
      l.a = RVec::Zero(ph.d);
      for (int k = 0; k < b.count; ++k)
        if (kernels::hermitian_basis_elem(std::size_t(b.n), std::size_t(b.basis[std::size_t(k)])).kind == 0)
          l.a(b.offset + k) = 1.0;
      if (l.a.norm() == 0.0) continue;
      const double cap = 1e8 * (1.0 + std::abs(rtrace(x_start[bi])));
      l.a0 = (rtrace(b.x0) - cap) / cap;
      l.a /= cap;
      for (int i = 0; i < ph.d; ++i)
        if (l.a(i) != 0.0) l.nz.push_back(i);
      l.kind = 2;
      ph.lin.push_back(std::move(l));
    }
  }
  {
    LinIneq l;  // -s - 1 ≤ 0
    l.a = RVec::Zero(ph.d);
    l.a(s) = -1.0;
    l.a0 = -1.0;
    l.nz = {s};
    l.kind = 2;
    ph.lin.push_back(std::move(l));
  }
  for (const auto& q : m.quad) {
    QuadIneq qq = q;
    qq.l.conservativeResize(ph.d);
    qq.l(s) = -1.0;
    ph.quad.push_back(std::move(qq));
  }
  ph.c = RVec::Zero(ph.d);
  ph.c(s) = -1.0;
  ph.has_eq = m.has_eq;
  if (m.has_eq) {
    ph.z = RMat::Zero(ph.d, m.z.cols() + 1);
    ph.z.topLeftCorner(m.d, m.z.cols()) = m.z;
    ph.z(s, m.z.cols()) = 1.0;
  }

  // Initial shift just above the worst violation.
  double worst = -kInf;
  for (const auto& li : m.lin) worst = std::max(worst, li.a.dot(y) + li.a0);
  for (const auto& q : m.quad) worst = std::max(worst, quad_value(q, y));
  for (const auto& lf : m.logs) {
    if (lf.h.norm() == 0.0) continue;
    const double scale = std::max(lf.h.norm(), std::abs(lf.h0));
    worst = std::max(worst, -(lf.h.dot(y) + lf.h0) / scale);
  }
  const auto xs = block_values(m, y);
  for (const auto& x : xs) worst = std::max(worst, -min_eigenvalue(hermitian_part(x)));
  if (worst < -1e-3) return Status::Optimal;  // already strictly feasible

  RVec yy(ph.d);
  yy.head(m.d) = y;
  yy(s) = std::max(worst + 1.0, -0.5);
  const double nu = ph.nu();
  double t = 1.0;
  auto deep = [&](const RVec& v) { return v(s) < -0.1; };
  for (int outer = 0; outer < 200; ++outer) {
    const CenterResult r = center(ph, yy, t, budget, deep);
    if (r == CenterResult::Failed) {
      msg = "phase I: Newton failure";
      return Status::NumericalFailure;
    }
    if (r == CenterResult::Budget) {
      msg = "phase I: iteration budget";
      return Status::MaxIterations;
    }
    const double sv = yy(s);
    if (trace_enabled()) std::fprintf(stderr, "[phase1] t=%.3g s=%.6g\n", t, sv);
    if (sv < -0.1 || (sv < 0.0 && nu / t <= -sv)) {
      y = yy.head(m.d);
      return Status::Optimal;
    }
    if (sv - nu / t > opts.feas_tol) {
      msg = "phase I: no feasible point (s* > 0)";
      return Status::Infeasible;
    }
    if (nu / t < 1e-12) {
      if (sv < 0.0) {
        y = yy.head(m.d);
        return Status::Optimal;
      }
      msg = "phase I: feasible set has no interior";
      return Status::Infeasible;
    }
    t *= opts.mu;
  }
  msg = "phase I: no convergence";
  return Status::MaxIterations;
}

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SolveOptions& opts) {
  problem.validate();
  SdpSolution sol;
  Build b = build_model(problem);
  Model& m = b.m;
  if (b.trivially_infeasible) {
    sol.status = Status::Infeasible;
    sol.message = b.why;
    return sol;
  }
  for (const auto& l : m.logs)
    if (l.h.norm() == 0.0 && !(l.h0 > 0.0)) {
      sol.status = Status::Infeasible;
      sol.message = "log term with non-positive constant argument";
      return sol;
    }
  int budget = opts.max_newton;
  RVec y = b.y_start;
  std::string msg;
  const Status ph = phase_one(m, y, opts, budget, msg);
  if (ph != Status::Optimal) {
    sol.status = ph;
    sol.message = msg;
    sol.newton_steps = opts.max_newton - budget;
    return sol;
  }

  const double nu = m.nu();
  double t = 1.0;
  Status status = Status::MaxIterations;
  if (b.objective_kind == 0) {
    const CenterResult r = center(m, y, t, budget);
    status = r == CenterResult::Failed ? Status::NumericalFailure
             : r == CenterResult::Budget ? Status::MaxIterations
                                         : Status::Optimal;
  } else {
    for (int outer = 0; outer < 200; ++outer) {
      const CenterResult r = center(m, y, t, budget);
      if (r == CenterResult::Failed) {
        status = Status::NumericalFailure;
        msg = "Newton failure at t=" + std::to_string(t);
        break;
      }
      if (r == CenterResult::Budget) {
        status = Status::MaxIterations;
        msg = "iteration budget exhausted";
        break;
      }
      const double fval = objective_of(m, y);
      if (trace_enabled()) std::fprintf(stderr, "[phase2] t=%.3g f=%.12g gap=%.3g\n", t, fval, nu / t);
      if (nu / t <= opts.gap_abs || nu / t <= opts.gap_rel * std::abs(fval)) {
        status = Status::Optimal;
        break;
      }
      if (r == CenterResult::Stalled && nu / t <= 1e-6 * (1.0 + std::abs(fval))) {
        status = Status::Optimal;  // roundoff floor; gap already small
        msg = "stopped at roundoff floor";
        break;
      }
      t *= opts.mu;
    }
  }

  sol.status = status;
  sol.message = msg;
  sol.newton_steps = opts.max_newton - budget;
  sol.blocks = block_values(m, y);
  for (auto& x : sol.blocks) x = hermitian_part(x);
  sol.objective = problem.objective_value(sol.blocks);
  const double tk = t * b.obj_scale;
  sol.gap = b.objective_kind == 0 ? 0.0 : nu / tk;

  for (const auto& c : problem.linear) {
    const double v = c.lhs.eval(sol.blocks);
    sol.linear_slack.push_back(c.rhs - v);
    const double slack = c.rhs - v;
    sol.linear_multiplier.push_back(c.sense == Sense::LessEqual && slack > 0 ? 1.0 / (tk * slack) : 0.0);
  }
  for (const auto& e : problem.entries) {
    const double v = sol.blocks[e.block](e.index, e.index).real();
    const double slack = e.value - v;
    sol.entry_slack.push_back(slack);
    sol.entry_multiplier.push_back(e.sense == Sense::LessEqual && slack > 0 ? 1.0 / (tk * slack) : 0.0);
  }
  for (const auto& lm : problem.lmis) {
    const double slack = lm.slack(sol.blocks);
    sol.lmi_slack.push_back(slack);
    sol.lmi_multiplier.push_back(slack > 0 ? 1.0 / (tk * slack) : 0.0);
  }
  for (const auto& x : sol.blocks) {
    Eigen::LLT<CMat> llt(x);
    CMat inv = llt.solve(CMat::Identity(x.rows(), x.cols()));
    sol.dual_blocks.push_back(hermitian_part(inv) / tk);
  }
  if (!std::isfinite(sol.objective) && status == Status::Optimal) {
    sol.status = Status::NumericalFailure;
    sol.message = "non-finite objective";
  }
  return sol;
}

}  // namespace aris::conic
