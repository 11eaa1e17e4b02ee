#include "aris/matkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace aris {

CVec vec(const CMat& m) {
  return Eigen::Map<const CVec>(m.data(), m.size());
}

CMat unvec_sigma(const CVec& p, Eigen::Index n) {
  if (n < 0 || p.size() != n * n)
    throw DimensionError("unvec_sigma: length " + std::to_string(p.size()) +
                         " is not " + std::to_string(n) + "^2");
  return Eigen::Map<const CMat>(p.data(), n, n);
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double hermitian_defect(const CMat& m) {
  if (m.rows() != m.cols()) return INFINITY;
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  return hermitian_defect(m) <= tol * (1.0 + m.cwiseAbs().maxCoeff());
}

CMat hermitian_part(const CMat& m) { return 0.5 * (m + m.adjoint()); }

static void require_hermitian(const CMat& m, const char* who) {
  if (m.rows() != m.cols())
    throw DimensionError(std::string(who) + ": matrix is not square");
  if (!is_hermitian(m))
    throw ContractViolation(std::string(who) + ": matrix is not Hermitian");
}

EigPair herm_eig_max(const CMat& m) {
  require_hermitian(m, "herm_eig_max");
  if (m.rows() == 0) throw DimensionError("herm_eig_max: empty matrix");
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(m));
  const Eigen::Index k = m.rows() - 1;
  return {es.eigenvalues()(k), es.eigenvectors().col(k)};
}

double min_eigenvalue(const CMat& m) {
  require_hermitian(m, "min_eigenvalue");
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

CMat psd_cholesky(const CMat& m, double tol) {
  require_hermitian(m, "psd_cholesky");
  const Eigen::Index n = m.rows();
  CMat a = hermitian_part(m);
  if (n == 0) return a;

  Eigen::SelfAdjointEigenSolver<CMat> es(a);
  const RVec& lam = es.eigenvalues();
  const double scale = std::max(std::abs(lam(0)), std::abs(lam(n - 1)));
  if (scale == 0.0) return CMat::Zero(n, n);
  if (lam(0) < -tol * scale)
    throw NotPsdError("psd_cholesky: eigenvalue " + std::to_string(lam(0)) +
                      " below tolerance");
  if (lam(0) < 0.0) {
    RVec clipped = lam.cwiseMax(0.0);
    a = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
  }

  // Diagonal-pivoted Cholesky, stopping at the numerical rank.
  std::vector<Eigen::Index> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  CMat l = CMat::Zero(n, n);
  RVec d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = a(i, i).real();
  const double stop = std::max(tol, 1e-13 * double(n)) * scale;

  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    for (Eigen::Index i = k + 1; i < n; ++i)
      if (d(perm[i]) > d(perm[p])) p = i;
    if (d(perm[p]) <= stop) break;
    std::swap(perm[k], perm[p]);
    const Eigen::Index pk = perm[k];
    const double piv = std::sqrt(d(pk));
    l(pk, k) = piv;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Eigen::Index pi = perm[i];
      cdouble s = a(pi, pk);
      for (Eigen::Index j = 0; j < k; ++j) s -= l(pi, j) * std::conj(l(pk, j));
      l(pi, k) = s / piv;
      d(pi) -= std::norm(l(pi, k));
    }
  }
  return l;
}

}  // namespace aris
