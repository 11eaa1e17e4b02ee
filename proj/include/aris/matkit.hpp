#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace aris {

using cdouble = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr cdouble kI{0.0, 1.0};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct NotPsdError : std::domain_error {
  using std::domain_error::domain_error;
};

// Column-major stacking.
CVec vec(const CMat& m);
// Inverse of vec for a length n*n vector.
CMat unvec_sigma(const CVec& p, Eigen::Index n);
CMat kron(const CMat& a, const CMat& b);

bool is_hermitian(const CMat& m, double tol = 1e-12);
double hermitian_defect(const CMat& m);
CMat hermitian_part(const CMat& m);

struct EigPair {
  double value = 0.0;
  CVec vector;
};

// Largest eigenpair of a Hermitian matrix; unit-norm vector.
EigPair herm_eig_max(const CMat& m);

// L with L Lᴴ = M for Hermitian PSD M. Pivoted Cholesky on the clipped
// spectrum: columns past the numerical rank are zero.
// Throws NotPsdError when the most negative eigenvalue is below -tol*‖M‖.
CMat psd_cholesky(const CMat& m, double tol = 1e-9);

double min_eigenvalue(const CMat& hermitian);

// tr(A) restricted to its real part, for Hermitian arguments.
inline double rtrace(const CMat& a) { return a.trace().real(); }

}  // namespace aris
