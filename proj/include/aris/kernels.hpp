#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

// Hot loops with a scalar reference and an AVX2/FMA variant. The variant is
// picked once at first use from the CPU flags; ARIS_KERNELS=scalar forces
// the reference path.
namespace aris::kernels {

using cd = std::complex<double>;

enum class Isa { Scalar, Avx2 };

// Σ conj(x_i) y_i
using CdotcFn = cd (*)(const cd* x, const cd* y, std::size_t n);

// out[k] = Re(a_kᴴ S a_k), S n×n column-major Hermitian, A n×count column-major.
using QuadformBatchFn = void (*)(const cd* s, std::size_t n, const cd* a,
                                 std::size_t count, double* out);

// Hessian of -ln det X at S = X⁻¹ in the real Hermitian basis (see
// hermitian_basis_index). H is row-major n²×n².
using LogdetHessianFn = void (*)(const cd* s, std::size_t n, double* h);

struct Table {
  Isa isa;
  CdotcFn cdotc;
  QuadformBatchFn quadform_batch;
  LogdetHessianFn logdet_hessian;
};

const Table& active();
const Table& scalar_table();
// Null when the CPU lacks AVX2/FMA.
const Table* avx2_table();
std::string_view isa_name(Isa isa);

// Real basis of n×n Hermitian matrices, n² elements ordered column by column:
// for column j, rows i < j give (Re, Im) pairs, then the diagonal (j, j).
//   diag:  e_i e_iᵀ
//   Re:    e_i e_jᵀ + e_j e_iᵀ
//   Im:    i(e_i e_jᵀ - e_j e_iᵀ)
struct BasisElem {
  std::size_t i, j;
  int kind;  // 0 diag, 1 Re, 2 Im
};
BasisElem hermitian_basis_elem(std::size_t n, std::size_t k);
std::size_t hermitian_basis_index(std::size_t i, std::size_t j, int kind);

namespace detail {
cd cdotc_scalar(const cd* x, const cd* y, std::size_t n);
void quadform_batch_scalar(const cd* s, std::size_t n, const cd* a,
                           std::size_t count, double* out);
void logdet_hessian_scalar(const cd* s, std::size_t n, double* h);
cd cdotc_avx2(const cd* x, const cd* y, std::size_t n);
void quadform_batch_avx2(const cd* s, std::size_t n, const cd* a,
                         std::size_t count, double* out);
void logdet_hessian_avx2(const cd* s, std::size_t n, double* h);
}  // namespace detail

}  // namespace aris::kernels
