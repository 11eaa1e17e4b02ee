#include "aris/kernels.hpp"

#include <vector>

namespace aris::kernels {

BasisElem hermitian_basis_elem(std::size_t n, std::size_t k) {
  (void)n;
  std::size_t j = 0;
  while ((j + 1) * (j + 1) <= k) ++j;
  const std::size_t r = k - j * j;
  if (r == 2 * j) return {j, j, 0};
  return {r / 2, j, int(r % 2) + 1};
}

std::size_t hermitian_basis_index(std::size_t i, std::size_t j, int kind) {
  if (kind == 0) return j * j + 2 * j;
  return j * j + 2 * i + std::size_t(kind - 1);
}

namespace detail {

inline cd kI_mul(cd z) { return {-z.imag(), z.real()}; }

cd cdotc_scalar(const cd* x, const cd* y, std::size_t n) {
  cd acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

void quadform_batch_scalar(const cd* s, std::size_t n, const cd* a,
                           std::size_t count, double* out) {
  std::vector<cd> t(n);
  for (std::size_t k = 0; k < count; ++k) {
    const cd* ak = a + k * n;
    for (std::size_t i = 0; i < n; ++i) t[i] = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) t[i] += s[i + j * n] * ak[j];
    out[k] = cdotc_scalar(ak, t.data(), n).real();
  }
}

// Row k of the Hessian is the basis read-out of Y = S E_k S, where
// Y = Σ α S e_a e_bᵀ S has entries Y_pq = Σ α S_pa S_bq.
void logdet_hessian_scalar(const cd* s, std::size_t n, double* h) {
  const std::size_t p = n * n;
  auto S = [&](std::size_t r, std::size_t c) { return s[r + c * n]; };
  std::vector<cd> y(p);
  for (std::size_t k = 0; k < p; ++k) {
    const BasisElem e = hermitian_basis_elem(n, k);
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r) {
        cd v;
        if (e.kind == 0)
          v = S(r, e.i) * S(e.i, q);
        else if (e.kind == 1)
          v = S(r, e.i) * S(e.j, q) + S(r, e.j) * S(e.i, q);
        else
          v = kI_mul(S(r, e.i) * S(e.j, q) - S(r, e.j) * S(e.i, q));
        y[r + q * n] = v;
      }
    double* row = h + k * p;
    for (std::size_t l = 0; l < p; ++l) {
      const BasisElem f = hermitian_basis_elem(n, l);
      const cd ycd = y[f.i + f.j * n];  // Y_cd with c = f.i, d = f.j
      const cd ydc = y[f.j + f.i * n];
      if (f.kind == 0)
        row[l] = ycd.real();
      else if (f.kind == 1)
        row[l] = ycd.real() + ydc.real();
      else
        row[l] = ycd.imag() - ydc.imag();
    }
  }
}

}  // namespace detail
}  // namespace aris::kernels
