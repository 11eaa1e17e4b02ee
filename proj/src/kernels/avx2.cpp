#include "aris/kernels.hpp"

#include <vector>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define ARIS_HAVE_X86 1
#endif

namespace aris::kernels::detail {

#ifdef ARIS_HAVE_X86

#define ARIS_AVX2 __attribute__((target("avx2,fma")))

// y[0..n) += c * x[0..n), interleaved complex.
ARIS_AVX2 static void caxpy(cd c, const cd* x, cd* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d cr = _mm256_set1_pd(c.real());
  const __m256d ci = _mm256_set1_pd(c.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);
    const __m256d prod = _mm256_fmaddsub_pd(cr, xv, _mm256_mul_pd(ci, xs));
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), prod));
  }
  for (; i < n; ++i) y[i] += c * x[i];
}

ARIS_AVX2 cd cdotc_avx2(const cd* x, const cd* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d same = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), cross);
  }
  alignas(32) double a[4], b[4];
  _mm256_store_pd(a, same);
  _mm256_store_pd(b, cross);
  cd acc{a[0] + a[1] + a[2] + a[3], (b[0] - b[1]) + (b[2] - b[3])};
  for (; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

ARIS_AVX2 void quadform_batch_avx2(const cd* s, std::size_t n, const cd* a,
                                   std::size_t count, double* out) {
  std::vector<cd> t(n);
  for (std::size_t k = 0; k < count; ++k) {
    const cd* ak = a + k * n;
    for (std::size_t i = 0; i < n; ++i) t[i] = 0.0;
    for (std::size_t j = 0; j < n; ++j) caxpy(ak[j], s + j * n, t.data(), n);
    out[k] = cdotc_avx2(ak, t.data(), n).real();
  }
}

// Same contraction as the scalar path, with each column of Y = S E_k S
// built by complex axpys of columns of S.
ARIS_AVX2 void logdet_hessian_avx2(const cd* s, std::size_t n, double* h) {
  const std::size_t p = n * n;
  auto S = [&](std::size_t r, std::size_t c) { return s[r + c * n]; };
  const cd im{0.0, 1.0};
  std::vector<cd> y(p);
  for (std::size_t k = 0; k < p; ++k) {
    const BasisElem e = hermitian_basis_elem(n, k);
    for (std::size_t q = 0; q < n; ++q) {
      cd* col = y.data() + q * n;
      for (std::size_t r = 0; r < n; ++r) col[r] = 0.0;
      if (e.kind == 0) {
        caxpy(S(e.i, q), s + e.i * n, col, n);
      } else if (e.kind == 1) {
        caxpy(S(e.j, q), s + e.i * n, col, n);
        caxpy(S(e.i, q), s + e.j * n, col, n);
      } else {
        caxpy(im * S(e.j, q), s + e.i * n, col, n);
        caxpy(-im * S(e.i, q), s + e.j * n, col, n);
      }
    }
    double* row = h + k * p;
    for (std::size_t l = 0; l < p; ++l) {
      const BasisElem f = hermitian_basis_elem(n, l);
      const cd ycd = y[f.i + f.j * n];
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

#else

cd cdotc_avx2(const cd* x, const cd* y, std::size_t n) { return cdotc_scalar(x, y, n); }
void quadform_batch_avx2(const cd* s, std::size_t n, const cd* a, std::size_t count,
                         double* out) {
  quadform_batch_scalar(s, n, a, count, out);
}
void logdet_hessian_avx2(const cd* s, std::size_t n, double* h) {
  logdet_hessian_scalar(s, n, h);
}

#endif

}  // namespace aris::kernels::detail
