#include <doctest.h>

#include <vector>

#include "aris/kernels.hpp"
#include "aris/scenario.hpp"

using namespace aris;
namespace k = aris::kernels;

namespace {

CMat basis_matrix(std::size_t n, std::size_t idx) {
  const k::BasisElem e = k::hermitian_basis_elem(n, idx);
  CMat b = CMat::Zero(Eigen::Index(n), Eigen::Index(n));
  const auto i = Eigen::Index(e.i), j = Eigen::Index(e.j);
  if (e.kind == 0) b(i, i) = 1.0;
  else if (e.kind == 1) b(i, j) = b(j, i) = 1.0;
  else b(i, j) = kI, b(j, i) = -kI;
  return b;
}

CMat random_pd(int n, Rng& rng) {
  const CMat x = rng.cnormal_mat(n, n);
  CMat p = x * x.adjoint();
  p.diagonal().array() += 0.5;
  return p;
}

}  // namespace

TEST_CASE("hermitian basis indexing round-trips") {
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t idx = 0; idx < n * n; ++idx) {
      const k::BasisElem e = k::hermitian_basis_elem(n, idx);
      CHECK(k::hermitian_basis_index(e.i, e.j, e.kind) == idx);
    }
}

TEST_CASE("scalar logdet Hessian equals tr(S B_k S B_l)") {
  Rng rng(21);
  for (int n : {1, 2, 3, 5}) {
    const CMat s = random_pd(n, rng).inverse();
    const std::size_t p = std::size_t(n) * std::size_t(n);
    std::vector<double> h(p * p);
    k::scalar_table().logdet_hessian(s.data(), std::size_t(n), h.data());
    double worst = 0.0;
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = 0; b < p; ++b) {
        const double ref = (s * basis_matrix(std::size_t(n), a) * s * basis_matrix(std::size_t(n), b)).trace().real();
        worst = std::max(worst, std::abs(h[a * p + b] - ref));
      }
    CHECK(worst < 1e-10 * (1.0 + s.norm() * s.norm()));
  }
}

TEST_CASE("AVX2 kernels match the scalar reference") {
  const k::Table* v = k::avx2_table();
  if (!v) {
    MESSAGE("CPU lacks AVX2/FMA; equivalence not exercised");
    return;
  }
  const k::Table& s = k::scalar_table();
  Rng rng(22);
  for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 8u, 33u}) {
    const CVec x = rng.cnormal_vec(Eigen::Index(n)), y = rng.cnormal_vec(Eigen::Index(n));
    const k::cd a = s.cdotc(x.data(), y.data(), n), b = v->cdotc(x.data(), y.data(), n);
    CHECK(std::abs(a - b) <= 1e-13 * (1.0 + double(n)));
    if (n > 0) CHECK(std::abs(a - x.dot(y)) <= 1e-12 * (1.0 + double(n)));
  }
  for (int n : {1, 2, 3, 5, 12}) {
    const CMat x = rng.cnormal_mat(n, n);
    const CMat herm = x * x.adjoint();
    const std::size_t count = 37;
    const CMat a = rng.cnormal_mat(n, Eigen::Index(count));
    std::vector<double> o1(count), o2(count);
    s.quadform_batch(herm.data(), std::size_t(n), a.data(), count, o1.data());
    v->quadform_batch(herm.data(), std::size_t(n), a.data(), count, o2.data());
    for (std::size_t i = 0; i < count; ++i) {
      const double ref = (a.col(Eigen::Index(i)).adjoint() * herm * a.col(Eigen::Index(i)))(0).real();
      CHECK(std::abs(o1[i] - ref) <= 1e-12 * (1.0 + std::abs(ref)));
      CHECK(std::abs(o2[i] - o1[i]) <= 1e-12 * (1.0 + std::abs(ref)));
    }
  }
  for (int n : {1, 2, 3, 4, 6, 13}) {
    const CMat sm = random_pd(n, rng).inverse();
    const std::size_t p = std::size_t(n) * std::size_t(n);
    std::vector<double> h1(p * p), h2(p * p);
    s.logdet_hessian(sm.data(), std::size_t(n), h1.data());
    v->logdet_hessian(sm.data(), std::size_t(n), h2.data());
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < p * p; ++i) worst = std::max(worst, std::abs(h1[i] - h2[i])), scale = std::max(scale, std::abs(h1[i]));
    CHECK(worst <= 1e-12 * (1.0 + scale));
  }
}

TEST_CASE("active table is one of the two") {
  const k::Table& t = k::active();
  CHECK((t.isa == k::Isa::Scalar || t.isa == k::Isa::Avx2));
  CHECK(k::isa_name(k::Isa::Avx2) == "avx2");
  CHECK(k::isa_name(k::Isa::Scalar) == "scalar");
}
