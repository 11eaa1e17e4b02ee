#include <cstdlib>
#include <cstring>

#include "aris/kernels.hpp"

namespace aris::kernels {

namespace {

const Table kScalar{Isa::Scalar, detail::cdotc_scalar, detail::quadform_batch_scalar,
                    detail::logdet_hessian_scalar};
const Table kAvx2{Isa::Avx2, detail::cdotc_avx2, detail::quadform_batch_avx2,
                  detail::logdet_hessian_avx2};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table& choose() {
  const char* env = std::getenv("ARIS_KERNELS");
  if (env && std::strcmp(env, "scalar") == 0) return kScalar;
  return cpu_has_avx2() ? kAvx2 : kScalar;
}

}  // namespace

const Table& active() {
  static const Table& t = choose();
  return t;
}

const Table& scalar_table() { return kScalar; }

const Table* avx2_table() { return cpu_has_avx2() ? &kAvx2 : nullptr; }

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

}  // namespace aris::kernels
