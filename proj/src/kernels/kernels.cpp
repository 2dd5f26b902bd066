#include "hpm/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace hpm::kernels {

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double log_abs_ratio_sum_scalar(double x_new, double x_old, const double* others, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    s += std::log(std::fabs(x_new - others[j])) - std::log(std::fabs(x_old - others[j]));
  return s;
}

}  // namespace detail

namespace {

const Table kScalar{Isa::scalar, detail::dot_scalar, detail::log_abs_ratio_sum_scalar};
const Table kAvx2{Isa::avx2, detail::dot_avx2, detail::log_abs_ratio_sum_avx2};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table& choose() {
  const char* env = std::getenv("HPM_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return kScalar;
  if (const Table* t = avx2_table()) return *t;
  return kScalar;
}

}  // namespace

const Table& scalar_table() { return kScalar; }

const Table* avx2_table() {
  static const bool ok = detail::avx2_compiled() && cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
}

const Table& active() {
  static const Table& t = choose();
  return t;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

}  // namespace hpm::kernels
