// Built with -mavx2 -mfma; only reached through the dispatch table after
// a CPU check.

#include <cfloat>
#include <cmath>
#include <cstdint>

#include "hpm/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace hpm::kernels::detail {

bool avx2_compiled() { return true; }

namespace {

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

// Product of |ratios| per lane, kept as mantissa in [1,2) times 2^exponent
// so long products cannot overflow; one log per lane at the end.
double log_abs_ratio_sum_avx2(double x_new, double x_old, const double* others, std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d vnew = _mm256_set1_pd(x_new);
  const __m256d vold = _mm256_set1_pd(x_old);
  const __m256d lo_ok = _mm256_set1_pd(DBL_MIN);
  const __m256d hi_ok = _mm256_set1_pd(DBL_MAX);
  const __m256i mant_mask = _mm256_set1_epi64x(0x000fffffffffffffLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3ff0000000000000LL);
  const __m256i bias = _mm256_set1_epi64x(1023);

  __m256d mant = _mm256_set1_pd(1.0);
  __m256i expo = _mm256_setzero_si256();
  __m256d bad = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d o = _mm256_loadu_pd(others + j);
    __m256d num = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(vnew, o));
    __m256d den = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(vold, o));
    __m256d r = _mm256_mul_pd(mant, _mm256_div_pd(num, den));
    // NaN compares false on both sides, so it lands in bad as well.
    __m256d ok = _mm256_and_pd(_mm256_cmp_pd(r, lo_ok, _CMP_GE_OQ), _mm256_cmp_pd(r, hi_ok, _CMP_LE_OQ));
    bad = _mm256_or_pd(bad, _mm256_xor_pd(ok, _mm256_castsi256_pd(_mm256_set1_epi64x(-1))));
    __m256i bits = _mm256_castpd_si256(r);
    expo = _mm256_add_epi64(expo, _mm256_sub_epi64(_mm256_srli_epi64(bits, 52), bias));
    mant = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
  }
  if (_mm256_movemask_pd(bad) != 0) return log_abs_ratio_sum_scalar(x_new, x_old, others, n);

  alignas(32) double m[4];
  alignas(32) std::int64_t e[4];
  _mm256_store_pd(m, mant);
  _mm256_store_si256(reinterpret_cast<__m256i*>(e), expo);
  double s = 0.0;
  for (int l = 0; l < 4; ++l) s += std::log(m[l]) + static_cast<double>(e[l]) * M_LN2;
  for (; j < n; ++j)
    s += std::log(std::fabs(x_new - others[j])) - std::log(std::fabs(x_old - others[j]));
  return s;
}

}  // namespace hpm::kernels::detail

#else

namespace hpm::kernels::detail {

bool avx2_compiled() { return false; }
double dot_avx2(const double* a, const double* b, std::size_t n) { return dot_scalar(a, b, n); }
double log_abs_ratio_sum_avx2(double x_new, double x_old, const double* others, std::size_t n) {
  return log_abs_ratio_sum_scalar(x_new, x_old, others, n);
}

}  // namespace hpm::kernels::detail

#endif
