#pragma once

// Inner loops with a scalar reference and an AVX2 variant. The table is
// picked once, on first use, from the CPU features; HPM_SIMD=scalar in the
// environment forces the reference path.

#include <cstddef>

namespace hpm::kernels {

enum class Isa { scalar, avx2 };

struct Table {
  Isa isa;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_j log|x_new - o[j]| - log|x_old - o[j]|
  double (*log_abs_ratio_sum)(double x_new, double x_old, const double* others, std::size_t n);
};

const Table& active();
const Table& scalar_table();
// nullptr when the CPU (or the build) has no AVX2+FMA.
const Table* avx2_table();
const char* isa_name(Isa isa);

inline double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
inline double log_abs_ratio_sum(double x_new, double x_old, const double* others, std::size_t n) {
  return active().log_abs_ratio_sum(x_new, x_old, others, n);
}

namespace detail {
double dot_scalar(const double* a, const double* b, std::size_t n);
double log_abs_ratio_sum_scalar(double x_new, double x_old, const double* others, std::size_t n);
double dot_avx2(const double* a, const double* b, std::size_t n);
double log_abs_ratio_sum_avx2(double x_new, double x_old, const double* others, std::size_t n);
bool avx2_compiled();
}  // namespace detail

}  // namespace hpm::kernels
