#include <algorithm>
#include <cmath>
#include <string>

#include "hpm/errors.hpp"
#include "hpm/moments.hpp"

namespace hpm::moments {

namespace {

// |sum| / max |term|, skipping terms whose coefficient is exactly zero.
template <std::size_t M>
double relative_residual(const std::array<cplx, M>& terms) {
  cplx sum = 0.0;
  double scale = 0.0;
  for (const cplx& t : terms) {
    sum += t;
    scale = std::max(scale, std::abs(t));
  }
  return scale == 0.0 ? 0.0 : std::abs(sum) / scale;
}

}  // namespace

ThreeTerm q_recurrence_coefficients(const EnsembleParams& params, cplx k) {
  const double s = params.re_s(), n = params.n();
  const cplx k2 = 2.0 * k;
  return {(k2 + 4.0) * (4.0 * s * s - (k2 + 3.0) * (k2 + 3.0)),
          -2.0 * (k2 + 1.0) * (2.0 * n * (n + 2.0 * s) + (k2 + 2.0) * (k2 + 2.0)),
          -(k2 + 1.0) * k2 * (k2 - 1.0)};
}

std::vector<cplx> q_recurrence(const EnsembleParams& params, cplx k0, int n_steps) {
  if (!params.is_real()) throw DomainError("moment recurrence needs real s");
  if (n_steps < 0) throw DomainError("n_steps must be non-negative");
  std::vector<cplx> q;
  q.reserve(n_steps + 1);
  if (k0 == 0.0) {
    const auto [q0, q1] = q_initial(params);
    q.push_back(q0);
    if (n_steps >= 1) q.push_back(q1);
  } else {
    q.push_back(q_hahn(params, k0));
    if (n_steps >= 1) q.push_back(q_hahn(params, k0 + 1.0));
  }
  for (int i = 1; i < n_steps; ++i) {
    const cplx k = k0 + double(i);
    const ThreeTerm c = q_recurrence_coefficients(params, k);
    if (c.r == 0.0)
      throw PivotError("recurrence pivot R(k) vanishes at k = " + std::to_string(k.real()) +
                       "; seed past it from the closed form");
    q.push_back(-(c.t * q[i] + c.s * q[i - 1]) / c.r);
  }
  return q;
}

double q_recurrence_residual(const EnsembleParams& params, cplx k) {
  const ThreeTerm c = q_recurrence_coefficients(params, k);
  std::array<cplx, 3> t{};
  if (c.r != 0.0) t[0] = c.r * q_hahn(params, k + 1.0);
  t[1] = c.t * q_hahn(params, k);
  if (c.s != 0.0) t[2] = c.s * q_hahn(params, k - 1.0);
  return relative_residual(t);
}

double j_difference_residual(const EnsembleParams& params, cplx k, double perturb) {
  const double s = params.re_s(), n = params.n();
  const cplx k2 = 2.0 * k;
  const std::array<cplx, 3> t{
      (k2 + 4.0) * (2.0 * s + k2 + 3.0) * j_hahn(params, k + 1.0),
      k2 * (k2 + 1.0 - 2.0 * s) * j_hahn(params, k - 1.0),
      -2.0 * (2.0 * n * (n + 2.0 * s) * (1.0 + perturb) + (k2 + 2.0) * (k2 + 2.0)) * j_hahn(params, k)};
  return relative_residual(t);
}

std::array<double, 5> general_recurrence_coefficients(const EnsembleParams& params, double t) {
  const double a = params.re_s(), b = params.im_s(), n = params.n();
  const double f2 = t * (t - 1.0);
  const double f4 = f2 * (t - 2.0) * (t - 3.0);
  return {4.0 * a * a * (t + 1.0) * (t - 1.0) - 6.0 * t * (t - 1.0) * (t - 1.0) - f4,
          4.0 * b * (-a - n) * t * (2.0 * t - 1.0),
          f2 * (-2.0 * (t - 1.0) * (t - 1.0) + 4.0 * b * b + 4.0 * n * (-n - 2.0 * a)),
          0.0,
          -f4};
}

double general_recurrence_residual(const EnsembleParams& params, double t) {
  if (!(t > 4.0 && t < 2.0 * params.re_s()))
    throw DomainError("five-term recurrence needs 4 < t < 2 Re s, got t = " + std::to_string(t));
  const auto c = general_recurrence_coefficients(params, t);
  std::array<cplx, 5> terms{};
  for (int i = 0; i < 5; ++i)
    if (c[i] != 0.0) terms[i] = c[i] * a_integral(params, t - i).value;
  return relative_residual(terms);
}

std::array<double, 4> tilde_recurrence_coefficients(const EnsembleParams& params, int m) {
  const double a = params.re_s(), b = params.im_s(), n = params.n(), x = m;
  return {(x + 2.0) * (4.0 * a * a - (x + 1.0) * (x + 1.0)),
          4.0 * b * (-a - n) * (2.0 * x + 1.0),
          (x - 1.0) * (-2.0 * x * x + 4.0 * b * b + 4.0 * n * (-n - 2.0 * a)),
          -(x - 1.0) * (x - 2.0) * (x - 3.0)};
}

double tilde_recurrence_residual(const EnsembleParams& params, int m) {
  if (m < 1) throw DomainError("tilde recurrence needs m >= 1");
  const auto c = tilde_recurrence_coefficients(params, m);
  static constexpr int shift[] = {0, 1, 2, 4};
  std::array<cplx, 4> terms{};
  for (int i = 0; i < 4; ++i)
    if (c[i] != 0.0) terms[i] = c[i] * tilde_q(params, m - shift[i]);
  return relative_residual(terms);
}

}  // namespace hpm::moments
