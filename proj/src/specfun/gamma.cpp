#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hpm/errors.hpp"
#include "hpm/specfun.hpp"

namespace hpm::specfun {

namespace {

using std::numbers::pi;

// Lanczos approximation with g = 671/128 and 14 terms; about 1e-15
// relative accuracy in Gamma for Re z >= 1/2.
constexpr double kLanczosG = 5.24218750000000000;
constexpr double kLanczosC0 = 0.999999999999997092;
constexpr double kLanczos[14] = {
    57.1562356658629235,     -59.5979603554754912,     14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,   .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,   -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3,  .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

cplx log_gamma_lanczos(cplx z) {
  cplx t = z + kLanczosG;
  cplx head = (z + 0.5) * std::log(t) - t;
  cplx ser = kLanczosC0;
  cplx y = z;
  for (double c : kLanczos) {
    y += 1.0;
    ser += c / y;
  }
  return head + std::log(std::sqrt(2.0 * pi)) + std::log(ser) - std::log(z);
}

// log(1 + w), accurate for small |w|.
cplx log1p_c(cplx w) {
  if (std::abs(w) > 0.5) return std::log(1.0 + w);
  double re = 0.5 * std::log1p(2.0 * w.real() + std::norm(w));
  double im = std::atan2(w.imag(), 1.0 + w.real());
  return {re, im};
}

// log sin(pi z) for Im z >= 0 on the branch that is continuous in the
// closed upper half plane and real for 0 < z < 1:
//   sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}).
cplx log_sin_pi_upper(cplx z) {
  double x = z.real();
  double frac = x - std::nearbyint(x);
  cplx e = std::exp(cplx(-2.0 * pi * z.imag(), 2.0 * pi * frac));
  return cplx(-std::log(2.0), pi / 2.0) - cplx(0.0, pi) * z + log1p_c(-e);
}

cplx log_gamma_upper(cplx z) {
  if (z.real() >= 0.5) return log_gamma_lanczos(z);
  return std::log(pi) - log_sin_pi_upper(z) - log_gamma_lanczos(1.0 - z);
}

}  // namespace

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::nearbyint(z.real());
}

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z))
    throw PoleError("log_gamma: pole at z = " + std::to_string(z.real()));
  if (z.imag() < 0.0) return std::conj(log_gamma_upper(std::conj(z)));
  return log_gamma_upper(z);
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

double reciprocal_gamma(double x) {
  if (x <= 0.0 && x == std::nearbyint(x)) return 0.0;
  double g = std::tgamma(x);
  if (std::isfinite(g) && g != 0.0) return 1.0 / g;
  int sign = 1;
  double lg = lgamma_r(x, &sign);
  return sign * std::exp(-lg);
}

cplx pochhammer(cplx x, int k) {
  if (k < 0) throw DomainError("pochhammer: negative length");
  // Product with a running binary exponent so long products neither
  // overflow nor underflow before the end.
  cplx acc = 1.0;
  long exponent = 0;
  for (int j = 0; j < k; ++j) {
    cplx f = x + static_cast<double>(j);
    if (f == 0.0) return 0.0;
    acc *= f;
    int e = 0;
    std::frexp(std::max(std::fabs(acc.real()), std::fabs(acc.imag())), &e);
    if (e > 512 || e < -512) {
      acc = {std::ldexp(acc.real(), -e), std::ldexp(acc.imag(), -e)};
      exponent += e;
    }
  }
  if (exponent == 0) return acc;
  int e = static_cast<int>(std::clamp(exponent, -4000L, 4000L));
  return {std::ldexp(acc.real(), e), std::ldexp(acc.imag(), e)};
}

cplx gamma_ratio(std::span<const cplx> numerators, std::span<const cplx> denominators,
                 PoleMode mode) {
  std::vector<long> num_poles;
  std::vector<long> den_poles;
  cplx log_sum = 0.0;
  for (cplx z : numerators) {
    if (is_nonpositive_integer(z))
      num_poles.push_back(static_cast<long>(-z.real()));
    else
      log_sum += log_gamma(z);
  }
  for (cplx z : denominators) {
    if (is_nonpositive_integer(z))
      den_poles.push_back(static_cast<long>(-z.real()));
    else
      log_sum -= log_gamma(z);
  }
  if (mode == PoleMode::reject) {
    if (!num_poles.empty()) throw PoleError("gamma_ratio: numerator pole");
    if (!den_poles.empty()) return 0.0;
    return std::exp(log_sum);
  }
  if (num_poles.size() > den_poles.size())
    throw PoleError("gamma_ratio: unpaired numerator pole");
  if (den_poles.size() > num_poles.size()) return 0.0;
  std::sort(num_poles.begin(), num_poles.end());
  std::sort(den_poles.begin(), den_poles.end());
  // Gamma(-m + e)/Gamma(-n + e) -> (-1)^{m-n} n!/m! as e -> 0.
  int sign = 1;
  for (std::size_t i = 0; i < num_poles.size(); ++i) {
    long m = num_poles[i];
    long n = den_poles[i];
    if ((m - n) % 2 != 0) sign = -sign;
    log_sum += std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(m) + 1.0);
  }
  return static_cast<double>(sign) * std::exp(log_sum);
}

}  // namespace hpm::specfun
