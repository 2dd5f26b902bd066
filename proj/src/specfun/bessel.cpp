#include <cmath>
#include <limits>
#include <algorithm>
#include <numbers>
#include <vector>

#include "hpm/double_double.hpp"
#include "hpm/errors.hpp"
#include "hpm/specfun.hpp"

namespace hpm::specfun {

namespace {

using std::numbers::pi;

constexpr double kSeriesLimit = 12.0;

// Ascending series, summed in double-double so the alternating terms
// (largest about e^x / sqrt(x)) cancel without losing digits.
double bessel_series(double nu, double x) {
  const dd q = dd(x) * dd(x) / dd(4.0);
  dd term = 1.0;
  dd sum = 1.0;
  for (int k = 0; k < 500; ++k) {
    dd den = dd(static_cast<double>(k + 1)) * (dd(nu) + dd(k + 1.0));
    term = -(term * q) / den;
    sum += term;
    if (k > x && abs(term) < 1e-34 * abs(sum)) break;
  }
  return static_cast<double>(sum) * std::pow(0.5 * x, nu) * reciprocal_gamma(nu + 1.0);
}

// cos(x - (nu/2 + 1/4) pi) and sin(...) without forming the large phase.
void hankel_phase(double nu, double x, double& c, double& s) {
  double turns = std::fmod(0.5 * nu + 0.25, 2.0);
  double phi = turns * pi;
  double cx = std::cos(x), sx = std::sin(x);
  double cp = std::cos(phi), sp = std::sin(phi);
  c = cx * cp + sx * sp;
  s = sx * cp - cx * sp;
}

// Hankel asymptotic expansion; returns false when the series cannot
// reach double precision at this x.
bool bessel_hankel(double nu, double x, double& out) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k * x);
    double mag = std::fabs(term);
    if (mag == 0.0) break;
    if (mag > prev) return false;
    prev = mag;
    // k = 1,5,9,.. -> +Q ; k = 2,6,.. -> -P ; k = 3,7,.. -> -Q ; k = 0,4,.. -> +P
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
    }
    if (mag < 1e-17 * (std::fabs(p) + std::fabs(q))) break;
    if (k == 199) return false;
  }
  double c, s;
  hankel_phase(nu, x, c, s);
  out = std::sqrt(2.0 / (pi * x)) * (p * c - q * s);
  return true;
}

// Miller backward recurrence from a high start index, normalised with
//   (x/2)^v = Gamma(v+1) J_v + sum_{k>=1} (v+2k) Gamma(v+k)/k! J_{v+2k},
// v in [0,1). Returns J_{v+n} for n in {target, 0, 1}.
struct MillerOut {
  double j_target;
  double j0;
  double j1;
};

MillerOut bessel_miller(double v, int target, double x) {
  const double top = std::max(static_cast<double>(target), x);
  const int start = static_cast<int>(top + std::sqrt(200.0 * top) + 20.0);

  // Normalisation coefficients c_k at even indices 2k.
  const int kmax = start / 2 + 1;
  std::vector<double> coef(kmax + 1);
  coef[0] = std::tgamma(v + 1.0);
  double g = coef[0];  // Gamma(v+k)/k! at k=1
  for (int k = 1; k <= kmax; ++k) {
    coef[k] = (v + 2.0 * k) * g;
    g *= (v + k) / (k + 1.0);
  }

  double f_next = 0.0, f = 1e-30;
  double norm = 0.0;
  MillerOut out{0.0, 0.0, 0.0};
  for (int n = start; n >= 0; --n) {
    if (n == target) out.j_target = f;
    if (n == 1) out.j1 = f;
    if (n == 0) out.j0 = f;
    if (n % 2 == 0) norm += coef[n / 2] * f;
    if (n == 0) break;
    double f_prev = (2.0 * (v + n) / x) * f - f_next;
    f_next = f;
    f = f_prev;
    if (std::fabs(f) > 1e200) {
      f *= 1e-200;
      f_next *= 1e-200;
      norm *= 1e-200;
      out.j_target *= 1e-200;
      out.j1 *= 1e-200;
    }
  }
  double scale = std::pow(0.5 * x, v) / norm;
  out.j_target *= scale;
  out.j0 *= scale;
  out.j1 *= scale;
  return out;
}

}  // namespace

double bessel_j(double nu, double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_j: negative argument");
  const bool integer_order = nu == std::nearbyint(nu);
  if (nu < 0.0 && integer_order) {
    double j = bessel_j(-nu, x);
    return (static_cast<long>(-nu) % 2 == 0) ? j : -j;
  }
  if (x == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), reciprocal_gamma(nu + 1.0));
  }
  if (x <= kSeriesLimit) return bessel_series(nu, x);

  double h;
  if (bessel_hankel(nu, x, h)) return h;

  const double base = std::floor(nu);
  const double v = nu - base;
  if (nu >= 0.0) return bessel_miller(v, static_cast<int>(base), x).j_target;

  // Negative non-integer order: downward recurrence from J_v, J_{v+1}.
  MillerOut m = bessel_miller(v, 1, x);
  double j_hi = m.j1, j = m.j0;
  for (double mu = v; mu > nu + 0.5; mu -= 1.0) {
    double j_lo = (2.0 * mu / x) * j - j_hi;
    j_hi = j;
    j = j_lo;
  }
  return j;
}

HankelSeries hankel_series(double nu, int max_terms) {
  HankelSeries hs;
  hs.p.assign(max_terms, 0.0);
  hs.q.assign(max_terms, 0.0);
  const double mu = 4.0 * nu * nu;
  double a = 1.0;
  for (int k = 0; k < max_terms; ++k) {
    if (k > 0) {
      double odd = 2.0 * k - 1.0;
      a *= (mu - odd * odd) / (8.0 * k);
    }
    switch (k % 4) {
      case 0: hs.p[k] = a; break;
      case 1: hs.q[k] = a; break;
      case 2: hs.p[k] = -a; break;
      case 3: hs.q[k] = -a; break;
    }
  }
  return hs;
}

}  // namespace hpm::specfun
