#pragma once

#include <complex>
#include <span>
#include <vector>

#include "hpm/params.hpp"

namespace hpm::specfun {

// Principal branch of log Gamma(z) (continuous off the negative real
// axis). Throws PoleError at z = 0, -1, -2, ...
cplx log_gamma(cplx z);
cplx gamma(cplx z);

// 1/Gamma(x) for real x; exactly 0 at the poles.
double reciprocal_gamma(double x);

// Rising factorial (x)_k = x (x+1) ... (x+k-1), k >= 0.
cplx pochhammer(cplx x, int k);

// True if z is (numerically exactly) a non-positive integer.
bool is_nonpositive_integer(cplx z);

enum class PoleMode {
  reject,  // numerator poles are errors
  cancel,  // pair numerator/denominator poles via the reflection limit
};

// prod Gamma(numerators) / prod Gamma(denominators).
// In reject mode a numerator pole is an error and a denominator pole makes
// the ratio 0. In cancel mode a numerator pole at -m paired with a denominator pole at -n
// contributes (-1)^{m-n} n!/m!; unpaired denominator poles make the ratio 0;
// an unpaired numerator pole is still an error.
cplx gamma_ratio(std::span<const cplx> numerators, std::span<const cplx> denominators,
                 PoleMode mode = PoleMode::reject);

struct SeriesResult {
  cplx value;
  // max |partial sum| / |final value|; 1 means no cancellation.
  double cancellation = 1.0;
  // True when the sum was recomputed in double-double because the
  // double-precision cancellation exceeded 1e8.
  bool extended_precision = false;
  int terms = 0;
};

// Terminating pFq(upper; lower; z). One upper parameter must be a
// non-positive integer -n; lower parameters must not hit a pole before
// term n. Throws DomainError otherwise.
SeriesResult hyp_pfq_terminating(std::span<const cplx> upper, std::span<const cplx> lower, cplx z);

// Continuous Hahn polynomial
//   p_n(x; a,b,c,d) = i^n (a+c)_n (a+d)_n / n! * 3F2(-n, n+a+b+c+d-1, a+ix; a+c, a+d; 1).
struct HahnParams {
  cplx a, b, c, d;
  int n = 0;
};

enum class HahnMethod {
  recurrence,  // three-term recurrence in the degree (stable, default)
  series,      // terminating 3F2 sum with double-double fallback
};

cplx continuous_hahn(const HahnParams& p, cplx x, HahnMethod method = HahnMethod::recurrence);

// The normalised 3F2(-n, n+a+b+c+d-1, y; a+c, a+d; 1) as a function of y = a+ix,
// together with its derivative in y. Evaluated by the degree recurrence.
struct HahnValue {
  cplx value;
  cplx dvalue;
};
HahnValue hahn_3f2(const HahnParams& p, cplx y);

// Bessel function of the first kind J_nu(x), real nu, x >= 0.
double bessel_j(double nu, double x);

// Coefficients of the Hankel expansion
//   J_nu(x) = sqrt(2/(pi x)) [P(x) cos w - Q(x) sin w],  w = x - nu pi/2 - pi/4,
// as power series in 1/x: P = sum p[j] x^{-j}, Q = sum q[j] x^{-j}.
// Returns the first max_terms coefficients (exactly zero from some index
// on when nu is a half-integer); truncation is the caller's business.
struct HankelSeries {
  std::vector<double> p;
  std::vector<double> q;
};
HankelSeries hankel_series(double nu, int max_terms);

}  // namespace hpm::specfun
