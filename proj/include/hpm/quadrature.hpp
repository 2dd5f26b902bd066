#pragma once

#include <functional>
#include <limits>
#include <span>

#include "hpm/params.hpp"

namespace hpm::quad {

struct QuadratureResult {
  cplx value;
  double error_estimate = 0.0;
  long nodes_used = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  long max_evals = 2'000'000;
  // Power-law exponent of the integrand at the origin (left end for
  // integrate_interval). A non-integer value grades the initial mesh
  // toward that end. NaN means smooth / unknown.
  double origin_exponent = std::numeric_limits<double>::quiet_NaN();
};

using Integrand = std::function<cplx(double)>;

// Integral over [0, inf) of f, |f(x)| ~ x^{-tail_exponent} at infinity,
// tail_exponent > 1. Substitutes x = tan(t) on [0,1] and x = cot(u) on
// [1, inf) and runs adaptive Gauss-Legendre (32 points, error from a
// separate 16-point rule) on panels in t and u. Converged means error_estimate <= max(abs_tol, rel_tol |value|);
// refinement also stops when every remaining panel sits at its round-off
// floor, in which case the estimate may exceed the request.
// Throws ConvergenceError when max_evals runs out first.
QuadratureResult integrate_half_line(const Integrand& f, double tail_exponent, const QuadratureOptions& opt);

// Integral over R, split at 0. Same conventions.
QuadratureResult integrate_line(const Integrand& f, double tail_exponent, const QuadratureOptions& opt);

// Shorthands with tolerance tol * max(1, |value|).
QuadratureResult integrate_half_line(const Integrand& f, double tail_exponent, double tol);
QuadratureResult integrate_line(const Integrand& f, double tail_exponent, double tol);

// Integral over the finite interval [a, b] with optional interior breakpoints.
QuadratureResult integrate_interval(const Integrand& f, double a, double b, const QuadratureOptions& opt,
                                    std::span<const double> breakpoints = {});

// Gauss-Legendre nodes and weights on [-1, 1] (n = 16 or 32 are cached).
struct GaussRule {
  std::span<const double> nodes;
  std::span<const double> weights;
};
GaussRule gauss_legendre(int n);

}  // namespace hpm::quad
