#pragma once

#include <array>

#include "hpm/params.hpp"
#include "hpm/quadrature.hpp"

namespace hpm::density {

// One-point density rho_N(x) = gamma^2 phi(x) [p_{N-1} p_N' - p_N p_{N-1}'](x)
// and its first three derivatives, all analytic.
struct DensityEval {
  double x = 0.0;
  double rho = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

DensityEval rho(const EnsembleParams& params, double x);

// Residual of d/dx[(1+x^2) rho] + 2 Re s gamma^2 phi p_N p_{N-1}, relative to the
// largest of its three terms 2x rho, (1+x^2) rho', 2 Re s gamma^2 phi p_N p_{N-1}.
// perturb scales gamma^2 in the second term only.
double diffrho_residual(const EnsembleParams& params, double x, double perturb = 0.0);

// Residual of the third-order equation relative to its largest term:
//   (1+x^2)^3 rho''' + 8x(1+x^2)^2 rho'' + c1(x) rho' + c0(x) rho = 0.
// With a = Re s, b = Im s:
//   c1 = 2(1+x^2)[3 + 2N(N+2a) - 2b^2 + 4b(N+a)x + (7-2a^2)x^2]
//   c0 = 4[(1+2N^2+4Na+a^2-2b^2)x + 3b(N+a)x^2 + (1-a^2)x^3 - b(N+a)]
// which is the real-s operator when b = 0. perturb scales the rho''' term.
double ode3_residual(const EnsembleParams& params, double x, double perturb = 0.0);

struct Ode3Terms {
  std::array<double, 4> terms{};  // coefficient * rho^{(r)}, r = 3, 2, 1, 0
};
Ode3Terms ode3_terms(const EnsembleParams& params, double x);

// N rho_N(N x).
double rho_scaled(const EnsembleParams& params, double x);

// Large-N limit of rho_scaled for real s > 1/2, x > 0:
//   rho_inf(x) = (1/(2 x^3)) [J'_{s+1/2} J_{s-1/2} - J_{s+1/2} J'_{s-1/2}](1/x)
//              = (1/(4 x^3)) [J_{s+1/2}^2 + J_{s-1/2}^2 - J_{s+3/2} J_{s-1/2} - J_{s-3/2} J_{s+1/2}](1/x).
// Behaves like 1/(pi x^2) as x -> 0.
double rho_limit(double s, double x);

// (1/2pi) Gamma[s+1, s+1, s+1/2, s+3/2 / 2s+1, 2s+2] 2^{4s}; equals 1/4.
// Note rho_inf above carries twice this constant: with 1/4 the density is half
// of lim N rho_N(N x) and its moments are half of limit_moment.
double limit_constant(double s);

// int_0^inf x^y rho_inf(x) dx
//   = s Gamma((y-1)/2) Gamma(s+(1-y)/2) / (4 sqrt(pi) Gamma(y/2+1) Gamma(s+(1+y)/2)),
// for 1 < y < 2s+1.
double limit_moment(double y, double s);

// int_0^inf u^{-lambda} J_mu(u) J_nu(u) du in closed form
// (valid for 0 < lambda < mu+nu+1).
double watson_closed_form(double lambda, double mu, double nu);

// The same integral numerically: adaptive quadrature on [0, X] plus the tail
// beyond X integrated term by term from the Hankel expansions.
quad::QuadratureResult watson_integral(double lambda, double mu, double nu, double tol = 1e-11);

// Substituting u = 1/x, the limit moment is (1/4) sum_i sign_i W_i with W_i the
// four integrals below at lambda = y - 1.
struct WatsonTerm {
  double mu = 0.0, nu = 0.0, sign = 1.0;
  double closed_form = 0.0;
  quad::QuadratureResult numeric;
};
std::array<WatsonTerm, 4> limit_moment_terms(double y, double s, double tol = 1e-11);

// Direct quadrature of int_0^inf x^y rho_inf(x) dx.
quad::QuadratureResult limit_moment_quadrature(double y, double s, double tol = 1e-11);

}  // namespace hpm::density
