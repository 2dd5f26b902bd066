#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "hpm/double_double.hpp"
#include "hpm/params.hpp"

namespace hpm::pj {

// Monic orthogonal polynomials p_m for the weight (1+x^2)^{-Re s-N} e^{2 Im s atan x}:
//   p_m(x) = (x-i)^m 2F1(-m, s+N-m; 2Re s+2N-2m; 2/(1+ix)).
// They have real coefficients and are eigenfunctions of
//   L f = (1+x^2) f'' + (2 Im s + 2(1-Re s-N) x) f'.

enum class Existence {
  enforce,                // require m < Re s + N - 1/2 (finite norm)
  continue_analytically,  // only reject parameter poles; used for p_N when Re s <= 1/2
};

// Values and the first four derivatives at a real point, stored scaled:
//   scaled[r] = p^{(r)}(x) / |x-i|^{m-r}.
struct PolyEval {
  double x = 0.0;
  int m = 0;
  std::array<cplx, 5> scaled{};
  bool extended_precision = false;

  double log_abs_x_minus_i() const { return 0.5 * std::log1p(x * x); }
  // Unscaled derivative of order r (may overflow for huge |x|).
  cplx derivative(int r) const { return scaled[r] * std::exp((m - r) * log_abs_x_minus_i()); }
  cplx value() const { return derivative(0); }
};

// Evaluated with the monic three-term recurrence p_{j+1} = (x - b_j) p_j - a_j p_{j-1},
// carried in scaled form so large degrees neither overflow nor lose digits.
PolyEval p_eval(const EnsembleParams& params, int m, double x, Existence mode = Existence::enforce);

// Same quantities from the hypergeometric sum (double-double when the sum
// cancels). Independent of the recurrence, but cancellation grows like 3^m,
// so beyond m ~ 40 it is only good as a cross-check.
PolyEval p_eval_hypergeometric(const EnsembleParams& params, int m, double x,
                               Existence mode = Existence::enforce);

// x p_j = p_{j+1} + b p_j + a p_{j-1}
struct RecurrenceCoefficients {
  double a = 0.0;
  double b = 0.0;
};
RecurrenceCoefficients recurrence_coefficients(const EnsembleParams& params, int j);

// Eigenvalue of -L on p_m: m (2 Re s + 2N - m - 1).
double tau(const EnsembleParams& params, int m);

// Relative residual of (1+x^2) p'' + (alpha + 2 beta x) p' + tau_m p = 0, divided
// by the largest of the three terms. perturb scales the p'' term by (1+perturb).
double ode_residual(const EnsembleParams& params, int m, double x, double perturb = 0.0);

// phi(x) = (1+x^2)^{-N-Re s} exp(2 Im s atan x).
double weight(const EnsembleParams& params, double x);
double log_weight(const EnsembleParams& params, double x);

// gamma^2 = 1/||p_{N-1}||^2 in L^2(phi).
double norm_gamma_sq(const EnsembleParams& params);

// Normalisation constants of the matrix and eigenvalue measures, as logs.
//   F       matrix density det(1+X^2)^{-s-N} on Hermitian matrices (real s)
//   F_tilde the complex-s matrix density
//   G       circular density det(1+U)^{2s} against Haar measure (real s)
//   T       eigenvalue density on R^N / S(N)
//   Y       eigenvalue density on the circle
struct NormalizationConstants {
  double log_F = 0.0, log_F_tilde = 0.0, log_G = 0.0, log_T = 0.0, log_Y = 0.0;
  double F() const { return std::exp(log_F); }
  double F_tilde() const { return std::exp(log_F_tilde); }
  double G() const { return std::exp(log_G); }
  double T() const { return std::exp(log_T); }
  double Y() const { return std::exp(log_Y); }
};
// F and G need real s (they are undefined otherwise) and are NaN for complex s.
NormalizationConstants normalization_constants(const EnsembleParams& params);

// Monomial coefficients of p_m in double-double, lowest degree first.
std::vector<cdd> coefficients(const EnsembleParams& params, int m, Existence mode = Existence::enforce);

}  // namespace hpm::pj
