#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hpm/params.hpp"
#include "hpm/quadrature.hpp"

namespace hpm::moments {

// Q(k; s, N) = E Tr(|H|^{2k+2} + |H|^{2k}) = int |x|^{2k} (1+x^2) rho_N(x) dx,
// finite on the strip -1/2 < Re k < Re s - 1/2.
//
// Q = Gamma(k+1/2) Gamma(s-k-1/2) J(k), where J is a polynomial of degree
// N-1 in k. Writing k = i x - 1,
//   J(k) = (-1)^{N+1} s (2s+N) N / (2 sqrt(pi) Gamma(s+3/2))
//          * 3F2(1-N, N+2s+1, k+2; 2, s+3/2; 1),
// i.e. a multiple of the continuous Hahn polynomial S_{N-1}(x; 1, s+1/2, 1, s+1/2).

// Throws DomainError when k is outside the strip.
void check_strip(const EnsembleParams& params, cplx k);
bool in_strip(const EnsembleParams& params, cplx k);

// The Hahn variable x = -i (k+1).
inline cplx hahn_x(cplx k) { return cplx(0.0, -1.0) * (k + 1.0); }

// Closed form (real s > 0). k anywhere in C except the poles of
// Gamma(k+1/2) Gamma(s-k-1/2), which raise PoleError.
cplx q_hahn(const EnsembleParams& params, cplx k);

// J(k) from the closed form; entire in k.
cplx j_hahn(const EnsembleParams& params, cplx k);

// The same polynomial through the unreduced prefactor
//   i^{1-N} Gamma(1/2-s-N) s (2s+N) / (Gamma(s+3/2) Gamma(-s-1/2) 2 sqrt(pi)) S_{N-1}(x),
// which has removable singularities at half-integer s. Used to validate j_hahn.
cplx j_hahn_unreduced(const EnsembleParams& params, cplx k);

// Direct quadrature of the density moment; needs k in the strip.
quad::QuadratureResult q_quadrature(const EnsembleParams& params, cplx k, double tol = 1e-11);

enum class ByPartsMode {
  quadrature,  // 4 s gamma^2 int_0^inf x^{2k+1}/(2k+1) p_N p_{N-1} phi dx
  termwise,    // expand p_N p_{N-1} in odd monomials and use Beta integrals
};
// Real s only. The termwise mode is a finite sum and continues analytically
// outside the strip.
cplx q_byparts(const EnsembleParams& params, cplx k, ByPartsMode mode = ByPartsMode::quadrature, double tol = 1e-11);
cplx j_byparts_termwise(const EnsembleParams& params, cplx k);

// Q(0) = 2 s N (2s+N) / ((2s-1)(2s+1)),
// Q(1) = Q(0) (2Ns + N^2 + 2) / ((2s+3)(2s-3)).
std::pair<double, double> q_initial(const EnsembleParams& params);

// Coefficients of R(k) Q(k+1) + T(k) Q(k) + S(k) Q(k-1) = 0:
//   R = (2k+4)(4s^2-(2k+3)^2), T = -2(2k+1)(2N(N+2s)+(2k+2)^2), S = -(2k+1) 2k (2k-1).
struct ThreeTerm {
  cplx r, t, s;
};
ThreeTerm q_recurrence_coefficients(const EnsembleParams& params, cplx k);

// Q(k0), Q(k0+1), ..., Q(k0+n_steps) by forward recurrence, seeded from
// q_initial when k0 = 0 and from q_hahn otherwise. A vanishing R(k) raises
// PivotError.
std::vector<cplx> q_recurrence(const EnsembleParams& params, cplx k0, int n_steps);

// Relative residual of the three-term recurrence with Q from q_hahn.
double q_recurrence_residual(const EnsembleParams& params, cplx k);

enum class Route { hahn, quadrature, byparts, termwise, recurrence };
std::string route_name(Route r);

// J(k) = Q(k) / (Gamma(k+1/2) Gamma(s-k-1/2)) through the chosen route.
// The recurrence route needs k to be a non-negative integer.
cplx j_value(const EnsembleParams& params, cplx k, Route route = Route::hahn);
cplx q_value(const EnsembleParams& params, cplx k, Route route = Route::hahn);

// Relative residual of
//   (2k+4)(2s+2k+3) J(k+1) + 2k(2k+1-2s) J(k-1) - 2(2N(N+2s)+(2k+2)^2) J(k),
// perturb scales N(N+2s).
double j_difference_residual(const EnsembleParams& params, cplx k, double perturb = 0.0);

// a(t) = int_0^inf x^t p_N p_{N-1} phi dx for -1 < t < 2 Re s.
quad::QuadratureResult a_integral(const EnsembleParams& params, double t, double tol = 1e-12);

// C1 a(t) + C2 a(t-1) + C3 a(t-2) + C4 a(t-3) + C5 a(t-4) = 0 with
//   C1 = 4a^2(t+1)(t-1) - 6t(t-1)^2 - t(t-1)(t-2)(t-3)
//   C2 = 4b(-a-N) t (2t-1)
//   C3 = t(t-1)[-2(t-1)^2 + 4b^2 + 4N(-N-2a)]
//   C4 = 0,  C5 = -t(t-1)(t-2)(t-3)
// (a = Re s, b = Im s).
std::array<double, 5> general_recurrence_coefficients(const EnsembleParams& params, double t);
// Needs 4 < t < 2 Re s.
double general_recurrence_residual(const EnsembleParams& params, double t);

// Q~(m) = E Tr(H^{m+2} + H^m)
//       = 2 Re s gamma^2 / (m+1) [a(m+1; s) + (-1)^m a(m+1; conj s)], 0 <= m < 2 Re s - 1.
// For real s, Q~(2k) = Q(k).
cplx tilde_q(const EnsembleParams& params, int m);

// D1 Q~(m) + D2 Q~(m-1) + D3 Q~(m-2) + D4 Q~(m-4) = 0 with
//   D1 = (m+2)(4a^2 - (m+1)^2), D2 = 4b(-a-N)(2m+1),
//   D3 = (m-1)[-2m^2 + 4b^2 + 4N(-N-2a)], D4 = -(m-1)(m-2)(m-3).
std::array<double, 4> tilde_recurrence_coefficients(const EnsembleParams& params, int m);
double tilde_recurrence_residual(const EnsembleParams& params, int m);

// Quantities of the integration-by-parts identity for L f = (1+x^2) f'' + (alpha + 2 beta x) f'
// applied to p_N, p_{N-1} and theta(x) = x^t. Polynomials are coefficient
// vectors in x, lowest degree first.
struct LedouxData {
  double tau_n = 0.0, tau_nm1 = 0.0;  // eigenvalues of -L
  double d_n = 0.0, d_nm1 = 0.0;      // 2 beta - 2 + tau
  double dcoef_n = 0.0, dcoef_nm1 = 0.0;  // D(x) = dcoef x with dcoef = 2 tau
  double u = 0.0, v = 0.0;
  std::vector<double> a, b;  // A = -(alpha + 2 beta x), B = 1 + x^2
  std::array<std::vector<double>, 5> m;  // M_0 .. M_4
};
LedouxData ledoux_data(const EnsembleParams& params, double perturb_u = 0.0);

// Relative residual of sum_i G(M_i theta^{(i)}) with G(f) = int_0^inf f p_N p_{N-1} phi,
// each term integrated numerically. Needs Re s > 5/2 and 3 < t < 2 Re s - 2.
struct LedouxTerms {
  std::array<cplx, 5> g{};
  double residual = 0.0;
};
LedouxTerms ledoux_identity(const EnsembleParams& params, double t, double perturb_u = 0.0, double tol = 1e-12);
double ledoux_identity_residual(const EnsembleParams& params, double t, double perturb_u = 0.0);

// J as a polynomial in k, interpolated from j_hahn at Chebyshev points of
// [-1/4, s-3/4] and converted to monomials.
struct JPolynomial {
  int degree = 0;
  std::vector<cplx> coefficients;  // lowest degree first
  std::string provenance;
  bool ill_conditioned = false;  // N > 60
  cplx operator()(cplx k) const;
};
JPolynomial j_polynomial(const EnsembleParams& params);

// The N-1 zeros of J in k, seeded from the companion matrix of j_polynomial
// and polished with simultaneous (Aberth) iteration on the closed form.
// Beyond N = 60 the roots are instead bracketed on the line Re k = -1, where
// the Hahn polynomial is real, and refined by bisection. Sorted by imaginary part.
std::vector<cplx> j_zeros(const EnsembleParams& params);

// Difference-equation uniqueness: the equation above, applied to the space of
// polynomials of degree <= N-1 and sampled at N+2 points, has a one-dimensional
// null space. The null vector is compared with J.
struct UniquenessReport {
  std::vector<double> singular_values;  // descending
  int null_dimension = 0;
  bool unique = false;
  double match_residual = 0.0;  // distance of the null vector from J, relative
};
UniquenessReport uniqueness_check(const EnsembleParams& params);
// Least-squares residual of the equation over monic polynomials of the given
// degree, relative to the size of the monomial's three terms. Near 0 only for degree N-1.
double degree_trial_residual(const EnsembleParams& params, int degree);

// lim Q(k;s,N)/N^{2k+2} = s Gamma(k+1/2) Gamma(s-k-1/2) / (2 sqrt(pi) Gamma(k+2) Gamma(k+3/2+s))
// for s > 1/2, 0 <= k < s - 1/2.
double large_n_limit(double k, double s);

// Circular-ensemble moment E sum |tan(theta_j/2)|^{2k} sec^2(theta_j/2), equal to Q.
cplx circular_t(const EnsembleParams& params, cplx k);
// x -> (i-x)/(i+x) and back.
cplx cayley(double x);
double inverse_cayley(cplx u);

}  // namespace hpm::moments
