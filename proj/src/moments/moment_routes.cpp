#include <cmath>
#include <string>

#include "hpm/density.hpp"
#include "hpm/double_double.hpp"
#include "hpm/errors.hpp"
#include "hpm/moments.hpp"
#include "hpm/pseudojacobi.hpp"
#include "hpm/specfun.hpp"

namespace hpm::moments {

namespace {

const double kSqrtPi = std::sqrt(M_PI);

void require_real_s(const EnsembleParams& params, const char* what) {
  if (!params.is_real()) throw DomainError(std::string(what) + " needs real s");
  if (!(params.re_s() > 0.0)) throw DomainError(std::string(what) + " needs s > 0");
}

std::string fmt_k(cplx k) { return "(" + std::to_string(k.real()) + "," + std::to_string(k.imag()) + ")"; }

// log Gamma(k+1/2) + log Gamma(s-k-1/2).
cplx log_gamma_pair(const EnsembleParams& params, cplx k) {
  const cplx a = k + 0.5, b = params.s() - k - 0.5;
  if (specfun::is_nonpositive_integer(a) || specfun::is_nonpositive_integer(b))
    throw PoleError("Gamma(k+1/2) Gamma(s-k-1/2) has a pole at k = " + fmt_k(k));
  return specfun::log_gamma(a) + specfun::log_gamma(b);
}

specfun::HahnParams hahn_params(const EnsembleParams& params) {
  const cplx b = params.s() + 0.5;
  return {1.0, b, 1.0, b, params.n() - 1};
}

// int_0^inf x^t p_N p_{N-1} phi dx for complex t; works for complex s.
quad::QuadratureResult pp_moment(const EnsembleParams& params, cplx t, double tol) {
  const int n = params.n();
  const double a = params.re_s(), b = params.im_s();
  auto f = [&](double x) -> cplx {
    if (x == 0.0) return 0.0;
    const auto hi = pj::p_eval(params, n, x, pj::Existence::continue_analytically);
    const auto lo = pj::p_eval(params, n - 1, x);
    // p_N p_{N-1} phi = S_N S_{N-1} R^{-2a-1} e^{2b atan x}
    const double w = std::exp(-(a + 0.5) * std::log1p(x * x) + 2.0 * b * std::atan(x));
    return std::exp(t * std::log(x)) * (hi.scaled[0].real() * lo.scaled[0].real() * w);
  };
  quad::QuadratureOptions opt;
  opt.rel_tol = tol;
  opt.abs_tol = 0.0;
  // p_N p_{N-1} is odd for real s.
  opt.origin_exponent = t.real() + (params.is_real() ? 1.0 : 0.0);
  return quad::integrate_half_line(f, 2.0 * a + 1.0 - t.real(), opt);
}

}  // namespace

bool in_strip(const EnsembleParams& params, cplx k) {
  return k.real() > -0.5 && k.real() < params.re_s() - 0.5;
}

void check_strip(const EnsembleParams& params, cplx k) {
  if (!in_strip(params, k))
    throw DomainError("k = " + fmt_k(k) + " outside the strip -1/2 < Re k < Re s - 1/2");
}

cplx j_hahn(const EnsembleParams& params, cplx k) {
  require_real_s(params, "closed form");
  const double s = params.re_s();
  const int n = params.n();
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N+1}
  const double pre = sign * s * (2.0 * s + n) * n / (2.0 * kSqrtPi * std::tgamma(s + 1.5));
  return pre * specfun::hahn_3f2(hahn_params(params), k + 2.0).value;
}

cplx j_hahn_unreduced(const EnsembleParams& params, cplx k) {
  require_real_s(params, "closed form");
  const double s = params.re_s();
  const int n = params.n();
  const cplx num[] = {0.5 - s - n};
  const cplx den[] = {s + 1.5, -s - 0.5};
  const cplx g = specfun::gamma_ratio(num, den);
  const cplx hahn = specfun::continuous_hahn(hahn_params(params), hahn_x(k));
  return times_i_power(g * s * (2.0 * s + n) / (2.0 * kSqrtPi) * hahn, 1 - n);
}

cplx q_hahn(const EnsembleParams& params, cplx k) {
  const cplx j = j_hahn(params, k);
  return std::exp(log_gamma_pair(params, k)) * j;
}

quad::QuadratureResult q_quadrature(const EnsembleParams& params, cplx k, double tol) {
  check_strip(params, k);
  auto f = [&](double x) -> cplx {
    if (x == 0.0) return 0.0;
    const double ax = std::abs(x);
    return std::exp(2.0 * k * std::log(ax)) * ((1.0 + x * x) * density::rho(params, x).rho);
  };
  quad::QuadratureOptions opt;
  opt.rel_tol = tol;
  opt.abs_tol = 0.0;
  opt.origin_exponent = 2.0 * k.real();
  return quad::integrate_line(f, 2.0 * params.re_s() - 2.0 * k.real(), opt);
}

cplx j_byparts_termwise(const EnsembleParams& params, cplx k) {
  require_real_s(params, "termwise route");
  const int n = params.n();
  const double s = params.re_s();
  const auto hi = pj::coefficients(params, n, pj::Existence::continue_analytically);
  const auto lo = pj::coefficients(params, n - 1);
  // Odd coefficients c_{2m-1} of p_N p_{N-1}, m = 1..N.
  std::vector<cdd> c(n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < n; ++j)
      if ((i + j) % 2 == 1) c[(i + j + 1) / 2] += hi[i] * lo[j];

  // J = s gamma^2 / Gamma(s+N) sum_m c_{2m-1} (k+3/2)_{m-1} (s-k-1/2)_{N-m}
  const cdd kk(k);
  std::vector<cdd> up(n + 1), down(n + 1);
  up[0] = 1.0;
  down[0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    up[i] = up[i - 1] * (kk + cdd(0.5 + i));
    down[i] = down[i - 1] * (cdd(s - 0.5 + (i - 1)) - kk);
  }
  cdd sum = 0.0;
  for (int m = 1; m <= n; ++m) sum += c[m] * up[m - 1] * down[n - m];
  const double pre = s * std::exp(params.log_gamma_sq() - std::lgamma(s + n));
  return pre * sum.to_complex();
}

cplx q_byparts(const EnsembleParams& params, cplx k, ByPartsMode mode, double tol) {
  require_real_s(params, "by-parts route");
  if (mode == ByPartsMode::termwise) return std::exp(log_gamma_pair(params, k)) * j_byparts_termwise(params, k);
  check_strip(params, k);
  const double s = params.re_s();
  const auto r = pp_moment(params, 2.0 * k + 1.0, tol);
  return 4.0 * s * params.gamma_sq() * r.value / (2.0 * k + 1.0);
}

std::pair<double, double> q_initial(const EnsembleParams& params) {
  require_real_s(params, "initial conditions");
  const double s = params.re_s(), n = params.n();
  const double d0 = (2.0 * s - 1.0) * (2.0 * s + 1.0);
  const double d1 = (2.0 * s + 3.0) * (2.0 * s - 3.0);
  if (d0 == 0.0) throw PoleError("Q(0) has a pole at s = 1/2");
  const double q0 = 2.0 * s * n * (2.0 * s + n) / d0;
  if (d1 == 0.0) throw PoleError("Q(1) has a pole at s = 3/2");
  return {q0, q0 * (2.0 * n * s + n * n + 2.0) / d1};
}

quad::QuadratureResult a_integral(const EnsembleParams& params, double t, double tol) {
  if (!(t > -1.0 && t < 2.0 * params.re_s()))
    throw DomainError("a(t) needs -1 < t < 2 Re s, got t = " + std::to_string(t));
  return pp_moment(params, t, tol);
}

cplx tilde_q(const EnsembleParams& params, int m) {
  if (m < 0 || !(m < 2.0 * params.re_s() - 1.0))
    throw DomainError("tilde Q(m) needs 0 <= m < 2 Re s - 1, got m = " + std::to_string(m));
  const cplx plus = a_integral(params, m + 1.0).value;
  const cplx minus = a_integral(params.conjugate(), m + 1.0).value;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return 2.0 * params.re_s() * params.gamma_sq() / (m + 1.0) * (plus + sign * minus);
}

std::string route_name(Route r) {
  switch (r) {
    case Route::hahn: return "hahn";
    case Route::quadrature: return "quadrature";
    case Route::byparts: return "byparts";
    case Route::termwise: return "termwise";
    case Route::recurrence: return "recurrence";
  }
  return "?";
}

cplx q_value(const EnsembleParams& params, cplx k, Route route) {
  switch (route) {
    case Route::hahn: return q_hahn(params, k);
    case Route::quadrature: return q_quadrature(params, k).value;
    case Route::byparts: return q_byparts(params, k, ByPartsMode::quadrature);
    case Route::termwise: return q_byparts(params, k, ByPartsMode::termwise);
    case Route::recurrence: {
      const double kr = k.real();
      if (k.imag() != 0.0 || kr < 0.0 || kr != std::nearbyint(kr))
        throw DomainError("recurrence route needs a non-negative integer k");
      return q_recurrence(params, 0.0, static_cast<int>(kr)).back();
    }
  }
  throw DomainError("unknown route");
}

cplx j_value(const EnsembleParams& params, cplx k, Route route) {
  if (route == Route::hahn) return j_hahn(params, k);
  if (route == Route::termwise) return j_byparts_termwise(params, k);
  return q_value(params, k, route) / std::exp(log_gamma_pair(params, k));
}

double large_n_limit(double k, double s) {
  if (!(s > 0.5)) throw DomainError("large-N limit needs s > 1/2");
  if (!(k >= 0.0 && k < s - 0.5)) throw DomainError("large-N limit needs 0 <= k < s - 1/2");
  const cplx num[] = {k + 0.5, s - k - 0.5};
  const cplx den[] = {k + 2.0, k + 1.5 + s};
  return s * specfun::gamma_ratio(num, den).real() / (2.0 * kSqrtPi);
}

cplx circular_t(const EnsembleParams& params, cplx k) { return q_hahn(params, k); }

cplx cayley(double x) { return (cplx(0.0, 1.0) - x) / (cplx(0.0, 1.0) + x); }

double inverse_cayley(cplx u) { return (cplx(0.0, 1.0) * (1.0 - u) / (1.0 + u)).real(); }

}  // namespace hpm::moments
