#include <algorithm>
#include <cmath>
#include <string>

#include "hpm/errors.hpp"
#include "hpm/moments.hpp"
#include "hpm/pseudojacobi.hpp"

namespace hpm::moments {

namespace {

using Poly = std::vector<double>;

Poly add(const Poly& a, const Poly& b, double cb = 1.0) {
  Poly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += cb * b[i];
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly deriv(const Poly& a) {
  if (a.size() <= 1) return {0.0};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = double(i) * a[i];
  return r;
}

double horner(const Poly& a, double x) {
  double r = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) r = r * x + a[i];
  return r;
}

}  // namespace

LedouxData ledoux_data(const EnsembleParams& params, double perturb_u) {
  const int n = params.n();
  const double alpha = params.alpha(), beta = params.beta();
  LedouxData d;
  d.tau_n = pj::tau(params, n);
  d.tau_nm1 = pj::tau(params, n - 1);
  d.d_n = 2.0 * beta - 2.0 + d.tau_n;
  d.d_nm1 = 2.0 * beta - 2.0 + d.tau_nm1;
  d.dcoef_n = 2.0 * d.tau_n;
  d.dcoef_nm1 = 2.0 * d.tau_nm1;
  const double dt = d.tau_n - d.tau_nm1;
  d.u = 0.5 * dt * (d.d_n - d.d_nm1 + dt) * (1.0 + perturb_u);
  d.v = 0.5 * (d.d_n + d.d_nm1 - d.tau_n - d.tau_nm1);
  d.a = {-alpha, -2.0 * beta};
  d.b = {1.0, 0.0, 1.0};

  const Poly& a = d.a;
  const Poly& b = d.b;
  const Poly b1 = deriv(b), b2 = deriv(b1), a1 = deriv(a);
  const double tsum = d.tau_n + d.tau_nm1;
  d.m[4] = add({}, mul(b, b), -1.0);
  d.m[3] = add({}, mul(b, b1), -3.0);
  Poly m2 = add(mul(a, a), mul(a1, b), -1.0);
  m2 = add(m2, mul(a, b1), 2.0);
  m2 = add(m2, b, d.v - 2.0 * tsum);
  m2 = add(m2, mul(b, b2), -2.0);
  d.m[2] = m2;
  d.m[1] = add(add({}, a, -d.v), Poly{0.0, -(d.dcoef_n + d.dcoef_nm1)});
  d.m[0] = {-d.u};
  return d;
}

LedouxTerms ledoux_identity(const EnsembleParams& params, double t, double perturb_u, double tol) {
  const double a = params.re_s(), b = params.im_s();
  if (!(a > 2.5)) throw DomainError("integration-by-parts identity needs Re s > 5/2");
  if (!(t > 3.0 && t < 2.0 * a - 2.0))
    throw DomainError("integration-by-parts identity needs 3 < t < 2 Re s - 2, got t = " + std::to_string(t));
  const LedouxData d = ledoux_data(params, perturb_u);
  const int n = params.n();
  LedouxTerms out;
  for (int i = 0; i < 5; ++i) {
    // theta^{(i)} = t (t-1) ... (t-i+1) x^{t-i}
    double fall = 1.0;
    for (int j = 0; j < i; ++j) fall *= t - j;
    const Poly& mi = d.m[i];
    auto low = std::find_if(mi.begin(), mi.end(), [](double c) { return c != 0.0; });
    if (low == mi.end() || fall == 0.0) continue;
    const double lowest = double(low - mi.begin());
    auto f = [&](double x) -> cplx {
      if (x == 0.0) return 0.0;
      const auto hi = pj::p_eval(params, n, x, pj::Existence::continue_analytically);
      const auto lo = pj::p_eval(params, n - 1, x);
      const double w = std::exp(-(a + 0.5) * std::log1p(x * x) + 2.0 * b * std::atan(x));
      return fall * horner(mi, x) * std::pow(x, t - i) * hi.scaled[0].real() * lo.scaled[0].real() * w;
    };
    quad::QuadratureOptions opt;
    opt.rel_tol = tol;
    opt.abs_tol = 0.0;
    opt.origin_exponent = t - i + lowest + (params.is_real() ? 1.0 : 0.0);
    const double top = t - i + double(mi.size() - 1);
    out.g[i] = quad::integrate_half_line(f, 2.0 * a + 1.0 - top, opt).value;
  }
  cplx sum = 0.0;
  double scale = 0.0;
  for (const cplx& g : out.g) {
    sum += g;
    scale = std::max(scale, std::abs(g));
  }
  out.residual = scale == 0.0 ? 0.0 : std::abs(sum) / scale;
  return out;
}

double ledoux_identity_residual(const EnsembleParams& params, double t, double perturb_u) {
  return ledoux_identity(params, t, perturb_u).residual;
}

}  // namespace hpm::moments
