#include "hpm/density.hpp"

#include <algorithm>
#include <cmath>

#include "hpm/pseudojacobi.hpp"

namespace hpm::density {

namespace {

// Scaled pieces shared by rho, diffrho and ode3. With R = |x-i| and
// S^m_r = p_m^{(r)} / R^{m-r}, the Wronskian W = p_{N-1} p_N' - p_N p_{N-1}'
// and its derivatives satisfy W^{(r)} = R^{2N-2-r} w[r].
struct Pieces {
  double r = 1.0;
  double log_phi = 0.0;  // log(gamma^2 phi R^{2N-2})
  double g = 0.0, g1 = 0.0, g2 = 0.0;  // phi'/phi and its derivatives
  std::array<double, 4> w{};
  double prod = 0.0;  // S^N_0 S^{N-1}_0
};

Pieces pieces(const EnsembleParams& params, double x) {
  const int n = params.n();
  const double a = params.re_s(), b = params.im_s();
  const auto lo = pj::p_eval(params, n - 1, x);
  const auto hi = pj::p_eval(params, n, x, pj::Existence::continue_analytically);
  std::array<double, 5> u{}, v{};
  for (int i = 0; i < 5; ++i) {
    u[i] = lo.scaled[i].real();
    v[i] = hi.scaled[i].real();
  }

  Pieces pc;
  const double bb = 1.0 + x * x;
  pc.r = std::sqrt(bb);
  pc.log_phi = params.log_gamma_sq() - (a + 1.0) * std::log1p(x * x) + 2.0 * b * std::atan(x);
  const double c = -2.0 * (a + n);
  pc.g = (c * x + 2.0 * b) / bb;
  pc.g1 = (c - 2.0 * x * pc.g) / bb;
  pc.g2 = (-2.0 * pc.g - 4.0 * x * pc.g1) / bb;
  pc.w[0] = u[0] * v[1] - v[0] * u[1];
  pc.w[1] = u[0] * v[2] - v[0] * u[2];
  pc.w[2] = u[1] * v[2] + u[0] * v[3] - v[1] * u[2] - v[0] * u[3];
  pc.w[3] = 2.0 * (u[1] * v[3] - v[1] * u[3]) + u[0] * v[4] - v[0] * u[4];
  pc.prod = u[0] * v[0];
  return pc;
}

}  // namespace

DensityEval rho(const EnsembleParams& params, double x) {
  const Pieces pc = pieces(params, x);
  const double f = std::exp(pc.log_phi);
  const double ir = 1.0 / pc.r;
  const double g = pc.g, g1 = pc.g1, g2 = pc.g2;
  const auto& w = pc.w;
  DensityEval e;
  e.x = x;
  e.rho = f * w[0];
  e.d1 = f * (g * w[0] + w[1] * ir);
  e.d2 = f * ((g1 + g * g) * w[0] + 2.0 * g * w[1] * ir + w[2] * ir * ir);
  e.d3 = f * ((g2 + 3.0 * g * g1 + g * g * g) * w[0] + 3.0 * (g1 + g * g) * w[1] * ir +
              3.0 * g * w[2] * ir * ir + w[3] * ir * ir * ir);
  return e;
}

double diffrho_residual(const EnsembleParams& params, double x, double perturb) {
  const Pieces pc = pieces(params, x);
  const DensityEval e = rho(params, x);
  const double f = std::exp(pc.log_phi);
  const double t1 = 2.0 * x * e.rho;
  const double t2 = (1.0 + x * x) * e.d1;
  const double t3 = 2.0 * params.re_s() * (1.0 + perturb) * f * pc.r * pc.prod;
  const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
  return scale == 0.0 ? 0.0 : std::abs(t1 + t2 + t3) / scale;
}

Ode3Terms ode3_terms(const EnsembleParams& params, double x) {
  const DensityEval e = rho(params, x);
  const double n = params.n(), a = params.re_s(), b = params.im_s();
  const double bb = 1.0 + x * x;
  const double c3 = bb * bb * bb;
  const double c2 = 8.0 * x * bb * bb;
  const double c1 =
      2.0 * bb * (3.0 + 2.0 * n * (n + 2.0 * a) - 2.0 * b * b + 4.0 * b * (n + a) * x + (7.0 - 2.0 * a * a) * x * x);
  const double c0 = 4.0 * ((1.0 + 2.0 * n * n + 4.0 * n * a + a * a - 2.0 * b * b) * x + 3.0 * b * (n + a) * x * x +
                           (1.0 - a * a) * x * x * x - b * (n + a));
  return {{c3 * e.d3, c2 * e.d2, c1 * e.d1, c0 * e.rho}};
}

double ode3_residual(const EnsembleParams& params, double x, double perturb) {
  auto t = ode3_terms(params, x).terms;
  t[0] *= 1.0 + perturb;
  double sum = 0.0, scale = 0.0;
  for (double v : t) {
    sum += v;
    scale = std::max(scale, std::abs(v));
  }
  return scale == 0.0 ? 0.0 : std::abs(sum) / scale;
}

double rho_scaled(const EnsembleParams& params, double x) {
  const double n = params.n();
  return n * rho(params, n * x).rho;
}

}  // namespace hpm::density
