#include "hpm/pseudojacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hpm/errors.hpp"
#include "hpm/specfun.hpp"

namespace hpm::pj {

namespace {

// A double-precision sum that lost more than four digits is redone in
// double-double.
constexpr double kCancellationLimit = 1e4;

void check(const EnsembleParams& params, int m, Existence mode) {
  if (m < 0) throw DomainError("pseudojacobi: negative degree");
  const double c = 2.0 * params.re_s() + 2.0 * params.n() - 2.0 * m;
  if (mode == Existence::enforce && !(m < params.re_s() + params.n() - 0.5))
    throw DomainError("pseudojacobi: p_" + std::to_string(m) + " needs m < Re s + N - 1/2");
  // c + j = 0 for some j < m makes the series undefined.
  if (c <= 0.0 && c == std::nearbyint(c) && -c < m)
    throw PoleError("pseudojacobi: lower parameter hits a pole");
}

double falling(int n, int r) {
  double f = 1.0;
  for (int i = 0; i < r; ++i) f *= static_cast<double>(n - i);
  return f;
}

}  // namespace

double tau(const EnsembleParams& params, int m) {
  return m * (2.0 * params.re_s() + 2.0 * params.n() - m - 1.0);
}

RecurrenceCoefficients recurrence_coefficients(const EnsembleParams& params, int m) {
  // Writing p_m = x^m + k_m x^{m-1} + l_m x^{m-2} + ... and matching the two
  // leading orders of (1+x^2) p'' + (alpha + 2 beta x) p' + tau_m p = 0:
  //   k_m = alpha m / (2(m-1) + 2 beta),
  //   l_m = (m(m-1) + alpha k_m (m-1)) / (4m - 6 + 4 beta).
  const double alpha = params.alpha(), beta = params.beta();
  auto k = [&](int j) { return j == 0 ? 0.0 : alpha * j / (2.0 * (j - 1) + 2.0 * beta); };
  auto l = [&](int j) {
    return j < 2 ? 0.0 : (j * (j - 1.0) + alpha * k(j) * (j - 1.0)) / (4.0 * j - 6.0 + 4.0 * beta);
  };
  RecurrenceCoefficients rc;
  rc.b = k(m) - k(m + 1);
  rc.a = m == 0 ? 0.0 : l(m) - l(m + 1) - rc.b * k(m);
  return rc;
}

PolyEval p_eval(const EnsembleParams& params, int m, double x, Existence mode) {
  check(params, m, mode);
  // Scaled recurrence: d[r] holds p_j^{(r)} / R^{j-r}, R = |x - i|.
  const double r = std::sqrt(1.0 + x * x);
  std::array<double, 5> prev{}, cur{1.0, 0.0, 0.0, 0.0, 0.0};
  for (int j = 0; j < m; ++j) {
    RecurrenceCoefficients rc = recurrence_coefficients(params, j);
    const double g = (x - rc.b) / r;
    const double h = rc.a / (r * r);
    std::array<double, 5> next{};
    for (int d = 0; d < 5; ++d) next[d] = (d > 0 ? d * cur[d - 1] : 0.0) + g * cur[d] - h * prev[d];
    prev = cur;
    cur = next;
  }
  PolyEval out;
  out.x = x;
  out.m = m;
  for (int d = 0; d < 5; ++d) out.scaled[d] = cur[d];
  return out;
}

PolyEval p_eval_hypergeometric(const EnsembleParams& params, int m, double x, Existence mode) {
  check(params, m, mode);
  const cplx b = params.s() + static_cast<double>(params.n() - m);
  const double c = 2.0 * params.re_s() + 2.0 * params.n() - 2.0 * m;
  const cplx z = 2.0 / cplx(1.0, x);

  PolyEval out;
  out.x = x;
  out.m = m;

  // sum_j t_j (m-j)_r z^j for r = 0..4, with magnitude tracking.
  std::array<cplx, 5> sum{};
  std::array<double, 5> largest{};
  cplx t = 1.0;
  cplx zj = 1.0;
  for (int j = 0; j <= m; ++j) {
    cplx term = t * zj;
    for (int r = 0; r < 5; ++r) {
      cplx tr = term * falling(m - j, r);
      sum[r] += tr;
      largest[r] = std::max(largest[r], std::abs(tr));
    }
    t *= (static_cast<double>(j - m) * (b + static_cast<double>(j))) / ((c + j) * (j + 1.0));
    zj *= z;
  }
  bool redo = false;
  for (int r = 0; r < 5 && r <= m; ++r)
    if (largest[r] > kCancellationLimit * std::abs(sum[r])) redo = true;

  if (redo) {
    const dd den = dd(1.0) + dd(x) * dd(x);
    const cdd zz(dd(2.0) / den, dd(-2.0) * dd(x) / den);
    const cdd bb(b);
    std::array<cdd, 5> acc{};
    cdd tt = 1.0, zp = 1.0;
    for (int j = 0; j <= m; ++j) {
      cdd term = tt * zp;
      for (int r = 0; r < 5; ++r) acc[r] += term * dd(falling(m - j, r));
      cdd num = cdd(static_cast<double>(j - m)) * (bb + cdd(static_cast<double>(j)));
      dd dnm = (dd(c) + dd(static_cast<double>(j))) * dd(j + 1.0);
      tt = num * tt / dnm;
      zp *= zz;
    }
    for (int r = 0; r < 5; ++r) sum[r] = acc[r].to_complex();
    out.extended_precision = true;
  }

  // u^{m-r} with u = (x-i)/|x-i| = e^{i phi}.
  const double phi = std::atan2(-1.0, x);
  for (int r = 0; r < 5; ++r) {
    if (r > m) {
      out.scaled[r] = 0.0;
      continue;
    }
    double ang = (m - r) * phi;
    out.scaled[r] = cplx(std::cos(ang), std::sin(ang)) * sum[r];
  }
  return out;
}

double ode_residual(const EnsembleParams& params, int m, double x, double perturb) {
  const PolyEval p = p_eval(params, m, x);
  // Everything divided by |x-i|^m.
  const double r = std::sqrt(1.0 + x * x);
  const cplx t2 = p.scaled[2] * (1.0 + perturb);
  const cplx t1 = (params.alpha() + 2.0 * params.beta() * x) * p.scaled[1] / r;
  const cplx t0 = tau(params, m) * p.scaled[0];
  const double scale = std::max({std::abs(t2), std::abs(t1), std::abs(t0)});
  if (scale == 0.0) return 0.0;
  return std::abs(t2 + t1 + t0) / scale;
}

double log_weight(const EnsembleParams& params, double x) {
  return -(params.n() + params.re_s()) * std::log1p(x * x) + 2.0 * params.im_s() * std::atan(x);
}

double weight(const EnsembleParams& params, double x) { return std::exp(log_weight(params, x)); }

double norm_gamma_sq(const EnsembleParams& params) { return params.gamma_sq(); }

NormalizationConstants normalization_constants(const EnsembleParams& params) {
  const cplx s = params.s();
  const double a = params.re_s();
  const int n = params.n();
  const double ln2 = std::log(2.0), lnpi = std::log(M_PI);
  auto lg = [](double z) { return std::lgamma(z); };
  // log |Gamma(s+j)|^2 for real or complex s
  auto lg_abs2 = [&](double j) { return 2.0 * specfun::log_gamma(s + j).real(); };

  NormalizationConstants c;
  double lf = 0.0, lg_ = 0.0, lt = 0.0, ly = 0.0;
  for (int j = 1; j <= n; ++j) {
    lf += j * lnpi + lg(2.0 * a + j) - (2.0 * a + 2.0 * j - 2.0) * ln2 - lg_abs2(j);
    lg_ += lg(2.0 * a + j) + lg(j + 1.0) - lg_abs2(j);
    ly += lg(2.0 * a + j) + lg(j + 1.0) - lg_abs2(j);
  }
  for (int j = 0; j < n; ++j) lt += lg(j + 1.0) + lg(2.0 * a + n - j) - lg_abs2(n - j);
  lt += n * lnpi - n * (n + 2.0 * a - 1.0) * ln2;
  ly += lg(n + 1.0) + n * std::log(2.0 * M_PI);
  lg_ -= lg(n + 1.0);

  c.log_F_tilde = lf;
  c.log_T = lt;
  c.log_Y = ly;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  c.log_F = params.is_real() ? lf : nan;
  c.log_G = params.is_real() ? lg_ : nan;
  return c;
}

std::vector<cdd> coefficients(const EnsembleParams& params, int m, Existence mode) {
  check(params, m, mode);
  const cdd b(params.s() + static_cast<double>(params.n() - m));
  const double c = 2.0 * params.re_s() + 2.0 * params.n() - 2.0 * m;
  // p_m = sum_j t_j (-2i)^j (x-i)^{m-j}
  std::vector<cdd> coef(m + 1);
  cdd t = 1.0;
  cdd minus_2i_pow = 1.0;
  const cdd minus_2i(dd(0.0), dd(-2.0));
  const cdd minus_i(dd(0.0), dd(-1.0));
  for (int j = 0; j <= m; ++j) {
    const int r = m - j;
    // (x-i)^r = sum_q C(r,q) x^q (-i)^{r-q}
    std::vector<cdd> mi(r + 1);
    mi[0] = 1.0;
    for (int k = 1; k <= r; ++k) mi[k] = mi[k - 1] * minus_i;
    dd binom = 1.0;
    const cdd lead = t * minus_2i_pow;
    for (int q = 0; q <= r; ++q) {
      coef[q] += lead * mi[r - q] * binom;
      binom = binom * dd(static_cast<double>(r - q)) / dd(q + 1.0);
    }
    t = cdd(static_cast<double>(j - m)) * (b + cdd(static_cast<double>(j))) * t /
        ((dd(c) + dd(static_cast<double>(j))) * dd(j + 1.0));
    minus_2i_pow *= minus_2i;
  }
  return coef;
}

}  // namespace hpm::pj
