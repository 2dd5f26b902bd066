#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "hpm/density.hpp"
#include "hpm/errors.hpp"
#include "hpm/specfun.hpp"

namespace hpm::density {

namespace {

// Split point between numerical quadrature and the asymptotic tail.
constexpr double kTailStart = 60.0;
constexpr int kHankelTerms = 40;

void require_limit_domain(double s) {
  if (!(s > 0.5)) throw DomainError("limit density needs s > 1/2, got s = " + std::to_string(s));
}

// u^{-lambda} J_mu(u) J_nu(u) for u > 0.
double watson_integrand(double lambda, double mu, double nu, double u) {
  return std::pow(u, -lambda) * specfun::bessel_j(mu, u) * specfun::bessel_j(nu, u);
}

// Number of terms to keep from an asymptotic series in 1/x whose coefficient
// envelope is env: everything up to its smallest nonzero term.
std::size_t terms_to_keep(const std::vector<double>& env, double x) {
  double best = INFINITY;
  std::size_t keep = 0;
  double xp = 1.0;
  for (std::size_t j = 0; j < env.size(); ++j) {
    const double t = env[j] * xp;
    if (t != 0.0 && t <= best) {
      best = t;
      keep = j + 1;
    }
    xp /= x;
  }
  return keep;
}

// cos and sin of q pi / 2, exact when q is an integer.
std::pair<double, double> quarter_turn(double q) {
  if (q == std::nearbyint(q)) {
    static constexpr double c[] = {1.0, 0.0, -1.0, 0.0};
    const int r = ((static_cast<long>(q) % 4) + 4) % 4;
    return {c[r], c[(r + 3) % 4]};
  }
  return {std::cos(q * M_PI / 2.0), std::sin(q * M_PI / 2.0)};
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// int_X^inf x^{-alpha} e^{2ix} dx = -e^{2iX} sum_n (alpha)_n X^{-alpha-n} / (2i)^{n+1}.
cplx oscillatory_tail(double alpha, double x0) {
  const cplx two_i(0.0, 2.0);
  cplx term = std::pow(x0, -alpha) / two_i;
  cplx sum = 0.0;
  double prev = INFINITY;
  for (int n = 0; n < 400; ++n) {
    if (std::abs(term) > prev) break;
    sum += term;
    prev = std::abs(term);
    if (prev < 1e-20 * std::abs(sum)) break;
    term *= (alpha + n) / (x0 * two_i);
  }
  return -std::exp(two_i * x0) * sum;
}

// int_X^inf u^{-lambda} J_mu J_nu du from the Hankel expansions:
//   J_mu J_nu = (1/(pi u)) [(PP+QQ) cos(A-B) + (PQ-QP) sin(A-B)
//                           + (PP-QQ) cos(A+B) - (PQ+QP) sin(A+B)]
// with A+B = 2u - (mu+nu) pi/2 - pi/2 and A-B = (nu-mu) pi/2.
double watson_tail(double lambda, double mu, double nu, double x0) {
  auto hm = specfun::hankel_series(mu, kHankelTerms);
  auto hn = specfun::hankel_series(nu, kHankelTerms);
  auto pp = poly_mul(hm.p, hn.p), qq = poly_mul(hm.q, hn.q);
  auto pq = poly_mul(hm.p, hn.q), qp = poly_mul(hm.q, hn.p);
  std::vector<double> env(pp.size());
  for (std::size_t j = 0; j < env.size(); ++j)
    env[j] = std::abs(pp[j]) + std::abs(qq[j]) + std::abs(pq[j]) + std::abs(qp[j]);
  const std::size_t len = terms_to_keep(env, x0);
  std::vector<double> even(len), osc_c(len), osc_s(len);
  const auto [cd, sd] = quarter_turn(nu - mu);
  for (std::size_t j = 0; j < len; ++j) {
    even[j] = (pp[j] + qq[j]) * cd + (pq[j] - qp[j]) * sd;
    osc_c[j] = pp[j] - qq[j];
    osc_s[j] = -(pq[j] + qp[j]);
  }

  double total = 0.0;
  for (std::size_t j = 0; j < even.size(); ++j)
    if (even[j] != 0.0) total += even[j] * std::pow(x0, -lambda - double(j)) / (lambda + double(j));
  // cos(2u - phase), sin(2u - phase) parts through Re, Im of e^{-i phase} I(alpha).
  const auto [cp, sp] = quarter_turn(mu + nu + 1.0);
  const cplx rot(cp, -sp);
  for (std::size_t j = 0; j < len; ++j) {
    const double c = osc_c[j], s = osc_s[j];
    if (c == 0.0 && s == 0.0) continue;
    const cplx i_alpha = rot * oscillatory_tail(lambda + 1.0 + double(j), x0);
    total += c * i_alpha.real() + s * i_alpha.imag();
  }
  return total / M_PI;
}

quad::QuadratureResult head_integral(const quad::Integrand& f, double origin_exponent, double tol) {
  quad::QuadratureOptions opt;
  opt.rel_tol = tol;
  opt.abs_tol = tol;
  if (origin_exponent != std::nearbyint(origin_exponent)) opt.origin_exponent = origin_exponent;
  // Breakpoints every pi keep each panel to about one oscillation.
  std::vector<double> breaks;
  for (double b = M_PI; b < kTailStart; b += M_PI) breaks.push_back(b);
  return quad::integrate_interval(f, 0.0, kTailStart, opt, breaks);
}

}  // namespace

double rho_limit(double s, double x) {
  require_limit_domain(s);
  if (!(x > 0.0)) throw DomainError("rho_limit needs x > 0");
  const double u = 1.0 / x;
  const double ja = specfun::bessel_j(s + 0.5, u);
  const double jb = specfun::bessel_j(s - 0.5, u);
  const double jap = specfun::bessel_j(s + 1.5, u);
  const double jbm = specfun::bessel_j(s - 1.5, u);
  return (ja * ja + jb * jb - jap * jb - jbm * ja) / (4.0 * x * x * x);
}

double limit_constant(double s) {
  const cplx num[] = {s + 1.0, s + 1.0, s + 0.5, s + 1.5};
  const cplx den[] = {2.0 * s + 1.0, 2.0 * s + 2.0};
  return (specfun::gamma_ratio(num, den) * std::exp(4.0 * s * std::log(2.0)) / (2.0 * M_PI)).real();
}

double limit_moment(double y, double s) {
  require_limit_domain(s);
  if (!(y > 1.0 && y < 2.0 * s + 1.0))
    throw DomainError("limit_moment needs 1 < y < 2s+1, got y = " + std::to_string(y));
  const cplx num[] = {(y - 1.0) / 2.0, s + (1.0 - y) / 2.0};
  const cplx den[] = {y / 2.0 + 1.0, s + (1.0 + y) / 2.0};
  return s * specfun::gamma_ratio(num, den).real() / (4.0 * std::sqrt(M_PI));
}

double watson_closed_form(double lambda, double mu, double nu) {
  if (!(lambda > 0.0 && lambda < mu + nu + 1.0))
    throw DomainError("watson integral diverges outside 0 < lambda < mu+nu+1");
  using specfun::reciprocal_gamma;
  return std::exp(-lambda * std::log(2.0)) * std::tgamma(lambda) * std::tgamma((mu + nu - lambda + 1.0) / 2.0) *
         reciprocal_gamma((lambda + nu - mu + 1.0) / 2.0) * reciprocal_gamma((lambda + mu + nu + 1.0) / 2.0) *
         reciprocal_gamma((lambda + mu - nu + 1.0) / 2.0);
}

quad::QuadratureResult watson_integral(double lambda, double mu, double nu, double tol) {
  if (!(lambda > 0.0 && lambda < mu + nu + 1.0))
    throw DomainError("watson integral diverges outside 0 < lambda < mu+nu+1");
  auto head = head_integral([=](double u) { return cplx(watson_integrand(lambda, mu, nu, u)); },
                            mu + nu - lambda, tol);
  head.value += watson_tail(lambda, mu, nu, kTailStart);
  return head;
}

std::array<WatsonTerm, 4> limit_moment_terms(double y, double s, double tol) {
  require_limit_domain(s);
  const double a = s + 0.5, b = s - 0.5, lambda = y - 1.0;
  std::array<WatsonTerm, 4> t{{{a, a, 1.0}, {b, b, 1.0}, {s + 1.5, b, -1.0}, {s - 1.5, a, -1.0}}};
  for (auto& w : t) {
    w.closed_form = watson_closed_form(lambda, w.mu, w.nu);
    w.numeric = watson_integral(lambda, w.mu, w.nu, tol);
  }
  return t;
}

quad::QuadratureResult limit_moment_quadrature(double y, double s, double tol) {
  require_limit_domain(s);
  if (!(y > 1.0 && y < 2.0 * s + 1.0))
    throw DomainError("limit_moment needs 1 < y < 2s+1, got y = " + std::to_string(y));
  // x^y rho_inf(x) dx with u = 1/x becomes u^{1-y} [bracket](u) / 4 du.
  const double a = s + 0.5, b = s - 0.5, lambda = y - 1.0;
  auto f = [=](double u) {
    if (u == 0.0) return cplx(0.0);
    const double x = 1.0 / u;
    return cplx(std::pow(x, y) * rho_limit(s, x) * x * x);
  };
  auto head = head_integral(f, 2.0 * s - 1.0 - lambda, tol);
  const double tail = watson_tail(lambda, a, a, kTailStart) + watson_tail(lambda, b, b, kTailStart) -
                      watson_tail(lambda, s + 1.5, b, kTailStart) - watson_tail(lambda, s - 1.5, a, kTailStart);
  head.value += tail / 4.0;
  return head;
}

}  // namespace hpm::density
