#include <doctest.h>

#include <cmath>

#include "hpm/errors.hpp"
#include "hpm/moments.hpp"
#include "hpm/pseudojacobi.hpp"
#include "hpm/quadrature.hpp"
#include "support/gen.hpp"

using hpm::cplx;
using hpm::EnsembleParams;
using hpm::testing::Gen;
using hpm::testing::rel_err;
namespace mo = hpm::moments;

namespace {

// int_R x^j phi(x) dx.
double weight_moment(const EnsembleParams& p, int j) {
  auto f = [&](double x) { return cplx(std::pow(x, j) * hpm::pj::weight(p, x)); };
  return hpm::quad::integrate_line(f, 2.0 * (p.re_s() + p.n()) - j, 1e-13).value.real();
}

// p_N p_{N-1} phi from monomial coefficients, independent of the scaled recurrence.
double pp_phi(const EnsembleParams& p, double x) {
  auto eval = [&](int m) {
    auto c = hpm::pj::coefficients(p, m, hpm::pj::Existence::continue_analytically);
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + static_cast<double>(c[i].re);
    return v;
  };
  return eval(p.n()) * eval(p.n() - 1) * hpm::pj::weight(p, x);
}

}  // namespace

TEST_CASE("forward recurrence from the initial values") {
  auto q = mo::q_recurrence(EnsembleParams(2.0, 2), 0.0, 2);
  REQUIRE(q.size() == 3);
  CHECK(std::abs(q[0] - 3.2) < 1e-14);
  CHECK(std::abs(q[1] - 6.4) < 1e-14);
  CHECK(rel_err(q[2], mo::q_hahn(EnsembleParams(2.0, 2), 2.0)) < 1e-10);

  EnsembleParams p(4.0, 3);
  auto r = mo::q_recurrence(p, 0.0, 3);
  for (int k = 0; k <= 3; ++k) CHECK(rel_err(r[k], mo::q_quadrature(p, double(k)).value) < 1e-8);

  // Seeded off zero from the closed form.
  EnsembleParams p2(6.3, 7);
  auto t = mo::q_recurrence(p2, 0.25, 5);
  for (int i = 0; i <= 5; ++i) CHECK(rel_err(t[i], mo::q_hahn(p2, 0.25 + i)) < 1e-10);

  // R(k) = 0 when 2k+3 = 2s.
  CHECK_THROWS_AS(mo::q_recurrence(EnsembleParams(2.5, 3), 0.0, 3), hpm::PivotError);
  CHECK_THROWS_AS(mo::q_recurrence(EnsembleParams(cplx(2.0, 1.0), 3), 0.0, 3), hpm::DomainError);
}

TEST_CASE("three-term recurrence closes on the closed form") {
  Gen g(41);
  for (auto [s, n] : {std::pair{1.0, 3}, {2.5, 8}, {4.0, 20}, {0.7, 5}}) {
    EnsembleParams p(s, n);
    for (int i = 0; i < 30; ++i) {
      const cplx k = i % 2 == 0 ? cplx(g.uniform(-0.4, 3.0), 0.0) : g.complex_box(-2.0, 3.0, -2.0, 2.0);
      if (std::abs(k.imag()) == 0.0 && std::abs(k.real() + 0.5 - std::nearbyint(k.real() + 0.5)) < 1e-6) continue;
      CHECK(mo::q_recurrence_residual(p, k) <= 1e-9);
    }
  }
  auto c = mo::q_recurrence_coefficients(EnsembleParams(2.5, 3), 1.0);
  CHECK(c.r == 0.0);
}

TEST_CASE("difference equation for J") {
  Gen g(43);
  for (auto [s, n] : {std::pair{1.0, 3}, {2.5, 8}, {4.0, 20}}) {
    EnsembleParams p(s, n);
    for (int i = 0; i < 10; ++i) {
      CHECK(mo::j_difference_residual(p, g.uniform(-3.0, 5.0)) <= 1e-9);
      CHECK(mo::j_difference_residual(p, g.complex_box(-3.0, 5.0, -3.0, 3.0)) <= 1e-9);
    }
    CHECK(mo::j_difference_residual(p, 0.7, 0.01) >= 1e-3);
  }
}

TEST_CASE("a(t) against a beta integral") {
  Gen g(47);
  for (int i = 0; i < 20; ++i) {
    const double s = g.uniform(0.6, 6.0);
    const double t = g.uniform(-0.9, 2.0 * s - 0.1);
    const double want = std::tgamma(t / 2.0 + 1.0) * std::tgamma(s - t / 2.0) / (2.0 * std::tgamma(s + 1.0));
    CHECK(rel_err(mo::a_integral(EnsembleParams(s, 1), t).value, want) < 1e-9);
  }
  // a(2k+1) = (2k+1) Q(k) / (4 s gamma^2).
  for (auto [s, n] : {std::pair{3.0, 4}, {2.2, 7}}) {
    EnsembleParams p(s, n);
    for (double k : {0.0, 0.4, 1.1}) {
      const cplx want = (2.0 * k + 1.0) * mo::q_hahn(p, k) / (4.0 * s * p.gamma_sq());
      CHECK(rel_err(mo::a_integral(p, 2.0 * k + 1.0).value, want) < 1e-9);
    }
  }
  CHECK_THROWS_AS(mo::a_integral(EnsembleParams(2.0, 2), 4.0), hpm::DomainError);
  CHECK_THROWS_AS(mo::a_integral(EnsembleParams(2.0, 2), -1.0), hpm::DomainError);
}

TEST_CASE("a(t) at complex s against a trapezoid rule") {
  EnsembleParams p(cplx(2.0, 1.0), 2);
  for (double t : {1.0, 2.0}) {
    // x = tan(theta), theta in (0, pi/2); the integrand vanishes at both ends.
    const int m = 200000;
    const double h = (M_PI / 2.0) / m;
    double sum = 0.0;
    for (int i = 1; i < m; ++i) {
      const double th = i * h, x = std::tan(th);
      sum += std::pow(x, t) * pp_phi(p, x) * (1.0 + x * x);
    }
    const cplx a = mo::a_integral(p, t).value;
    CHECK(std::isfinite(a.real()));
    CHECK(rel_err(a, sum * h) < 1e-6);
  }
}

TEST_CASE("five-term recurrence for a(t)") {
  Gen g(53);
  CHECK(mo::general_recurrence_residual(EnsembleParams(4.0, 3), 5.5) <= 1e-7);
  CHECK(mo::general_recurrence_residual(EnsembleParams(cplx(3.0, 2.0), 2), 5.0) <= 1e-6);
  for (int i = 0; i < 10; ++i) {
    const cplx s = g.complex_box(3.0, 7.0, -2.0, 2.0);
    EnsembleParams p(s, g.integer(1, 8));
    CHECK(mo::general_recurrence_residual(p, g.uniform(4.1, 2.0 * s.real() - 0.1)) <= 1e-6);
  }
  auto c = mo::general_recurrence_coefficients(EnsembleParams(4.0, 3), 5.5);
  CHECK(c[1] == 0.0);
  CHECK(c[3] == 0.0);
  CHECK_THROWS_AS(mo::general_recurrence_residual(EnsembleParams(4.0, 3), 3.5), hpm::DomainError);
}

TEST_CASE("odd and even trace moments") {
  // tilde Q(2k) = Q(k) for real s.
  for (auto [s, n] : {std::pair{4.0, 3}, {3.3, 6}})
    for (int k = 0; 2 * k < 2.0 * s - 1.0; ++k)
      CHECK(rel_err(mo::tilde_q(EnsembleParams(s, n), 2 * k), mo::q_hahn(EnsembleParams(s, n), double(k))) < 1e-9);

  // Two eigenvalues: E sum f(x_j) = [nu2 mu0 - 2 nu1 mu1 + nu0 mu2] / (mu0 mu2 - mu1^2) with
  // mu_j = int x^j phi and nu_j = int x^j f phi, f(x) = x^3 + x.
  EnsembleParams p(cplx(2.0, 1.0), 2);
  double mu[6];
  for (int j = 0; j < 6; ++j) mu[j] = weight_moment(p, j);
  const double nu0 = mu[3] + mu[1], nu1 = mu[4] + mu[2], nu2 = mu[5] + mu[3];
  const double want = (nu2 * mu[0] - 2.0 * nu1 * mu[1] + nu0 * mu[2]) / (mu[0] * mu[2] - mu[1] * mu[1]);
  const cplx odd = mo::tilde_q(p, 1);
  CHECK(std::abs(odd.imag()) < 1e-12 * std::abs(odd));
  CHECK(std::abs(want) > 1e-3);
  CHECK(rel_err(odd, want) < 1e-6);

  const cplx even = mo::tilde_q(EnsembleParams(cplx(3.0, -1.5), 4), 0);
  CHECK(even.real() > 0.0);
  CHECK(std::abs(even.imag()) < 1e-12 * even.real());
  CHECK_THROWS_AS(mo::tilde_q(p, 3), hpm::DomainError);
}

TEST_CASE("recurrence for the trace moments") {
  Gen g(59);
  CHECK(mo::tilde_recurrence_residual(EnsembleParams(cplx(3.0, 1.0), 2), 4) <= 1e-6);
  for (int i = 0; i < 10; ++i) {
    const cplx s = g.complex_box(2.5, 6.0, -2.0, 2.0);
    EnsembleParams p(s, g.integer(1, 6));
    const int top = int(std::ceil(2.0 * s.real() - 1.0)) - 1;
    CHECK(mo::tilde_recurrence_residual(p, g.integer(1, top)) <= 1e-6);
  }
  CHECK(mo::tilde_recurrence_coefficients(EnsembleParams(4.0, 3), 3)[1] == 0.0);
  // Real s: the even-m relation is the three-term recurrence with k = m/2 - 1.
  EnsembleParams p(4.0, 3);
  const auto d = mo::tilde_recurrence_coefficients(p, 6);
  const auto c = mo::q_recurrence_coefficients(p, 2.0);
  CHECK(std::abs(d[0] - c.r) < 1e-12);
  CHECK(std::abs(d[2] - c.t) < 1e-12);
  CHECK(std::abs(d[3] - c.s) < 1e-12);
}

TEST_CASE("integration-by-parts identity") {
  auto d = mo::ledoux_data(EnsembleParams(4.0, 3));
  const double beta = EnsembleParams(4.0, 3).beta();
  CHECK(d.d_n == doctest::Approx(2.0 * beta - 2.0 + d.tau_n));
  CHECK(d.d_nm1 == doctest::Approx(2.0 * beta - 2.0 + d.tau_nm1));
  REQUIRE(d.m[3].size() == 4);
  CHECK(d.m[3][0] == 0.0);
  CHECK(d.m[3][1] == -6.0);
  CHECK(d.m[3][2] == 0.0);
  CHECK(d.m[3][3] == -6.0);

  CHECK(mo::ledoux_identity_residual(EnsembleParams(4.0, 3), 3.5) <= 1e-7);
  CHECK(mo::ledoux_identity_residual(EnsembleParams(5.0, 5), 4.0) <= 1e-7);
  CHECK(mo::ledoux_identity_residual(EnsembleParams(cplx(4.0, 1.0), 2), 4.0) <= 1e-6);
  Gen g(61);
  for (int i = 0; i < 7; ++i) {
    const cplx s = i == 0 ? cplx(4.5, -1.2) : cplx(g.uniform(3.0, 7.0), 0.0);
    EnsembleParams p(s, g.integer(1, 8));
    CHECK(mo::ledoux_identity_residual(p, g.uniform(3.1, 2.0 * s.real() - 2.1)) <= 1e-7);
  }
  CHECK(mo::ledoux_identity_residual(EnsembleParams(4.0, 3), 3.5, 0.01) > 1e-4);
  CHECK_THROWS_AS(mo::ledoux_identity_residual(EnsembleParams(2.4, 3), 3.5), hpm::DomainError);
  CHECK_THROWS_AS(mo::ledoux_identity_residual(EnsembleParams(4.0, 3), 6.5), hpm::DomainError);
}
