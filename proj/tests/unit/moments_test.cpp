#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hpm/density.hpp"
#include "hpm/errors.hpp"
#include "hpm/moments.hpp"
#include "support/gen.hpp"

using hpm::cplx;
using hpm::EnsembleParams;
using hpm::testing::Gen;
using hpm::testing::rel_err;
namespace mo = hpm::moments;

namespace {

// Q(k; s, 1) from the beta integral.
double single_eigenvalue_q(double k, double s) {
  return s * std::tgamma(k + 0.5) * std::tgamma(s - k - 0.5) / (std::sqrt(M_PI) * std::tgamma(s + 0.5));
}

// n-th forward difference of J on k0, k0 + h, ..., k0 + n h.
cplx forward_difference(const EnsembleParams& p, cplx k0, double h, int n, double* scale) {
  cplx d = 0.0;
  double binom = 1.0;
  *scale = 0.0;
  for (int j = 0; j <= n; ++j) {
    const cplx v = mo::j_hahn(p, k0 + h * j);
    d += ((n - j) % 2 == 0 ? binom : -binom) * v;
    *scale = std::max(*scale, binom * std::abs(v));
    binom = binom * (n - j) / (j + 1);
  }
  return d;
}

}  // namespace

TEST_CASE("small moments") {
  CHECK(std::abs(mo::q_hahn(EnsembleParams(2.0, 1), 0.0) - 4.0 / 3.0) < 1e-14);
  CHECK(std::abs(mo::q_hahn(EnsembleParams(2.0, 2), 0.0) - 3.2) < 1e-14);
  CHECK(std::abs(mo::q_hahn(EnsembleParams(2.0, 2), 1.0) - 6.4) < 1e-13);
  CHECK(rel_err(mo::q_quadrature(EnsembleParams(2.0, 1), 0.0).value, 4.0 / 3.0) < 1e-10);
  CHECK(rel_err(mo::q_quadrature(EnsembleParams(2.0, 2), 0.0).value, 3.2) < 1e-10);
  CHECK(rel_err(mo::q_quadrature(EnsembleParams(2.0, 2), 1.0).value, 6.4) < 1e-10);
}

TEST_CASE("initial values") {
  for (double s : {1.0, 2.5, 4.0})
    for (int n = 1; n <= 10; ++n) {
      EnsembleParams p(s, n);
      const auto [q0, q1] = mo::q_initial(p);
      CHECK(rel_err(mo::q_hahn(p, 0.0), q0) < 1e-12);
      CHECK(rel_err(mo::q_hahn(p, 1.0), q1) < 1e-12);
    }
  CHECK_THROWS_AS(mo::q_initial(EnsembleParams(0.5, 2)), hpm::PoleError);
  CHECK_THROWS_AS(mo::q_initial(EnsembleParams(1.5, 2)), hpm::PoleError);
}

TEST_CASE("single eigenvalue oracle") {
  Gen g(11);
  for (int i = 0; i < 50; ++i) {
    const double s = g.uniform(0.2, 8.0);
    const double k = g.uniform(-0.49, s - 0.51);
    CHECK(rel_err(mo::q_hahn(EnsembleParams(s, 1), k), single_eigenvalue_q(k, s)) < 1e-12);
  }
  // J is the constant s / (sqrt(pi) Gamma(s+1/2)).
  EnsembleParams p(3.3, 1);
  const double c = 3.3 / (std::sqrt(M_PI) * std::tgamma(3.8));
  for (cplx k : {cplx(0.0), cplx(-7.0, 2.0), cplx(40.0, -3.0)}) CHECK(rel_err(mo::j_hahn(p, k), c) < 1e-14);
  CHECK(rel_err(mo::q_byparts(p, 0.4, mo::ByPartsMode::termwise), single_eigenvalue_q(0.4, 3.3)) < 1e-14);
}

TEST_CASE("three routes agree") {
  for (double s : {1.0, 2.5, 4.0})
    for (int n = 1; n <= 8; ++n) {
      EnsembleParams p(s, n);
      for (double k : {0.0, 0.3, 1.0, s / 2.0 - 0.4}) {
        if (!mo::in_strip(p, k)) continue;
        const cplx h = mo::q_hahn(p, k);
        CHECK(rel_err(mo::q_quadrature(p, k).value, h) < 1e-8);
        CHECK(rel_err(mo::q_byparts(p, k), h) < 1e-8);
        CHECK(rel_err(mo::q_byparts(p, k, mo::ByPartsMode::termwise), h) < 1e-12);
      }
    }
  EnsembleParams p(3.0, 4);
  CHECK(rel_err(mo::q_byparts(p, 0.7), mo::q_quadrature(p, 0.7).value) < 1e-9);
  EnsembleParams q(4.0, 6);
  const cplx k(1.2, 0.5);
  CHECK(rel_err(mo::q_quadrature(q, k).value, mo::q_hahn(q, k)) < 1e-8);
}

TEST_CASE("strip and pole errors") {
  EnsembleParams p(2.0, 3);
  CHECK_THROWS_AS(mo::q_quadrature(p, 1.6), hpm::DomainError);
  CHECK_THROWS_AS(mo::q_quadrature(p, -0.6), hpm::DomainError);
  CHECK_THROWS_AS(mo::q_hahn(p, -0.5), hpm::PoleError);
  CHECK_THROWS_AS(mo::q_hahn(p, 1.5), hpm::PoleError);
  CHECK_THROWS_AS(mo::q_hahn(EnsembleParams(cplx(2.0, 1.0), 3), 0.0), hpm::DomainError);
  // J itself is finite where Q has a pole.
  CHECK(std::isfinite(std::abs(mo::j_hahn(p, -0.5))));
  CHECK(std::abs(mo::j_hahn(p, -0.5)) > 0.0);
}

TEST_CASE("near the strip edge Q / gamma factor tends to J") {
  EnsembleParams p(2.0, 3);
  const double edge = 1.5;
  for (double eps : {0.2, 0.1}) {
    const double k = edge - eps;
    const cplx ratio = mo::q_byparts(p, k) / (std::tgamma(k + 0.5) * std::tgamma(2.0 - k - 0.5));
    CHECK(rel_err(ratio, mo::j_hahn(p, k)) < 1e-8);
  }
  const cplx jk = mo::j_hahn(p, edge - 1e-6), je = mo::j_hahn(p, edge);
  CHECK(rel_err(jk, je) < 1e-5);
}

TEST_CASE("unreduced prefactor agrees with the pole-free one") {
  Gen g(17);
  int checked = 0;
  while (checked < 20) {
    const double s = g.uniform(0.1, 9.0);
    if (std::abs(s - std::nearbyint(s - 0.5) - 0.5) < 1e-3) continue;
    const int n = g.integer(1, 15);
    EnsembleParams p(s, n);
    const cplx k = g.complex_box(-3.0, 3.0, -2.0, 2.0);
    CHECK(rel_err(mo::j_hahn_unreduced(p, k), mo::j_hahn(p, k), 1e-300) < 1e-11);
    ++checked;
  }
}

TEST_CASE("reflection") {
  Gen g(23);
  for (auto [s, n] : {std::pair{3.0, 5}, {1.0, 4}, {2.5, 12}, {7.3, 9}}) {
    EnsembleParams p(s, n);
    const double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;
    for (int i = 0; i < 20; ++i) {
      const cplx k = g.complex_box(-6.0, 4.0, -5.0, 5.0);
      CHECK(rel_err(mo::j_hahn(p, -k - 2.0), sign * mo::j_hahn(p, k), 1e-300) < 1e-10);
      CHECK(rel_err(mo::j_byparts_termwise(p, -k - 2.0), sign * mo::j_byparts_termwise(p, k), 1e-300) < 1e-10);
    }
  }
}

TEST_CASE("J is a polynomial of degree N-1") {
  Gen g(29);
  for (auto [s, n] : {std::pair{2.0, 3}, {1.0, 6}, {2.5, 10}, {4.0, 15}}) {
    EnsembleParams p(s, n);
    for (double h : {0.5, 1.0}) {
      const cplx k0 = g.complex_box(-2.0, 1.0, -1.0, 1.0);
      double scale = 0.0;
      const cplx d = forward_difference(p, k0, h, n, &scale);
      CHECK(std::abs(d) <= 1e-9 * scale);
    }
    // The (N-1)-th difference is constant and nonzero.
    double sa = 0.0, sb = 0.0;
    const cplx da = forward_difference(p, 0.0, 1.0, n - 1, &sa);
    const cplx db = forward_difference(p, cplx(-3.0, 2.0), 1.0, n - 1, &sb);
    CHECK(std::abs(da) > 1e-12 * sa);  // well above the round-off floor
    CHECK(std::abs(da - db) <= 1e-9 * std::max(sa, sb));
  }
}

TEST_CASE("interpolated J polynomial") {
  auto one = mo::j_polynomial(EnsembleParams(2.0, 1));
  CHECK(one.degree == 0);
  REQUIRE(one.coefficients.size() == 1);
  Gen g(31);
  for (auto [s, n] : {std::pair{2.0, 3}, {2.5, 8}, {1.0, 12}}) {
    EnsembleParams p(s, n);
    auto j = mo::j_polynomial(p);
    CHECK(j.degree == n - 1);
    CHECK(!j.ill_conditioned);
    CHECK(!j.provenance.empty());
    CHECK(std::abs(j.coefficients.back()) > 0.0);
    for (const cplx& c : j.coefficients) CHECK(std::abs(c.imag()) <= 1e-10 * std::max(1.0, std::abs(c)));
    for (int i = 0; i < 10; ++i) {
      const cplx k = g.complex_box(-0.25, s - 0.75, -0.5, 0.5);
      CHECK(rel_err(j(k), mo::j_hahn(p, k), 1e-300) < 1e-9);
    }
  }
  CHECK(mo::j_polynomial(EnsembleParams(2.0, 61)).ill_conditioned);
}

TEST_CASE("zeros lie on Re k = -1 and come in reflected pairs") {
  CHECK(mo::j_zeros(EnsembleParams(2.0, 1)).empty());
  auto two = mo::j_zeros(EnsembleParams(2.0, 2));
  REQUIRE(two.size() == 1);
  CHECK(std::abs(two[0] + 1.0) < 1e-12);

  for (double s : {0.3, 2.0, 5.5})
    for (int n = 2; n <= 30; n += (n < 8 ? 1 : 7)) {
      EnsembleParams p(s, n);
      auto z = mo::j_zeros(p);
      REQUIRE(z.size() == std::size_t(n - 1));
      for (std::size_t i = 0; i < z.size(); ++i) {
        CHECK(std::abs(z[i].real() + 1.0) <= 1e-8 * (1.0 + std::abs(z[i])));
        // k -> -k-2 maps the i-th zero to the mirrored one.
        const cplx mirror = -z[i] - 2.0;
        CHECK(std::abs(mirror - z[z.size() - 1 - i]) <= 1e-8 * (1.0 + std::abs(z[i])));
        CHECK(std::abs(mo::j_hahn(p, z[i])) <= 1e-8 * std::abs(mo::j_hahn(p, cplx(-1.0, z[i].imag() + 0.37))) +
                                                   1e-300);
      }
    }
  // Above N = 60 the roots are bracketed on the line.
  auto big = mo::j_zeros(EnsembleParams(2.0, 80));
  CHECK(big.size() == 79);
  for (const cplx& v : big) CHECK(std::abs(v.real() + 1.0) <= 1e-8 * (1.0 + std::abs(v)));
}

TEST_CASE("zeros interlace between consecutive N") {
  for (double s : {1.0, 3.5})
    for (int n = 2; n < 20; ++n) {
      auto a = mo::j_zeros(EnsembleParams(s, n));
      auto b = mo::j_zeros(EnsembleParams(s, n + 1));
      // b_0 < a_0 < b_1 < ... < a_{n-2} < b_{n-1}
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(b[i].imag() < a[i].imag());
        CHECK(a[i].imag() < b[i + 1].imag());
      }
    }
}

TEST_CASE("difference equation has a unique polynomial solution") {
  for (auto [s, n] : {std::pair{1.0, 4}, {2.5, 10}, {2.0, 1}}) {
    EnsembleParams p(s, n);
    auto r = mo::uniqueness_check(p);
    CHECK(r.null_dimension == 1);
    CHECK(r.unique);
    REQUIRE(r.singular_values.size() == std::size_t(n));
    if (n > 1) CHECK(r.singular_values[n - 2] > 1e-6 * r.singular_values[0]);
    CHECK(r.match_residual < 1e-8);
  }
  EnsembleParams p(2.5, 10);
  CHECK(mo::degree_trial_residual(p, 9) < 1e-10);
  CHECK(mo::degree_trial_residual(p, 10) > 1e-5);
  CHECK(mo::degree_trial_residual(p, 6) > 1e-5);
}

TEST_CASE("large N limit") {
  CHECK(std::abs(mo::large_n_limit(0.0, 2.0) - 4.0 / 15.0) < 1e-15);
  for (double s : {1.0, 2.0, 4.5})
    for (double k : {0.0, 0.25, s / 2.0 - 0.3})
      CHECK(rel_err(mo::large_n_limit(k, s), 2.0 * hpm::density::limit_moment(2.0 * k + 2.0, s)) < 1e-13);

  // Q(0;2,N)/N^2 = (4/15)(1 + 4/N) exactly.
  const double q200 = mo::q_hahn(EnsembleParams(2.0, 200), 0.0).real() / (200.0 * 200.0);
  CHECK(std::abs(q200 - 4.0 / 15.0) <= 0.01);
  CHECK(std::abs(q200 - (4.0 / 15.0) * (1.0 + 4.0 / 200.0)) < 1e-14);

  for (auto [k, s] : {std::pair{0.0, 2.0}, {1.0, 4.0}}) {
    auto err = [&](int n) {
      return std::abs(mo::q_hahn(EnsembleParams(s, n), k).real() / std::pow(n, 2.0 * k + 2.0) -
                      mo::large_n_limit(k, s));
    };
    const double ratio = err(100) / err(200);
    CHECK(ratio >= 1.6);
    CHECK(ratio <= 2.4);
  }
  CHECK_THROWS_AS(mo::large_n_limit(0.0, 0.5), hpm::DomainError);
  CHECK_THROWS_AS(mo::large_n_limit(1.6, 2.0), hpm::DomainError);
}

TEST_CASE("circular moment through the Cayley transform") {
  CHECK(std::abs(mo::cayley(0.0) - 1.0) < 1e-16);
  Gen g(37);
  for (int i = 0; i < 50; ++i) {
    const double x = std::tan(g.uniform(-1.5, 1.5)) * g.uniform(0.1, 20.0);
    const cplx u = mo::cayley(x);
    CHECK(std::abs(std::abs(u) - 1.0) < 1e-14);
    CHECK(std::abs(mo::inverse_cayley(u) - x) <= 1e-14 * std::max(1.0, std::abs(x)));
  }

  // E sum |tan(theta/2)|^{2k} sec^2(theta/2) over the pushed-forward eigenvalues.
  EnsembleParams p(2.0, 3);
  const double k = 0.5;
  auto f = [&](double theta) {
    const double x = mo::inverse_cayley(std::polar(1.0, theta));
    const double sec2 = 1.0 + x * x;
    return cplx(std::pow(std::abs(x), 2.0 * k) * sec2 * hpm::density::rho(p, x).rho * 0.5 * sec2);
  };
  hpm::quad::QuadratureOptions opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 0.0;
  const double breaks[] = {0.0};
  auto t = hpm::quad::integrate_interval(f, -M_PI, M_PI, opt, breaks);
  CHECK(rel_err(t.value, mo::circular_t(p, k)) < 1e-9);
  CHECK(rel_err(mo::circular_t(p, k), mo::q_quadrature(p, k).value) < 1e-9);
}
