#include <doctest.h>

#include <cmath>

#include "hpm/density.hpp"
#include "hpm/pseudojacobi.hpp"
#include "hpm/quadrature.hpp"
#include "support/gen.hpp"

using hpm::cplx;
using hpm::EnsembleParams;
using hpm::testing::Gen;
namespace dn = hpm::density;

namespace {

double mass(const EnsembleParams& p) {
  auto r = hpm::quad::integrate_line([&](double x) { return cplx(dn::rho(p, x).rho); }, 2.0 * p.re_s() + 2.0,
                                     1e-12);
  return r.value.real();
}

}  // namespace

TEST_CASE("single eigenvalue density is the normalised weight") {
  EnsembleParams p(2.0, 1);
  CHECK(std::abs(dn::rho(p, 0.0).rho - 8.0 / (3.0 * M_PI)) < 1e-15);
  Gen g(3);
  for (int i = 0; i < 30; ++i) {
    double x = g.uniform(-30.0, 30.0);
    double want = 8.0 / (3.0 * M_PI) * std::pow(1.0 + x * x, -3.0);
    CHECK(std::abs(dn::rho(p, x).rho - want) <= 1e-14 * want);
  }
}

TEST_CASE("density integrates to N") {
  for (double s : {0.75, 2.0, 5.0})
    for (int n : {1, 2, 5, 10, 20}) {
      EnsembleParams p(s, n);
      CHECK(std::abs(mass(p) - n) <= 1e-8 * n);
    }
  for (cplx s : {cplx(2.0, 1.0), cplx(0.25, -0.6), cplx(-0.25, 0.3)}) {
    EnsembleParams p(s, 4);
    CHECK(std::abs(mass(p) - 4.0) <= 4e-8);
  }
}

TEST_CASE("density is even for real s and mirrors under conjugation") {
  Gen g(4);
  for (int i = 0; i < 30; ++i) {
    EnsembleParams p(g.complex_box(-0.4, 5.0, -2.0, 2.0), g.integer(1, 15));
    double x = g.uniform(-10.0, 10.0);
    double a = dn::rho(p, x).rho, b = dn::rho(p.conjugate(), -x).rho;
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
    CHECK(a > 0.0);
  }
}

TEST_CASE("analytic derivatives agree with finite differences") {
  Gen g(5);
  for (int i = 0; i < 20; ++i) {
    EnsembleParams p(g.complex_box(0.0, 4.0, -1.5, 1.5), g.integer(1, 8));
    double x = g.uniform(-4.0, 4.0), h = 1e-4;
    auto e = dn::rho(p, x);
    auto em = dn::rho(p, x - h), ep = dn::rho(p, x + h);
    double scale = std::abs(e.rho) + std::abs(e.d1) + std::abs(e.d2) + std::abs(e.d3);
    CHECK(std::abs((ep.rho - em.rho) / (2 * h) - e.d1) <= 1e-6 * scale);
    CHECK(std::abs((ep.d1 - em.d1) / (2 * h) - e.d2) <= 1e-6 * scale);
    CHECK(std::abs((ep.d2 - em.d2) / (2 * h) - e.d3) <= 1e-6 * scale);
  }
}

TEST_CASE("first-order identity") {
  CHECK(dn::diffrho_residual(EnsembleParams(2.0, 3), 0.4) <= 1e-9);
  Gen g(6);
  for (int i = 0; i < 20; ++i) CHECK(dn::diffrho_residual(EnsembleParams(2.0, 1), g.uniform(-9, 9)) <= 1e-12);
  CHECK(dn::diffrho_residual(EnsembleParams(2.0, 3), 0.4, 0.01) >= 1e-3);
  for (cplx s : {cplx(0.75), cplx(2.0), cplx(5.0), cplx(2.0, 1.0)})
    for (int n : {1, 2, 5, 10, 20}) {
      EnsembleParams p(s, n);
      for (int i = 0; i < 30; ++i) CHECK(dn::diffrho_residual(p, g.uniform(-3.0 * n, 3.0 * n)) <= 1e-9);
    }
}

TEST_CASE("third-order equation") {
  for (double x : {0.1, 1.0, 3.0}) CHECK(dn::ode3_residual(EnsembleParams(2.0, 4), x) <= 1e-7);
  CHECK(dn::ode3_residual(EnsembleParams(0.75, 4), 0.6) <= 1e-7);
  // At the origin only the rho'' and rho terms survive for real s, and c0(0) = 0.
  auto t = dn::ode3_terms(EnsembleParams(2.0, 3), 0.0).terms;
  CHECK(t[0] == 0.0);
  CHECK(t[2] == 0.0);
  CHECK(dn::ode3_residual(EnsembleParams(2.0, 4), 0.3, 0.01) >= 1e-3);
  Gen g(7);
  for (cplx s : {cplx(-0.25), cplx(0.25), cplx(0.75), cplx(2.0), cplx(5.0), cplx(2.0, 1.0), cplx(-0.3, 0.8),
                 cplx(3.0, -2.0)})
    for (int n : {1, 2, 5, 10, 20}) {
      EnsembleParams p(s, n);
      for (int i = 0; i < 30; ++i) CHECK(dn::ode3_residual(p, g.uniform(-3.0 * n, 3.0 * n)) <= 1e-7);
    }
}

TEST_CASE("scaled density") {
  EnsembleParams one(2.0, 1);
  CHECK(dn::rho_scaled(one, 0.7) == dn::rho(one, 0.7).rho);
  EnsembleParams p(2.0, 6);
  auto r = hpm::quad::integrate_half_line([&](double x) { return cplx(dn::rho_scaled(p, x)); }, 6.0, 1e-12);
  CHECK(std::abs(r.value.real() - 3.0) < 1e-9);
}

TEST_CASE("large degree stays finite") {
  EnsembleParams p(2.0, 200);
  for (double x : {0.0, 1e-3, 0.5, 10.0, 200.0, 1e4}) {
    auto e = dn::rho(p, x);
    CHECK(std::isfinite(e.rho));
    CHECK(std::isfinite(e.d3));
    CHECK(e.rho > 0.0);
    CHECK(dn::diffrho_residual(p, x) <= 1e-9);
  }
}
