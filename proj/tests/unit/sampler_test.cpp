#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hpm/errors.hpp"
#include "hpm/moments.hpp"
#include "hpm/pseudojacobi.hpp"
#include "hpm/quadrature.hpp"
#include "hpm/sampler.hpp"
#include "support/gen.hpp"

using hpm::cplx;
using hpm::EnsembleParams;
using hpm::testing::Gen;
namespace sa = hpm::sampler;

namespace {

// CDF of (8/(3 pi)) (1+x^2)^{-3}.
double cdf_n1_s2(double x) {
  const double b = 1.0 + x * x;
  return 0.5 + (8.0 / (3.0 * M_PI)) * (x / (4.0 * b * b) + 3.0 * x / (8.0 * b) + 0.375 * std::atan(x));
}

}  // namespace

TEST_CASE("log joint density") {
  EnsembleParams p(2.0, 1);
  const double zero[] = {0.0};
  CHECK(sa::log_joint_density(p, zero) == 0.0);
  EnsembleParams q(cplx(1.5, 0.7), 2);
  Gen g(71);
  for (int i = 0; i < 20; ++i) {
    const double a = g.uniform(-5, 5), b = g.uniform(-5, 5);
    const double ab[] = {a, b}, ba[] = {b, a};
    CHECK(sa::log_joint_density(q, ab) == doctest::Approx(sa::log_joint_density(q, ba)).epsilon(1e-15));
  }
  const double same[] = {0.3, 0.3};
  CHECK(std::isinf(sa::log_joint_density(q, same)));

  // exp(log density) over R^2 is 2! T(2, 2).
  EnsembleParams p2(2.0, 2);
  auto inner = [&](double x) {
    return hpm::quad::integrate_line(
        [&](double y) {
          const double xy[] = {x, y};
          return cplx(std::exp(sa::log_joint_density(p2, xy)));
        },
        2.0 * (2.0 + 2.0) - 2.0, 1e-12);
  };
  auto outer = hpm::quad::integrate_line([&](double x) { return inner(x).value; }, 2.0 * 4.0 - 2.0, 1e-11);
  CHECK(std::abs(outer.value.real() / 2.0 / hpm::pj::normalization_constants(p2).T() - 1.0) < 1e-8);
}

TEST_CASE("detailed balance for a frozen pair") {
  Gen g(73);
  for (cplx s : {cplx(2.0), cplx(0.8, -1.3)}) {
    EnsembleParams p(s, 2);
    for (int i = 0; i < 50; ++i) {
      std::vector<double> x = {g.uniform(-4, 4), g.uniform(-4, 4)};
      const int site = g.integer(0, 1);
      const double y = g.uniform(-6, 6);
      std::vector<double> xy = x;
      xy[site] = y;
      const double forward = sa::acceptance_log_ratio(p, x, site, y);
      const double backward = sa::acceptance_log_ratio(p, xy, site, x[site]);
      const double ratio = sa::log_joint_density(p, xy) - sa::log_joint_density(p, x);
      // min(1, r) pi(x) = min(1, 1/r) pi(y) reduces to r = pi(y)/pi(x) with a symmetric proposal.
      CHECK(std::abs(std::exp(forward) / std::exp(ratio) - 1.0) < 1e-14);
      CHECK(std::abs(forward + backward) < 1e-14 * std::max(1.0, std::abs(forward)));
    }
  }
}

TEST_CASE("single eigenvalue chain matches the analytic CDF") {
  sa::ChainConfig cfg;
  cfg.seed = 2024;
  cfg.thinning = 10;
  cfg.total_kept = 100000;
  auto ch = sa::run_chain(EnsembleParams(2.0, 1), cfg);
  REQUIRE(ch.kept() == 100000);
  std::vector<double> x(ch.samples);
  std::sort(x.begin(), x.end());
  double ks = 0.0;
  const double n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf_n1_s2(x[i]);
    ks = std::max({ks, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
  }
  MESSAGE("KS distance " << ks << ", acceptance " << ch.acceptance_rate);
  CHECK(ks <= 0.01);
  CHECK(ch.acceptance_rate > 0.1);
  CHECK(ch.acceptance_rate < 0.6);
  CHECK(ch.warnings.empty());
}

TEST_CASE("seeded chains are reproducible") {
  sa::ChainConfig cfg;
  cfg.seed = 0x1234567890abcdefULL;
  cfg.burn_in = 1000;
  cfg.total_kept = 500;
  EnsembleParams p(cplx(1.3, 0.4), 4);
  auto a = sa::run_chain(p, cfg, 3), b = sa::run_chain(p, cfg, 3), c = sa::run_chain(p, cfg, 4);
  CHECK(a.samples == b.samples);
  CHECK(a.samples != c.samples);
  auto serial = sa::run_chains(p, cfg, 5, 1), parallel = sa::run_chains(p, cfg, 5, 3);
  for (int i = 0; i < 5; ++i) CHECK(serial[i].samples == parallel[i].samples);
  CHECK(serial[3].samples == a.samples);
}

TEST_CASE("imaginary part of s tilts mass to positive x") {
  EnsembleParams p(cplx(2.0, 1.0), 1);
  sa::ChainConfig cfg;
  cfg.seed = 5;
  cfg.thinning = 5;
  cfg.total_kept = 100000;
  auto ch = sa::run_chain(p, cfg);
  // Batch means for the standard error of the sample mean.
  const std::size_t b = 300, nb = ch.kept() / b;
  double mean = 0.0;
  std::vector<double> bm(nb, 0.0);
  for (std::size_t i = 0; i < nb * b; ++i) bm[i / b] += ch.samples[i] / b;
  for (double v : bm) mean += v / nb;
  double var = 0.0;
  for (double v : bm) var += (v - mean) * (v - mean) / (nb - 1);
  const double se = std::sqrt(var / nb);
  // Oracle from quadrature of x rho.
  auto m1 = hpm::quad::integrate_line([&](double x) { return cplx(x * hpm::pj::weight(p, x)); }, 5.0, 1e-12);
  auto m0 = hpm::quad::integrate_line([&](double x) { return cplx(hpm::pj::weight(p, x)); }, 6.0, 1e-12);
  const double want = m1.value.real() / m0.value.real();
  MESSAGE("mean " << mean << " +- " << se << ", exact " << want);
  CHECK(want > 0.0);
  CHECK(mean > 5.0 * se);
  CHECK(std::abs(mean - want) < 4.0 * se);
}

TEST_CASE("statistics on the line and on the circle agree") {
  Gen g(79);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> x(5);
    for (double& v : x) v = std::tan(g.uniform(-1.55, 1.55));
    const double k = g.uniform(-0.4, 2.0);
    const double a = sa::q_statistic(x, k), b = sa::circle_statistic(x, k);
    CHECK(std::abs(a - b) <= 1e-12 * a);
    // Relabelling the eigenvalues changes nothing.
    std::vector<double> y(x.rbegin(), x.rend());
    CHECK(std::abs(sa::q_statistic(y, k) - a) <= 1e-14 * a);
  }
  const double x[] = {0.5, -2.0};
  CHECK(sa::q_statistic(x, 0.0) == doctest::Approx(1.25 + 5.0));
}

TEST_CASE("interval coverage of the moment estimate") {
  EnsembleParams p(3.0, 4);
  const double k = 1.0;
  const double exact = hpm::moments::q_hahn(p, k).real();
  sa::ChainConfig cfg;
  cfg.thinning = 4;
  cfg.total_kept = 100000;
  int covered = 0;
  for (int run = 0; run < 50; ++run) {
    cfg.seed = 1000 + run;
    std::vector<sa::ChainResult> ch{sa::run_chain(p, cfg)};
    const double ks[] = {k};
    const auto e = sa::estimate_q(p, ch, ks)[0];
    if (std::abs(e.estimate - exact) <= 2.0 * e.std_error) ++covered;
  }
  MESSAGE("covered " << covered << " of 50");
  CHECK(covered >= 43);
}

TEST_CASE("estimator domain") {
  sa::ChainConfig cfg;
  cfg.total_kept = 100;
  cfg.burn_in = 100;
  EnsembleParams p(3.0, 2);
  std::vector<sa::ChainResult> ch{sa::run_chain(p, cfg)};
  const double bad[] = {2.3};
  CHECK_THROWS_AS(sa::estimate_q(p, ch, bad), hpm::DomainError);
  const double ok[] = {0.0, 1.0};
  auto e = sa::estimate_q(p, ch, ok);
  CHECK(e[0].finite_variance);
  CHECK(!e[1].finite_variance);
  cfg.total_kept = 99;
  CHECK_THROWS_AS(sa::run_chain(p, cfg), hpm::DomainError);
}
