#include <cmath>
#include <limits>
#include <optional>

#include "hpm/double_double.hpp"
#include "hpm/errors.hpp"
#include "hpm/specfun.hpp"

namespace hpm::specfun {

namespace {

constexpr double kCancellationLimit = 1e8;

std::optional<int> terminating_degree(std::span<const cplx> upper) {
  std::optional<int> n;
  for (cplx a : upper) {
    if (is_nonpositive_integer(a)) {
      int m = static_cast<int>(-a.real());
      if (!n || m < *n) n = m;
    }
  }
  return n;
}

// Neumaier-compensated complex accumulator.
struct CompensatedSum {
  cplx sum = 0.0;
  cplx comp = 0.0;

  static void add_part(double& s, double& c, double x) {
    double t = s + x;
    if (std::fabs(s) >= std::fabs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  void add(cplx x) {
    double sr = sum.real(), si = sum.imag();
    double cr = comp.real(), ci = comp.imag();
    add_part(sr, cr, x.real());
    add_part(si, ci, x.imag());
    sum = {sr, si};
    comp = {cr, ci};
  }
  cplx value() const { return sum + comp; }
};

cplx sum_extended(std::span<const cplx> upper, std::span<const cplx> lower, cplx z, int n) {
  cdd term = 1.0;
  cdd total = 1.0;
  cdd zz(z);
  for (int j = 0; j < n; ++j) {
    cdd num = 1.0;
    for (cplx a : upper) num *= cdd(a) + cdd(static_cast<double>(j));
    cdd den = static_cast<double>(j + 1);
    for (cplx b : lower) den *= cdd(b) + cdd(static_cast<double>(j));
    term = term * num * zz / den;
    total += term;
  }
  return total.to_complex();
}

}  // namespace

SeriesResult hyp_pfq_terminating(std::span<const cplx> upper, std::span<const cplx> lower, cplx z) {
  auto degree = terminating_degree(upper);
  if (!degree) throw DomainError("hyp_pfq_terminating: no non-positive integer upper parameter");
  const int n = *degree;
  for (cplx b : lower) {
    if (is_nonpositive_integer(b) && static_cast<int>(-b.real()) < n)
      throw DomainError("hyp_pfq_terminating: lower parameter pole before termination");
  }

  CompensatedSum acc;
  acc.add(1.0);
  cplx term = 1.0;
  double largest = 1.0;
  for (int j = 0; j < n; ++j) {
    cplx ratio = z / static_cast<double>(j + 1);
    for (cplx a : upper) ratio *= a + static_cast<double>(j);
    for (cplx b : lower) ratio /= b + static_cast<double>(j);
    term *= ratio;
    acc.add(term);
    largest = std::max(largest, std::abs(acc.value()));
    largest = std::max(largest, std::abs(term));
  }

  SeriesResult r;
  r.value = acc.value();
  r.terms = n + 1;
  double mag = std::abs(r.value);
  r.cancellation = mag > 0.0 ? largest / mag : std::numeric_limits<double>::infinity();
  if (r.cancellation > kCancellationLimit) {
    r.value = sum_extended(upper, lower, z, n);
    r.extended_precision = true;
  }
  return r;
}

}  // namespace hpm::specfun
