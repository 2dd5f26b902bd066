#include <array>
#include <cmath>

#include "hpm/double_double.hpp"
#include "hpm/errors.hpp"
#include "hpm/specfun.hpp"

namespace hpm::specfun {

namespace {

// Coefficients of the normalised recurrence
//   y F_n = A_n F_{n+1} - (A_n + C_n) F_n + C_n F_{n-1},
// F_n = 3F2(-n, n+a+b+c+d-1, y; a+c, a+d; 1).
struct HahnStep {
  cplx a_n;
  cplx c_n;
};

HahnStep hahn_step(const HahnParams& p, int n) {
  const cplx sigma = p.a + p.b + p.c + p.d;
  const double m = n;
  cplx an = -(m + sigma - 1.0) * (m + p.a + p.c) * (m + p.a + p.d) /
            ((2.0 * m + sigma - 1.0) * (2.0 * m + sigma));
  cplx cn = 0.0;
  if (n > 0)
    cn = m * (m + p.b + p.c - 1.0) * (m + p.b + p.d - 1.0) /
         ((2.0 * m + sigma - 2.0) * (2.0 * m + sigma - 1.0));
  return {an, cn};
}

bool recurrence_usable(const HahnParams& p) {
  for (int m = 0; m < p.n; ++m) {
    HahnStep st = hahn_step(p, m);
    if (!std::isfinite(std::abs(st.a_n)) || !std::isfinite(std::abs(st.c_n)) || st.a_n == 0.0)
      return false;
  }
  return true;
}

cplx hahn_series(const HahnParams& p, cplx y) {
  const cplx sigma = p.a + p.b + p.c + p.d;
  std::array<cplx, 3> upper{cplx(-p.n), static_cast<double>(p.n) + sigma - 1.0, y};
  std::array<cplx, 2> lower{p.a + p.c, p.a + p.d};
  return hyp_pfq_terminating(upper, lower, 1.0).value;
}

}  // namespace

HahnValue hahn_3f2(const HahnParams& p, cplx y) {
  if (p.n < 0) throw DomainError("hahn_3f2: negative degree");
  if (!recurrence_usable(p)) throw DomainError("hahn_3f2: degenerate recurrence coefficients");
  cplx f_prev = 0.0, f = 1.0;
  cplx d_prev = 0.0, d = 0.0;
  for (int m = 0; m < p.n; ++m) {
    HahnStep st = hahn_step(p, m);
    cplx diag = y + st.a_n + st.c_n;
    cplx f_next = (diag * f - st.c_n * f_prev) / st.a_n;
    cplx d_next = (f + diag * d - st.c_n * d_prev) / st.a_n;
    f_prev = f;
    f = f_next;
    d_prev = d;
    d = d_next;
  }
  return {f, d};
}

cplx continuous_hahn(const HahnParams& p, cplx x, HahnMethod method) {
  if (p.n < 0) throw DomainError("continuous_hahn: negative degree");
  const cplx y = p.a + cplx(0.0, 1.0) * x;
  cplx normalised;
  if (method == HahnMethod::recurrence && recurrence_usable(p))
    normalised = hahn_3f2(p, y).value;
  else
    normalised = hahn_series(p, y);
  cplx lead = pochhammer(p.a + p.c, p.n) * pochhammer(p.a + p.d, p.n) /
              std::exp(std::lgamma(static_cast<double>(p.n) + 1.0));
  return times_i_power(lead * normalised, p.n);
}

}  // namespace hpm::specfun
