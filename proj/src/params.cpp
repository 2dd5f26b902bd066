#include "hpm/params.hpp"

#include <cmath>
#include <numbers>

#include "hpm/errors.hpp"
#include "hpm/specfun.hpp"

namespace hpm {

EnsembleParams::EnsembleParams(cplx s, int n) : s_(s), n_(n) {
  if (!(s.real() > -0.5) || !std::isfinite(s.imag()))
    throw DomainError("EnsembleParams: need Re s > -1/2");
  if (n < 1) throw DomainError("EnsembleParams: need N >= 1");
}

double EnsembleParams::log_gamma_sq() const {
  const double a = s_.real();
  const double n = n_;
  return 2.0 * a * std::log(2.0) - std::log(std::numbers::pi) + std::lgamma(2.0 * a + n + 1.0) +
         2.0 * specfun::log_gamma(s_ + 1.0).real() - std::lgamma(n) - std::lgamma(2.0 * a + 1.0) -
         std::lgamma(2.0 * a + 2.0);
}

double EnsembleParams::gamma_sq() const { return std::exp(log_gamma_sq()); }

}  // namespace hpm
