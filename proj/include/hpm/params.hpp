#pragma once

#include <complex>

namespace hpm {

using cplx = std::complex<double>;

// Parameters (s, N) of the ensemble with weight
// (1+x^2)^{-Re s-N} exp(2 Im s atan x) on R, N eigenvalues.
class EnsembleParams {
 public:
  // Throws DomainError unless Re s > -1/2 and N >= 1.
  EnsembleParams(cplx s, int n);

  cplx s() const { return s_; }
  int n() const { return n_; }
  double re_s() const { return s_.real(); }
  double im_s() const { return s_.imag(); }
  bool is_real() const { return s_.imag() == 0.0; }

  // Parameters of the diffusion generator L f = (1+x^2) f'' + (alpha + 2 beta x) f'.
  double alpha() const { return 2.0 * s_.imag(); }
  double beta() const { return 1.0 - s_.real() - n_; }

  EnsembleParams conjugate() const { return EnsembleParams(std::conj(s_), n_); }

  // log of the normalisation gamma_{N-1,s}^2 = 1/||p_{N-1}||^2.
  double log_gamma_sq() const;
  double gamma_sq() const;

 private:
  cplx s_;
  int n_;
};

}  // namespace hpm
