#pragma once

// Unevaluated sum hi + lo of two doubles, about 32 significant digits.
// Only the operations the library needs: + - * / and comparisons of
// magnitude. Relies on std::fma being correctly rounded.

#include <cmath>
#include <complex>

namespace hpm {

struct dd {
  double hi = 0.0;
  double lo = 0.0;

  constexpr dd() = default;
  constexpr dd(double h) : hi(h), lo(0.0) {}  // NOLINT: implicit on purpose
  constexpr dd(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const { return hi + lo; }
};

namespace dd_detail {

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline dd operator-(const dd& a) { return {-a.hi, -a.lo}; }

inline dd operator+(const dd& a, const dd& b) {
  dd s = dd_detail::two_sum(a.hi, b.hi);
  dd t = dd_detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = dd_detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline dd operator-(const dd& a, const dd& b) { return a + (-b); }

inline dd operator*(const dd& a, const dd& b) {
  dd p = dd_detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline dd operator/(const dd& a, const dd& b) {
  double q1 = a.hi / b.hi;
  dd r = a - b * dd(q1);
  double q2 = r.hi / b.hi;
  r = r - b * dd(q2);
  double q3 = r.hi / b.hi;
  dd q = dd_detail::quick_two_sum(q1, q2);
  return q + dd(q3);
}

inline dd& operator+=(dd& a, const dd& b) { return a = a + b; }
inline dd& operator-=(dd& a, const dd& b) { return a = a - b; }
inline dd& operator*=(dd& a, const dd& b) { return a = a * b; }
inline dd& operator/=(dd& a, const dd& b) { return a = a / b; }

inline double abs(const dd& a) { return std::fabs(a.hi + a.lo); }

// Complex number with double-double parts.
struct cdd {
  dd re;
  dd im;

  constexpr cdd() = default;
  constexpr cdd(dd r) : re(r), im(0.0) {}  // NOLINT
  constexpr cdd(double r) : re(r), im(0.0) {}  // NOLINT
  constexpr cdd(dd r, dd i) : re(r), im(i) {}
  explicit cdd(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

inline cdd operator-(const cdd& a) { return {-a.re, -a.im}; }
inline cdd operator+(const cdd& a, const cdd& b) { return {a.re + b.re, a.im + b.im}; }
inline cdd operator-(const cdd& a, const cdd& b) { return {a.re - b.re, a.im - b.im}; }
inline cdd operator*(const cdd& a, const cdd& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline cdd operator*(const cdd& a, const dd& b) { return {a.re * b, a.im * b}; }
inline cdd operator/(const cdd& a, const cdd& b) {
  dd den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
inline cdd operator/(const cdd& a, const dd& b) { return {a.re / b, a.im / b}; }

inline cdd& operator+=(cdd& a, const cdd& b) { return a = a + b; }
inline cdd& operator-=(cdd& a, const cdd& b) { return a = a - b; }
inline cdd& operator*=(cdd& a, const cdd& b) { return a = a * b; }
inline cdd& operator/=(cdd& a, const cdd& b) { return a = a / b; }

inline double abs(const cdd& a) {
  return std::hypot(static_cast<double>(a.re), static_cast<double>(a.im));
}

// Multiply by i^q exactly (q taken mod 4).
inline std::complex<double> times_i_power(std::complex<double> z, int q) {
  switch (((q % 4) + 4) % 4) {
    case 1: return {-z.imag(), z.real()};
    case 2: return -z;
    case 3: return {z.imag(), -z.real()};
    default: return z;
  }
}

}  // namespace hpm
