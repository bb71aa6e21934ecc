#pragma once

#include <string>
#include <utility>

#include "szegolab/real.hpp"

namespace szegolab {

// Complex number over Real.  Plain Cartesian arithmetic; transcendental
// operations go through polar form.
struct CNum {
  Real re, im;

  CNum() = default;
  explicit CNum(Prec p) : re(p), im(p) {}
  CNum(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit CNum(Real r) : re(std::move(r)), im(0L, Prec{re.bits()}) {}
  CNum(long r, Prec p) : re(r, p), im(0L, p) {}

  long bits() const { return re.bits() > im.bits() ? re.bits() : im.bits(); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  CNum operator-() const { return CNum(-re, -im); }

  friend CNum operator+(const CNum& a, const CNum& b) { return CNum(a.re + b.re, a.im + b.im); }
  friend CNum operator-(const CNum& a, const CNum& b) { return CNum(a.re - b.re, a.im - b.im); }
  friend CNum operator*(const CNum& a, const CNum& b) {
    return CNum(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend CNum operator*(const CNum& a, const Real& b) { return CNum(a.re * b, a.im * b); }
  friend CNum operator*(const Real& a, const CNum& b) { return b * a; }
  friend CNum operator/(const CNum& a, const CNum& b) {
    Real d = b.re * b.re + b.im * b.im;
    return CNum((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
  }
  friend CNum operator/(const CNum& a, const Real& b) { return CNum(a.re / b, a.im / b); }

  CNum& operator+=(const CNum& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CNum& operator-=(const CNum& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  CNum& operator*=(const CNum& o) { return *this = *this * o; }

  friend bool operator==(const CNum& a, const CNum& b) { return a.re == b.re && a.im == b.im; }

  std::string to_string() const {
    std::string s = re.to_string();
    std::string i = im.to_string();
    if (!i.empty() && i[0] != '-') s += "+";
    return s + i + "i";
  }
};

inline CNum conj(const CNum& a) { return CNum(a.re, -a.im); }
inline Real mag(const CNum& a) { return hypot(a.re, a.im); }
inline Real norm2(const CNum& a) { return a.re * a.re + a.im * a.im; }
inline Real arg(const CNum& a) { return atan2(a.im, a.re); }

inline CNum recip(const CNum& a) {
  Real d = norm2(a);
  return CNum(a.re / d, -a.im / d);
}

// e^{i*theta}
inline CNum unit(const Real& theta) {
  Real s(Prec{theta.bits()}), c(Prec{theta.bits()});
  sin_cos(s, c, theta);
  return CNum(c, s);
}

inline CNum exp(const CNum& a) {
  Real m = exp(a.re);
  CNum u = unit(a.im);
  return CNum(m * u.re, m * u.im);
}

inline CNum log(const CNum& a) { return CNum(log(mag(a)), arg(a)); }

inline CNum sqrt(const CNum& a) {
  Real m = sqrt(mag(a));
  Real half_arg = arg(a) / 2L;
  CNum u = unit(half_arg);
  return CNum(m * u.re, m * u.im);
}

inline CNum pow_int(const CNum& a, long e) {
  if (e == 0) return CNum(1, Prec{a.bits()});
  bool inv = e < 0;
  unsigned long k = inv ? static_cast<unsigned long>(-(e + 1)) + 1UL : static_cast<unsigned long>(e);
  CNum base = a;
  CNum acc(1, Prec{a.bits()});
  while (k != 0) {
    if (k & 1UL) acc *= base;
    base *= base;
    k >>= 1;
  }
  return inv ? recip(acc) : acc;
}

}  // namespace szegolab
