#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

namespace szegolab {

// Working precision in bits.  Threaded through every construction; a
// thread-local default covers literals created inside expressions.
struct Prec {
  long bits = 256;
};

// Arbitrary-precision real number (RAII wrapper over mpfr_t).  All operations
// round to nearest; results of binary operations carry the larger of the two
// operand precisions, so mixed-precision expressions never silently truncate.
class Real {
 public:
  Real();
  explicit Real(Prec p);
  Real(long v);  // NOLINT(google-explicit-constructor) — numeric ergonomics
  Real(int v) : Real(static_cast<long>(v)) {}
  Real(double v);  // NOLINT(google-explicit-constructor)
  Real(long v, Prec p);
  Real(double v, Prec p);
  Real(const std::string& decimal, Prec p);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  static void set_default_bits(long bits);
  static long default_bits();

  long bits() const { return mpfr_get_prec(v_); }

  // Arithmetic.
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  // Comparisons (total order on finite values; NaN compares false).
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  // Shortest decimal string that re-reads (at the same precision) to exactly
  // this value; "0", "inf", "-inf", "nan" for specials.
  std::string to_string() const;
  static Real from_string(const std::string& s, Prec p);

  // Named operations.
  friend Real abs(const Real& a);
  friend Real sqrt(const Real& a);
  friend Real log(const Real& a);
  friend Real exp(const Real& a);
  friend Real cos(const Real& a);
  friend Real sin(const Real& a);
  friend Real atan2(const Real& y, const Real& x);
  friend Real hypot(const Real& x, const Real& y);
  friend Real pow_si(const Real& a, long e);
  friend Real ldexp2(const Real& a, long e);  // a * 2^e
  friend Real min(const Real& a, const Real& b);
  friend Real max(const Real& a, const Real& b);
  friend void sin_cos(Real& s, Real& c, const Real& angle);

  static Real pi(Prec p);
  static Real pos_inf(Prec p);

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

inline Real operator+(const Real& a, long b) { return a + Real(b, Prec{a.bits()}); }
inline Real operator-(const Real& a, long b) { return a - Real(b, Prec{a.bits()}); }
inline Real operator*(const Real& a, long b) { return a * Real(b, Prec{a.bits()}); }
inline Real operator/(const Real& a, long b) { return a / Real(b, Prec{a.bits()}); }
inline Real operator+(long a, const Real& b) { return Real(a, Prec{b.bits()}) + b; }
inline Real operator-(long a, const Real& b) { return Real(a, Prec{b.bits()}) - b; }
inline Real operator*(long a, const Real& b) { return Real(a, Prec{b.bits()}) * b; }
inline Real operator/(long a, const Real& b) { return Real(a, Prec{b.bits()}) / b; }

}  // namespace szegolab
