#include "szegolab/real.hpp"

#include "szegolab/errors.hpp"

#include <cstring>
#include <stdexcept>

namespace szegolab {

namespace {
thread_local long g_default_bits = 256;
}  // namespace

void Real::set_default_bits(long bits) { g_default_bits = bits < 64 ? 64 : bits; }
long Real::default_bits() { return g_default_bits; }

Real::Real() {
  mpfr_init2(v_, g_default_bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(Prec p) {
  mpfr_init2(v_, p.bits < 64 ? 64 : p.bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(long v) {
  mpfr_init2(v_, g_default_bits);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(double v) {
  mpfr_init2(v_, g_default_bits);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(long v, Prec p) {
  mpfr_init2(v_, p.bits < 64 ? 64 : p.bits);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(double v, Prec p) {
  mpfr_init2(v_, p.bits < 64 ? 64 : p.bits);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const std::string& decimal, Prec p) {
  mpfr_init2(v_, p.bits < 64 ? 64 : p.bits);
  if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    fail(ErrorCode::BadInput, "unparseable decimal literal: " + decimal);
  }
}

Real::Real(const Real& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, 64);
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

namespace {
inline long join_prec(const Real& a, const Real& b) {
  long pa = a.bits(), pb = b.bits();
  return pa > pb ? pa : pb;
}
}  // namespace

Real operator+(const Real& a, const Real& b) {
  Real r(Prec{join_prec(a, b)});
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(Prec{join_prec(a, b)});
  mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(Prec{join_prec(a, b)});
  mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(Prec{join_prec(a, b)});
  mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real Real::operator-() const {
  Real r(Prec{bits()});
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Real& Real::operator+=(const Real& o) {
  if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

std::string Real::to_string() const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return mpfr_signbit(v_) ? "-0" : "0";
  mpfr_exp_t e = 0;
  char* s = mpfr_get_str(nullptr, &e, 10, 0, v_, MPFR_RNDN);
  std::string digits(s);
  mpfr_free_str(s);
  std::string sign;
  if (!digits.empty() && digits[0] == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  // Value is 0.digits * 10^e; normalize to d.igits e(e-1).
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string out = sign + digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  long exp10 = static_cast<long>(e) - 1;
  if (exp10 != 0) out += "e" + std::to_string(exp10);
  return out;
}

Real Real::from_string(const std::string& s, Prec p) {
  Real r(Prec{p.bits});
  if (s == "inf" || s == "+inf") {
    mpfr_set_inf(r.v_, 1);
    return r;
  }
  if (s == "-inf") {
    mpfr_set_inf(r.v_, -1);
    return r;
  }
  if (s == "nan") {
    mpfr_set_nan(r.v_);
    return r;
  }
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    fail(ErrorCode::BadInput, "unparseable decimal literal: " + s);
  }
  return r;
}

Real abs(const Real& a) {
  Real r(Prec{a.bits()});
  mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& a) {
  Real r(Prec{a.bits()});
  mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real log(const Real& a) {
  Real r(Prec{a.bits()});
  mpfr_log(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real exp(const Real& a) {
  Real r(Prec{a.bits()});
  mpfr_exp(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real cos(const Real& a) {
  Real r(Prec{a.bits()});
  mpfr_cos(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real sin(const Real& a) {
  Real r(Prec{a.bits()});
  mpfr_sin(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r(Prec{join_prec(y, x)});
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r(Prec{join_prec(x, y)});
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real pow_si(const Real& a, long e) {
  Real r(Prec{a.bits()});
  mpfr_pow_si(r.raw(), a.raw(), e, MPFR_RNDN);
  return r;
}

Real ldexp2(const Real& a, long e) {
  Real r(Prec{a.bits()});
  mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN);
  return r;
}

Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

void sin_cos(Real& s, Real& c, const Real& angle) {
  if (s.bits() < angle.bits()) s = Real(Prec{angle.bits()});
  if (c.bits() < angle.bits()) c = Real(Prec{angle.bits()});
  mpfr_sin_cos(s.raw(), c.raw(), angle.raw(), MPFR_RNDN);
}

Real Real::pi(Prec p) {
  Real r(Prec{p.bits});
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::pos_inf(Prec p) {
  Real r(Prec{p.bits});
  mpfr_set_inf(r.v_, 1);
  return r;
}

}  // namespace szegolab
