#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "szegolab/cnum.hpp"
#include "szegolab/errors.hpp"

namespace szegolab {

// Magnitudes below `floor` are numerical zero.  floor is set at construction
// to 2^-(bits-32) * max(1, largest coefficient magnitude): 32 guard bits
// absorb accumulation error.
inline constexpr long kGuardBits = 32;

Real magnitude_floor(long bits, const Real& max_mag);

// Taylor coefficients c[0..N] of an analytic germ at 0.
struct PowerSeries {
  std::vector<CNum> coeffs;
  long bits = 256;
  Real floor;

  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
  const CNum& operator[](std::size_t n) const { return coeffs[n]; }
};

// Laurent coefficients c[n], n = n_min..n_max, of a function on an annulus.
// alias_bound records the wrap-around error scale of the extraction that
// produced the slice (edge-coefficient magnitude); 0 when exact.
struct LaurentSlice {
  std::vector<CNum> coeffs;
  long n_min = 0;
  long bits = 256;
  Real floor;
  Real alias_bound;

  long n_max() const { return n_min + static_cast<long>(coeffs.size()) - 1; }
  const CNum& at(long n) const { return coeffs[static_cast<std::size_t>(n - n_min)]; }
  bool has(long n) const { return n >= n_min && n <= n_max(); }
};

struct RateEstimate {
  Real rate;    // estimate of limsup |c_n|^{1/n}
  Real stderr_;  // standard error, propagated to the rate scale
};

PowerSeries make_power_series(std::vector<CNum> coeffs, long bits);
LaurentSlice make_laurent_slice(std::vector<CNum> coeffs, long n_min, long bits);

// Cauchy product truncated to the shorter degree.
PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b);

// b with a*b = 1 up to floor at every retained degree.
// Throws ZeroConstantTerm when |a[0]| is at or below floor.
PowerSeries series_recip(const PowerSeries& a);

// Forward evaluation sum_{n} c_n z^n with early termination once terms sink
// well below the series floor (deterministic: depends only on coefficients).
CNum eval_series(const PowerSeries& s, const CNum& z);

// f(rho * e^{2pi i k/M}) for k = 0..M-1.  M must be a power of two.
std::vector<CNum> circle_samples(const std::function<CNum(const CNum&)>& f, const Real& rho,
                                 long M, long bits);

// In-place radix-2 FFT, forward sign convention F[n] = sum_k x[k] e^{-2pi i kn/M}.
void fft_pow2(std::vector<CNum>& x, long bits);

// b_n = (1/M) sum_k samples[k] rho^{-n} e^{-2pi i kn/M} for |n| <= M/2 - 1.
LaurentSlice laurent_from_samples(const std::vector<CNum>& samples, const Real& rho, long bits);

// Least-squares slope of log mags[n] vs n over window [lo, hi], exponentiated.
// Window must have length >= 8 (WindowTooShort) and all entries strictly above
// `floor` (WindowBelowFloor).
RateEstimate fit_decay_rate(const std::vector<Real>& mags, long lo, long hi, const Real& floor);

// Longest run of entries > 10*floor starting at index >= 5; {-1,-1} if none of
// usable length.
std::pair<long, long> auto_rate_window(const std::vector<Real>& mags, const Real& floor);

bool is_power_of_two(long m);

}  // namespace szegolab
