#include "szegolab/series.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>

namespace szegolab {

bool is_power_of_two(long m) { return m > 0 && (m & (m - 1)) == 0; }

Real magnitude_floor(long bits, const Real& max_mag) {
  Real one(1L, Prec{bits});
  Real scale = max_mag > one ? max_mag : one;
  return ldexp2(scale, -(bits - kGuardBits));
}

namespace {
Real max_mag_of(const std::vector<CNum>& coeffs, long bits) {
  Real m(0L, Prec{bits});
  for (const CNum& c : coeffs) {
    Real a = mag(c);
    if (a > m) m = a;
  }
  return m;
}
}  // namespace

PowerSeries make_power_series(std::vector<CNum> coeffs, long bits) {
  PowerSeries s;
  s.bits = bits;
  s.floor = magnitude_floor(bits, max_mag_of(coeffs, bits));
  s.coeffs = std::move(coeffs);
  return s;
}

LaurentSlice make_laurent_slice(std::vector<CNum> coeffs, long n_min, long bits) {
  LaurentSlice s;
  s.bits = bits;
  s.n_min = n_min;
  s.floor = magnitude_floor(bits, max_mag_of(coeffs, bits));
  s.alias_bound = Real(0L, Prec{bits});
  s.coeffs = std::move(coeffs);
  return s;
}

PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b) {
  long bits = a.bits > b.bits ? a.bits : b.bits;
  std::size_t n = a.coeffs.size() < b.coeffs.size() ? a.coeffs.size() : b.coeffs.size();
  std::vector<CNum> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    CNum acc(0, Prec{bits});
    for (std::size_t i = 0; i <= k; ++i) acc += a.coeffs[i] * b.coeffs[k - i];
    out.push_back(acc);
  }
  // Floor: inputs' floors amplified by the partner's coefficient mass.
  Real sum_a(0L, Prec{bits}), sum_b(0L, Prec{bits});
  for (std::size_t i = 0; i < n; ++i) sum_a += mag(a.coeffs[i]);
  for (std::size_t i = 0; i < n; ++i) sum_b += mag(b.coeffs[i]);
  Real one(1L, Prec{bits});
  if (sum_a < one) sum_a = one;
  if (sum_b < one) sum_b = one;
  PowerSeries s = make_power_series(std::move(out), bits);
  Real propagated = max(a.floor * sum_b, b.floor * sum_a);
  if (propagated > s.floor) s.floor = propagated;
  return s;
}

PowerSeries series_recip(const PowerSeries& a) {
  if (a.coeffs.empty() || !(mag(a.coeffs[0]) > a.floor)) {
    fail(ErrorCode::ZeroConstantTerm,
         "series_recip needs |constant term| above the floor " + a.floor.to_string());
  }
  long bits = a.bits;
  std::size_t n = a.coeffs.size();
  std::vector<CNum> out;
  out.reserve(n);
  CNum inv0 = recip(a.coeffs[0]);
  out.push_back(inv0);
  for (std::size_t k = 1; k < n; ++k) {
    CNum acc(0, Prec{bits});
    for (std::size_t i = 1; i <= k; ++i) acc += a.coeffs[i] * out[k - i];
    out.push_back(-(acc * inv0));
  }
  return make_power_series(std::move(out), bits);
}

CNum eval_series(const PowerSeries& s, const CNum& z) {
  long bits = s.bits;
  CNum acc(0, Prec{bits});
  CNum zp(1, Prec{bits});
  Real cut = ldexp2(s.floor, -8);
  int quiet = 0;
  for (const CNum& c : s.coeffs) {
    CNum term = c * zp;
    acc += term;
    zp *= z;
    if (mag(term) < cut) {
      if (++quiet >= 8) break;
    } else {
      quiet = 0;
    }
  }
  return acc;
}

std::vector<CNum> circle_samples(const std::function<CNum(const CNum&)>& f, const Real& rho,
                                 long M, long bits) {
  if (!(rho > Real(0L, Prec{bits}))) fail(ErrorCode::BadInput, "circle radius must be positive");
  if (!is_power_of_two(M)) fail(ErrorCode::BadInput, "sample count must be a power of two");
  Real two_pi = Real(2L, Prec{bits}) * Real::pi(Prec{bits});
  std::vector<CNum> out;
  out.reserve(static_cast<std::size_t>(M));
  for (long k = 0; k < M; ++k) {
    Real theta = two_pi * Real(k, Prec{bits}) / Real(M, Prec{bits});
    CNum z = unit(theta) * rho;
    CNum v;
    try {
      v = f(z);
    } catch (const SzegoLabError& e) {
      fail(e.code(), "sample k=" + std::to_string(k) + " failed: " + e.message());
    }
    if (!v.is_finite()) {
      fail(ErrorCode::BadInput, "non-finite sample at k=" + std::to_string(k));
    }
    out.push_back(v);
  }
  return out;
}

void fft_pow2(std::vector<CNum>& x, long bits) {
  const std::size_t m = x.size();
  if (!is_power_of_two(static_cast<long>(m))) fail(ErrorCode::BadInput, "fft size must be a power of two");
  if (m == 1) return;
  // Bit reversal.
  for (std::size_t i = 1, j = 0; i < m; ++i) {
    std::size_t bit = m >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  // Twiddles e^{-2pi i k/m}, k = 0..m/2-1, cached per (size, precision):
  // transform sizes repeat heavily across quadrature refinement ladders, and
  // the trig calls dominate the setup cost.  Between the periodic exact
  // anchors the running product drifts by at most ~2^{6-bits}, far below the
  // butterfly rounding itself.
  static thread_local std::map<std::pair<long, long>, std::shared_ptr<const std::vector<CNum>>>
      tw_cache;
  std::shared_ptr<const std::vector<CNum>> tw_ptr;
  auto it = tw_cache.find({static_cast<long>(m), bits});
  if (it != tw_cache.end()) {
    tw_ptr = it->second;
  } else {
    Real two_pi = Real(2L, Prec{bits}) * Real::pi(Prec{bits});
    auto fresh = std::make_shared<std::vector<CNum>>();
    fresh->reserve(m / 2);
    CNum step = unit(-two_pi / Real(static_cast<long>(m), Prec{bits}));
    CNum cur(1, Prec{bits});
    for (std::size_t k = 0; k < m / 2; ++k) {
      if (k % 64 == 0) {
        Real theta = -two_pi * Real(static_cast<long>(k), Prec{bits}) /
                     Real(static_cast<long>(m), Prec{bits});
        cur = unit(theta);
      }
      fresh->push_back(cur);
      cur = cur * step;
    }
    tw_ptr = fresh;
    tw_cache[{static_cast<long>(m), bits}] = tw_ptr;
  }
  const std::vector<CNum>& tw = *tw_ptr;
  for (std::size_t len = 2; len <= m; len <<= 1) {
    std::size_t stride = m / len;
    for (std::size_t i = 0; i < m; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        CNum u = x[i + k];
        CNum v = x[i + k + len / 2] * tw[k * stride];
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
      }
    }
  }
}

LaurentSlice laurent_from_samples(const std::vector<CNum>& samples, const Real& rho, long bits) {
  const long m = static_cast<long>(samples.size());
  if (!is_power_of_two(m) || m < 8) fail(ErrorCode::BadInput, "need a power-of-two sample count >= 8");
  std::vector<CNum> f = samples;
  fft_pow2(f, bits);
  const long half = m / 2;
  const long n_min = -(half - 1);
  const long n_max = half - 1;
  std::vector<CNum> coeffs;
  coeffs.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  Real inv_m = Real(1L, Prec{bits}) / Real(m, Prec{bits});
  // rho^{-n} by running multiplication from n_min upward.
  Real rp = pow_si(rho, -n_min);  // rho^{-n_min}
  Real inv_rho = Real(1L, Prec{bits}) / rho;
  for (long n = n_min; n <= n_max; ++n) {
    long idx = n >= 0 ? n : n + m;
    coeffs.push_back(f[static_cast<std::size_t>(idx)] * (inv_m * rp));
    rp = rp * inv_rho;
  }
  LaurentSlice s = make_laurent_slice(std::move(coeffs), n_min, bits);
  // Wrap-around (aliasing) error scale: magnitude at the extraction edges.
  Real edge(0L, Prec{bits});
  for (long n : {n_max - 1, n_max, n_min, n_min + 1}) {
    Real a = mag(s.at(n));
    if (a > edge) edge = a;
  }
  s.alias_bound = edge;
  return s;
}

RateEstimate fit_decay_rate(const std::vector<Real>& mags, long lo, long hi, const Real& floor) {
  if (lo < 0 || hi >= static_cast<long>(mags.size()) || hi - lo + 1 < 8) {
    fail(ErrorCode::WindowTooShort, "rate-fit window [" + std::to_string(lo) + "," +
                                        std::to_string(hi) + "] needs length >= 8 inside data");
  }
  long bits = mags.empty() ? Real::default_bits() : mags[0].bits();
  for (long n = lo; n <= hi; ++n) {
    if (!(mags[static_cast<std::size_t>(n)] > floor)) {
      fail(ErrorCode::WindowBelowFloor,
           "magnitude at n=" + std::to_string(n) + " is not above the floor");
    }
  }
  const long len = hi - lo + 1;
  Real sx(0L, Prec{bits}), sy(0L, Prec{bits}), sxx(0L, Prec{bits}), sxy(0L, Prec{bits});
  for (long n = lo; n <= hi; ++n) {
    Real x(n, Prec{bits});
    Real y = log(mags[static_cast<std::size_t>(n)]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  Real len_r(len, Prec{bits});
  Real denom = len_r * sxx - sx * sx;
  Real slope = (len_r * sxy - sx * sy) / denom;
  Real intercept = (sy - slope * sx) / len_r;
  Real ss(0L, Prec{bits});
  for (long n = lo; n <= hi; ++n) {
    Real x(n, Prec{bits});
    Real resid = log(mags[static_cast<std::size_t>(n)]) - (slope * x + intercept);
    ss += resid * resid;
  }
  RateEstimate est;
  est.rate = exp(slope);
  if (len > 2) {
    Real se_slope = sqrt(ss / (Real(len - 2, Prec{bits}) * (sxx - sx * sx / len_r)));
    est.stderr_ = est.rate * se_slope;
  } else {
    est.stderr_ = Real(0L, Prec{bits});
  }
  return est;
}

std::pair<long, long> auto_rate_window(const std::vector<Real>& mags, const Real& floor) {
  Real cut = floor * Real(10L, Prec{floor.bits()});
  long best_lo = -1, best_hi = -1;
  long run_lo = -1;
  const long n = static_cast<long>(mags.size());
  for (long i = 5; i <= n; ++i) {
    bool above = i < n && mags[static_cast<std::size_t>(i)] > cut;
    if (above) {
      if (run_lo < 0) run_lo = i;
    } else if (run_lo >= 0) {
      if (i - 1 - run_lo > best_hi - best_lo) {
        best_lo = run_lo;
        best_hi = i - 1;
      }
      run_lo = -1;
    }
  }
  if (best_lo < 0 || best_hi - best_lo + 1 < 8) return {-1, -1};
  return {best_lo, best_hi};
}

}  // namespace szegolab
