#include "szegolab/szego.hpp"

#include <string>

namespace szegolab {

Weight weight_constant(long bits) {
  Weight w;
  w.fn = [bits](const Real&) { return Real(1L, Prec{bits}); };
  return w;
}

Weight weight_single_moment(const Real& a, long bits) {
  Weight w;
  Real av = a;
  w.fn = [av, bits](const Real& theta) { return Real(1L, Prec{bits}) - av * cos(theta); };
  return w;
}

Weight weight_rogers_szego(const Real& q, long bits) {
  // w = D0^2 * prod_{j>=0} |1 + q^{j+1/2} e^{i theta}|^2, D0^2 = prod_{j>=1} (1 - q^j).
  Real one(1L, Prec{bits});
  Real d0sq = one;
  Real cut = ldexp2(one, -(bits + 16));
  Real p = q;
  while (p > cut) {
    d0sq *= one - p;
    p = p * q;
  }
  std::vector<Real> cs;  // q^{j+1/2}
  Real c = sqrt(q);
  while (c > cut) {
    cs.push_back(c);
    c = c * q;
  }
  Weight w;
  w.fn = [d0sq, cs, bits](const Real& theta) {
    Real one_(1L, Prec{bits});
    Real ct = cos(theta);
    Real acc = d0sq;
    for (const Real& cj : cs) acc *= one_ + Real(2L, Prec{bits}) * cj * ct + cj * cj;
    return acc;
  };
  return w;
}

Weight weight_from_sequence(const VerblunskySequence& seq, long N) {
  SzegoData sd = make_szego_data(seq, N);
  const long bits = seq.bits;
  PowerSeries dinv = sd.dinv;
  Real d0sq = sd.D0 * sd.D0;
  Weight w;
  w.fn = [dinv, d0sq, bits](const Real& theta) {
    CNum v = eval_series(dinv, unit(theta));
    return d0sq / norm2(v);
  };
  // Uniform-grid fast path: evaluate the series at all M roots of unity with
  // one FFT.  The transform sums against e^{-2 pi i jk/M}, so feed it the
  // conjugated coefficients; |conj(value)| is the magnitude we need anyway.
  // Coefficients beyond M fold onto j mod M, which is exact on this grid.
  w.grid = [dinv, d0sq, bits](long M) {
    std::vector<CNum> x(static_cast<std::size_t>(M), CNum(0, Prec{bits}));
    for (std::size_t j = 0; j < dinv.coeffs.size(); ++j) {
      x[j % static_cast<std::size_t>(M)] += conj(dinv.coeffs[j]);
    }
    fft_pow2(x, bits);
    std::vector<Real> out;
    out.reserve(static_cast<std::size_t>(M));
    for (long k = 0; k < M; ++k) out.push_back(d0sq / norm2(x[static_cast<std::size_t>(k)]));
    return out;
  };
  return w;
}

CNum eval_D_from_weight(const Weight& w, const CNum& z, long M, long bits) {
  if (!is_power_of_two(M)) fail(ErrorCode::BadInput, "quadrature size must be a power of two");
  Real one(1L, Prec{bits});
  if (!(mag(z) < one)) fail(ErrorCode::BadInput, "outer-function evaluation needs |z| < 1");
  Real two_pi = Real(2L, Prec{bits}) * Real::pi(Prec{bits});
  Real near = ldexp2(one, -bits / 2);
  CNum acc(0, Prec{bits});
  for (long m = 0; m < M; ++m) {
    Real theta = two_pi * Real(m, Prec{bits}) / Real(M, Prec{bits});
    CNum e = unit(theta);
    CNum den = e - z;
    if (mag(den) < near) {
      fail(ErrorCode::PoleOnGrid, "evaluation point collides with quadrature node m=" +
                                      std::to_string(m));
    }
    Real wv = w.fn(theta);
    if (!wv.is_finite() || wv.sign() <= 0) {
      fail(ErrorCode::NonSzegoWeight,
           "weight is not positive at theta index " + std::to_string(m));
    }
    acc += ((e + z) / den) * log(wv);
  }
  Real mean_log = acc.re / Real(M, Prec{bits});
  if (!(mean_log > Real(-1000000L, Prec{bits}))) {
    fail(ErrorCode::NonSzegoWeight, "log-weight integral diverges");
  }
  return exp(acc / Real(2 * M, Prec{bits}));
}

namespace {
// Coefficient recursion for the reversed polynomials truncated at degree N;
// after J steps the truncated reversed polynomial holds e_0..e_N exactly up to
// the convergence tail of the partial-sum identity.
std::vector<CNum> dinv_coeffs(const std::vector<CNum>& al, long N, long J, long bits,
                              Real* tail_out) {
  std::vector<CNum> phi(static_cast<std::size_t>(N) + 1, CNum(0, Prec{bits}));
  std::vector<CNum> phistar(static_cast<std::size_t>(N) + 1, CNum(0, Prec{bits}));
  phi[0] = CNum(1, Prec{bits});
  phistar[0] = CNum(1, Prec{bits});
  std::vector<CNum> prev;
  for (long j = 0; j < J; ++j) {
    const CNum& a = al[static_cast<std::size_t>(j)];
    CNum ca = conj(a);
    if (j == J - 5) prev = phistar;
    // z*phi truncated to degree N, applied from the top down so phi can be
    // updated in place.
    for (std::size_t i = static_cast<std::size_t>(N); i >= 1; --i) {
      CNum zphi = phi[i - 1];
      phi[i] = zphi - ca * phistar[i];
      phistar[i] = phistar[i] - a * zphi;
    }
    phi[0] = -(ca * phistar[0]);
    // phistar[0] is unchanged: z*phi has no constant term.
  }
  if (tail_out != nullptr) {
    Real t(0L, Prec{bits});
    if (!prev.empty()) {
      for (std::size_t i = 0; i <= static_cast<std::size_t>(N); ++i) {
        Real d = mag(phistar[i] - prev[i]);
        if (d > t) t = d;
      }
    }
    *tail_out = t;
  }
  return phistar;
}

// Convergence certificate for the reversed-polynomial recursion: either the
// coefficient magnitudes fit a geometric decay with ratio < 1, or the tail
// already sits below the floor inside the computed range (finitely supported
// or fully decayed sequences: the recursion has stabilized to working
// precision, and the ratio is reported as 0).  Throws otherwise.
Real convergence_ratio(const std::vector<CNum>& al, long bits) {
  std::vector<Real> mags;
  mags.reserve(al.size());
  for (const CNum& a : al) mags.push_back(mag(a));
  Real floor = magnitude_floor(bits, Real(1L, Prec{bits}));
  long last = -1;
  for (std::size_t n = 0; n < mags.size(); ++n) {
    if (mags[n] > floor) last = static_cast<long>(n);
  }
  bool tail_quiet = last + 10 <= static_cast<long>(al.size()) - 1;
  auto [lo, hi] = auto_rate_window(mags, floor);
  if (lo >= 0) {
    RateEstimate est = fit_decay_rate(mags, lo, hi, floor);
    if (est.rate < Real(1L, Prec{bits})) return est.rate;
    if (tail_quiet) return Real(0L, Prec{bits});
    fail(ErrorCode::NoExponentialDecay,
         "coefficient magnitudes do not decay geometrically (fitted ratio " +
             est.rate.to_string() + ")");
  }
  if (tail_quiet) return Real(0L, Prec{bits});
  fail(ErrorCode::NoExponentialDecay,
       "no usable window of coefficient magnitudes above the floor");
}
}  // namespace

PowerSeries S_series(const VerblunskySequence& seq, long N) {
  const long bits = seq.bits;
  std::vector<CNum> coeffs;
  coeffs.reserve(static_cast<std::size_t>(N) + 1);
  coeffs.push_back(CNum(1, Prec{bits}));  // -alpha_{-1}
  std::vector<CNum> al = alphas_upto(seq, N > 0 ? N - 1 : 0);
  for (long n = 1; n <= N; ++n) coeffs.push_back(-al[static_cast<std::size_t>(n - 1)]);
  return make_power_series(std::move(coeffs), bits);
}

PowerSeries dinv_series(const VerblunskySequence& seq, long N) {
  const long bits = seq.bits;
  const long J = N + 40;
  std::vector<CNum> al = alphas_upto(seq, J);
  convergence_ratio(al, bits);
  return make_power_series(dinv_coeffs(al, N, J, bits, nullptr), bits);
}

SzegoData make_szego_data(const VerblunskySequence& seq, long N, long extra) {
  const long bits = seq.bits;
  const long J = N + extra;
  std::vector<CNum> al = alphas_upto(seq, J);
  SzegoData sd;
  sd.bits = bits;
  sd.alpha_ratio = convergence_ratio(al, bits);
  Real tail(0L, Prec{bits});
  sd.dinv = make_power_series(dinv_coeffs(al, N, J, bits, &tail), bits);
  sd.dinv_tail = tail;
  sd.d = series_recip(sd.dinv);
  sd.S = S_series(seq, N);
  // D(0): the quadratic-ladder product; extend until the increment stalls.
  {
    Real one(1L, Prec{bits});
    Real acc = one;
    Real cut = ldexp2(one, -(bits - 8));
    long cap = 8 * bits;
    std::vector<CNum> all = al;
    long j = 0;
    while (j < cap) {
      if (j >= static_cast<long>(all.size())) {
        std::vector<CNum> more = alphas_upto(seq, 2 * static_cast<long>(all.size()));
        all = std::move(more);
      }
      Real f = norm2(all[static_cast<std::size_t>(j)]);
      acc *= one - f;
      ++j;
      if (f < cut && j > 8) break;
    }
    sd.D0 = sqrt(acc);
  }
  // Validated radius of the dinv series from the fitted decay of e_n.
  {
    std::vector<Real> mags;
    mags.reserve(sd.dinv.coeffs.size());
    for (const CNum& c : sd.dinv.coeffs) mags.push_back(mag(c));
    auto [lo, hi] = auto_rate_window(mags, sd.dinv.floor);
    if (lo < 0) {
      // Entire (e.g. all-zero coefficients): radius formally unbounded.
      sd.dinv_radius = Real::pos_inf(Prec{bits});
    } else {
      RateEstimate est = fit_decay_rate(mags, lo, hi, sd.dinv.floor);
      sd.dinv_radius = Real(1L, Prec{bits}) / est.rate;
    }
  }
  return sd;
}

CNum eval_dinv(const SzegoData& sd, const CNum& z) { return eval_series(sd.dinv, z); }
CNum eval_S(const SzegoData& sd, const CNum& z) { return eval_series(sd.S, z); }

CNum eval_r(const SzegoData& sd, const CNum& z, double margin) {
  const long bits = sd.bits;
  Real one(1L, Prec{bits});
  Real az = mag(z);
  Real limit = sd.dinv_radius * (Real(1L, Prec{bits}) - Real(margin, Prec{bits}));
  if (!(az > one) || !(az < limit)) {
    fail(ErrorCode::OutsideValidatedAnnulus,
         "|z| = " + az.to_string() + " outside validated annulus (1, " + limit.to_string() + ")");
  }
  CNum zeta = recip(conj(z));
  CNum dbar = conj(eval_series(sd.d, zeta));
  CNum ev = eval_series(sd.dinv, z);
  if (mag(ev) > ldexp2(one, bits / 2)) {
    fail(ErrorCode::NearPole, "inverse outer function explodes at z = " + z.to_string());
  }
  return dbar * ev;
}

TwoPathLaurent r_minus_S_laurent(const SzegoData& sd, const Real& rho, long M) {
  const long bits = sd.bits;
  Real one(1L, Prec{bits});
  Real lo_ok = Real(1L, Prec{bits}) + Real(0.02, Prec{bits});
  Real hi_ok = sd.dinv_radius * Real(0.98, Prec{bits});
  if (!(rho > lo_ok) || !(rho < hi_ok)) {
    fail(ErrorCode::OutsideValidatedAnnulus, "sampling radius " + rho.to_string() +
                                                 " not inside (" + lo_ok.to_string() + ", " +
                                                 hi_ok.to_string() + ")");
  }
  auto f = [&sd](const CNum& z) { return eval_r(sd, z) - eval_S(sd, z); };
  std::vector<CNum> samples = circle_samples(f, rho, M, bits);
  LaurentSlice slice = laurent_from_samples(samples, rho, bits);

  // Convolution path over a comparison band.
  const long N = sd.dinv.degree();
  long nb = N / 4 < 48 ? N / 4 : 48;
  if (nb > slice.n_max()) nb = slice.n_max();
  Real worst(0L, Prec{bits});
  for (long n = -nb; n <= nb; ++n) {
    CNum conv(0, Prec{bits});
    for (long k = 0; k <= N; ++k) {
      long idx = n + k;
      if (idx < 0) continue;
      if (idx > N) break;
      conv += conj(sd.d.coeffs[static_cast<std::size_t>(k)]) *
              sd.dinv.coeffs[static_cast<std::size_t>(idx)];
    }
    if (n >= 0 && n <= sd.S.degree()) conv -= sd.S.coeffs[static_cast<std::size_t>(n)];
    Real diff = mag(conv - slice.at(n));
    if (diff > worst) worst = diff;
  }
  TwoPathLaurent out;
  out.disagreement = worst;
  out.bound = Real(1000L, Prec{bits}) * max(slice.floor, max(sd.dinv.floor, sd.d.floor)) +
              Real(10L, Prec{bits}) * slice.alias_bound + Real(100L, Prec{bits}) * sd.dinv_tail;
  if (worst > out.bound) {
    fail(ErrorCode::PathsDisagree, "sampling and convolution coefficients differ by " +
                                       worst.to_string() + " (bound " + out.bound.to_string() +
                                       ")");
  }
  out.slice = std::move(slice);
  return out;
}

namespace {
struct Q3Term {
  CNum amp;   // c_k conj(c_l) c_r conj(mu_l)^-1 mu_r^-1 (1 - mu_k^-1 conj(mu_l)^-1)^-1
  CNum mu;    // inner pole mu_k
  CNum prod;  // outer pole mu_k conj(mu_l) mu_r
};

std::vector<Q3Term> q3_terms(const ExponentialModel& model, long bits) {
  std::vector<Q3Term> out;
  Real one(1L, Prec{bits});
  for (const auto& [ck, muk] : model.terms) {
    for (const auto& [cl, mul] : model.terms) {
      for (const auto& [cr, mur] : model.terms) {
        Q3Term t;
        CNum cml = conj(mul);
        t.mu = muk;
        t.prod = muk * cml * mur;
        CNum gap = CNum(1, Prec{bits}) - recip(muk * cml);
        t.amp = ck * conj(cl) * cr * recip(cml * mur) * recip(gap);
        out.push_back(t);
      }
    }
  }
  return out;
}
}  // namespace

CNum q3_term(const ExponentialModel& model, const CNum& z, double margin) {
  if (model.empty()) return CNum(0, Prec{z.bits()});
  const long bits = z.bits();
  Real m(margin, Prec{bits});
  CNum acc(0, Prec{bits});
  for (const Q3Term& t : q3_terms(model, bits)) {
    if (mag(z - t.mu) < m * mag(t.mu) || mag(z - t.prod) < m * mag(t.prod)) {
      fail(ErrorCode::PoleProximity, "z = " + z.to_string() + " within margin of a pole");
    }
    CNum f1 = CNum(1, Prec{bits}) - t.mu / z;
    CNum f3 = CNum(1, Prec{bits}) - z / t.prod;
    acc += t.amp * recip(f1) * recip(f3);
  }
  return acc;
}

std::vector<CNum> q3_poles(const ExponentialModel& model, const Real& eps) {
  const long bits = eps.bits();
  std::vector<CNum> out;
  auto push_unique = [&out, &eps](const CNum& p) {
    for (const CNum& q : out) {
      if (mag(q - p) < eps * max(Real(1L, Prec{p.bits()}), mag(p))) return;
    }
    out.push_back(p);
  };
  for (const Q3Term& t : q3_terms(model, bits)) {
    push_unique(t.mu);
    push_unique(t.prod);
  }
  return out;
}

std::vector<CNum> q3_outer_coeffs(const ExponentialModel& model, long n_max, long bits) {
  std::vector<CNum> out(static_cast<std::size_t>(n_max) + 1, CNum(0, Prec{bits}));
  for (const Q3Term& t : q3_terms(model, bits)) {
    CNum w = t.amp * recip(CNum(1, Prec{bits}) - t.mu / t.prod);
    CNum ip = recip(t.prod);
    CNum p(1, Prec{bits});
    for (long n = 0; n <= n_max; ++n) {
      out[static_cast<std::size_t>(n)] += w * p;
      p *= ip;
    }
  }
  return out;
}

namespace {
void check_predictor_region(const ExponentialModel& model, const CNum& z, double delta,
                            long bits) {
  if (model.empty()) return;
  Real rmin = mag(model.terms[0].second);
  for (const auto& [c, mu] : model.terms) {
    Real m = mag(mu);
    if (m < rmin) rmin = m;
  }
  Real limit = pow_si(rmin, -3) * (Real(1L, Prec{bits}) + Real(delta, Prec{bits}));
  if (!(mag(z) < limit)) {
    fail(ErrorCode::OutOfRegion, "|z| = " + mag(z).to_string() +
                                     " outside predictor region (limit " + limit.to_string() +
                                     ")");
  }
}
}  // namespace

CNum predictor_phi(const ExponentialModel& model, const SzegoData& sd, long n, const CNum& z,
                   double delta) {
  const long bits = sd.bits;
  check_predictor_region(model, z, delta, bits);
  if (model.empty()) return CNum(0, Prec{bits});
  CNum acc(0, Prec{bits});
  for (const auto& [c, mu] : model.terms) {
    CNum cm = conj(mu);
    acc += conj(c) * pow_int(cm, -n) * recip(CNum(1, Prec{bits}) - z * cm);
  }
  return -(eval_dinv(sd, z) * acc);
}

CNum predictor_phistar(const ExponentialModel& model, const SzegoData& sd, long n, const CNum& z,
                       double delta) {
  const long bits = sd.bits;
  check_predictor_region(model, z, delta, bits);
  if (model.empty()) return CNum(0, Prec{bits});
  CNum acc(0, Prec{bits});
  for (const auto& [ck, muk] : model.terms) {
    CNum cmk = conj(muk);
    CNum fk = recip(CNum(1, Prec{bits}) - z * cmk);
    for (const auto& [cl, mul] : model.terms) {
      CNum gap = recip(CNum(1, Prec{bits}) - recip(cmk * mul));
      acc += conj(ck) * cl * recip(mul) * fk * gap * pow_int(cmk * mul, -n);
    }
  }
  return -(eval_dinv(sd, z) * z * acc);
}

CNum r_minus_s_pointwise(const std::vector<CNum>& alphas, const SzegoData& sd, const CNum& z,
                         long Jmax) {
  const long bits = sd.bits;
  if (static_cast<long>(alphas.size()) < Jmax) {
    fail(ErrorCode::BadInput, "need alpha_0..alpha_{Jmax-1} for the tail sum");
  }
  CNum zeta = recip(conj(z));
  CNum dbar = conj(eval_series(sd.d, zeta));
  CNum dbari = recip(dbar);
  // Work with the deviation w_j = phi_j z^{-j} - dbar^{-1} instead of phi_j
  // itself: the j-th summand equals alpha_{j-1} z^j w_{j-1} directly, so the
  // huge like-magnitude subtraction phi - dbari z^{j-1} (which loses
  // ~2 j log2|z| bits for |z| > 1) never occurs.  The recursion becomes
  //   w_j      = w_{j-1} - conj(a) phistar_{j-1} z^{-j}
  //   phistar_j = phistar_{j-1} - a z^j (w_{j-1} + dbari)
  // whose increments are exponentially small relative to the updated values.
  CNum w = CNum(1, Prec{bits}) - dbari;
  CNum phistar(1, Prec{bits});
  CNum acc(0, Prec{bits});
  CNum zi = recip(z);
  CNum zp = z;   // z^{j}
  CNum zm = zi;  // z^{-j}
  Real cut = ldexp2(magnitude_floor(bits, Real(1L, Prec{bits})), -8);
  int quiet = 0;
  for (long j = 1; j <= Jmax; ++j) {
    const CNum& a = alphas[static_cast<std::size_t>(j - 1)];
    CNum term = a * zp * w;
    acc += term;
    if (mag(term) < cut) {
      if (++quiet >= 8) break;
    } else {
      quiet = 0;
    }
    CNum nw = w - conj(a) * phistar * zm;
    phistar = phistar - a * zp * (w + dbari);
    w = nw;
    zp *= z;
    zm *= zi;
  }
  return (dbar - CNum(1, Prec{bits})) - dbar * acc;
}

}  // namespace szegolab
