#include "szegolab/inverse.hpp"

#include <string>
#include <utility>

#include "szegolab/analysis.hpp"

namespace szegolab {

MomentSequence moments_from_weight(const Weight& w, long N, long M, bool auto_normalize) {
  const long bits = Real::default_bits();
  if (N < 0) fail(ErrorCode::BadInput, "moment count must be nonnegative");
  if (!is_power_of_two(M)) fail(ErrorCode::BadInput, "grid size must be a power of two");
  if (M < 8 * N || M < 8) {
    fail(ErrorCode::BadInput, "grid size must be at least 8x the moment count");
  }
  Real one(1L, Prec{bits});
  Real two_pi = Real(2L, Prec{bits}) * Real::pi(Prec{bits});
  std::vector<CNum> grid;
  grid.reserve(static_cast<std::size_t>(M));
  if (w.grid) {
    std::vector<Real> samples = w.grid(M);
    if (static_cast<long>(samples.size()) != M) {
      fail(ErrorCode::BadInput, "weight grid sampler returned the wrong size");
    }
    for (long k = 0; k < M; ++k) {
      const Real& wk = samples[static_cast<std::size_t>(k)];
      if (!wk.is_finite() || wk.sign() < 0) {
        fail(ErrorCode::NonSzegoWeight,
             "weight is negative or non-finite at grid point " + std::to_string(k));
      }
      grid.emplace_back(wk);
    }
  } else {
    for (long k = 0; k < M; ++k) {
      Real theta = two_pi * Real(k, Prec{bits}) / Real(M, Prec{bits});
      Real wk = w.fn(theta);
      if (!wk.is_finite() || wk.sign() < 0) {
        fail(ErrorCode::NonSzegoWeight,
             "weight is negative or non-finite at grid point " + std::to_string(k));
      }
      grid.emplace_back(wk);
    }
  }
  fft_pow2(grid, bits);
  MomentSequence ms;
  ms.bits = bits;
  Real invM = one / Real(M, Prec{bits});
  for (long n = 0; n <= N; ++n) {
    ms.c.push_back(grid[static_cast<std::size_t>(n)] * invM);
  }
  // The zeroth moment of real samples is exactly real; keep it that way.
  ms.c[0] = CNum(ms.c[0].re);
  if (!(ms.c[0].re > Real(0L, Prec{bits}))) {
    fail(ErrorCode::NonSzegoWeight, "total mass is not positive");
  }
  if (abs(ms.c[0].re - one) > Real("1e-6", Prec{bits})) {
    if (!auto_normalize) {
      fail(ErrorCode::NotNormalized,
           "total mass " + ms.c[0].re.to_string() + " differs from 1; pass auto_normalize");
    }
    Real inv0 = one / ms.c[0].re;
    for (CNum& cn : ms.c) cn = cn * inv0;
    ms.c[0] = CNum(one);
  }
  return ms;
}

MomentSequence moments_from_szego_data(const SzegoData& sd, long N) {
  const long bits = sd.bits;
  if (N < 0) fail(ErrorCode::BadInput, "moment count must be nonnegative");
  Real one(1L, Prec{bits});
  // Effective boundary polynomial P: trim trailing coefficients that sit
  // below the series floor (for finitely supported coefficient lists the
  // series terminates exactly).
  long deg = static_cast<long>(sd.dinv.coeffs.size()) - 1;
  while (deg > 0 && !(mag(sd.dinv.coeffs[static_cast<std::size_t>(deg)]) > sd.dinv.floor)) --deg;
  std::vector<CNum> P(sd.dinv.coeffs.begin(), sd.dinv.coeffs.begin() + deg + 1);
  // Reflected polynomial Q(z) = z^deg conj(P)(1/z); its roots are the
  // reflections of P's roots and must lie strictly inside the circle.
  std::vector<CNum> Q(static_cast<std::size_t>(deg) + 1);
  for (long k = 0; k <= deg; ++k) {
    Q[static_cast<std::size_t>(k)] = conj(P[static_cast<std::size_t>(deg - k)]);
  }
  std::vector<CNum> roots;
  if (deg >= 1) roots = polynomial_roots(Q, bits);
  for (const CNum& q : roots) {
    if (!(mag(q) < one)) {
      fail(ErrorCode::NonSzegoWeight,
           "reconstructed weight has a boundary-polynomial zero on or inside the circle");
    }
  }
  auto horner = [&](const std::vector<CNum>& a, const CNum& z) {
    CNum acc(0, Prec{bits});
    for (std::size_t j = a.size(); j-- > 0;) acc = acc * z + a[j];
    return acc;
  };
  std::vector<CNum> Qp;  // Q'
  for (long k = 1; k <= deg; ++k) {
    Qp.push_back(Q[static_cast<std::size_t>(k)] * CNum(k, Prec{bits}));
  }
  // Per-root residue weights 1/(P(q) Q'(q)) and running powers q^{deg+n-1}.
  std::vector<CNum> rw, rp;
  for (const CNum& q : roots) {
    rw.push_back(recip(horner(P, q) * horner(Qp, q)));
    rp.push_back(pow_int(q, deg - 1));
  }
  // c_n = conj( (1/2 pi i) contour-integral of D0^2 z^{deg+n-1} / (P Q) dz ):
  // the conjugated moment integral keeps every root power positive, so the
  // residue sum only ever sees decaying powers of the inside roots.  No grid,
  // so nothing to alias; this stays exact for weights whose boundary
  // polynomial has zeros hugging the circle, where uniform quadrature would
  // need astronomically many nodes.
  MomentSequence ms;
  ms.bits = bits;
  Real d0sq = sd.D0 * sd.D0;
  for (long n = 0; n <= N; ++n) {
    CNum acc(0, Prec{bits});
    for (std::size_t i = 0; i < roots.size(); ++i) {
      acc += rp[i] * rw[i];
      rp[i] = rp[i] * roots[i];
    }
    if (deg == 0 && n == 0) acc += recip(P[0] * Q[0]);
    ms.c.push_back(conj(acc) * d0sq);
  }
  ms.c[0] = CNum(ms.c[0].re);
  if (!(ms.c[0].re > Real(0L, Prec{bits}))) {
    fail(ErrorCode::NonSzegoWeight, "total mass is not positive");
  }
  return ms;
}

std::vector<CNum> alphas_from_moments(const MomentSequence& ms) {
  const long bits = ms.bits;
  Real one(1L, Prec{bits});
  if (ms.c.empty()) fail(ErrorCode::BadInput, "empty moment sequence");
  const CNum& c0 = ms.c[0];
  if (abs(c0.im) > Real("1e-12", Prec{bits}) * max(one, abs(c0.re))) {
    fail(ErrorCode::BadInput, "zeroth moment must be real");
  }
  if (!(c0.re > Real(0L, Prec{bits}))) {
    fail(ErrorCode::NotPositiveDefinite, "zeroth moment must be positive");
  }
  const long N = static_cast<long>(ms.c.size()) - 1;
  std::vector<CNum> phi{CNum(1, Prec{bits})};
  std::vector<CNum> phistar{CNum(1, Prec{bits})};
  Real nrm = c0.re;  // ||Phi_n||^2 = c_0 prod_{j<n} (1-|alpha_j|^2)
  std::vector<CNum> alphas;
  alphas.reserve(static_cast<std::size_t>(N));
  for (long n = 0; n < N; ++n) {
    CNum ip(0, Prec{bits});  // <1, z Phi_n> = sum_a phi[a] conj(c[a+1])
    for (long a = 0; a <= n; ++a) {
      ip += phi[static_cast<std::size_t>(a)] * conj(ms.c[static_cast<std::size_t>(a + 1)]);
    }
    if (!(nrm > Real(0L, Prec{bits}))) {
      fail(ErrorCode::NotPositiveDefinite,
           "norm collapsed at index " + std::to_string(n));
    }
    CNum a_n = conj(ip) / nrm;
    Real m2 = norm2(a_n);
    if (!(m2 < one)) {
      fail(ErrorCode::NotPositiveDefinite,
           "coefficient " + std::to_string(n) + " left the unit disk");
    }
    std::vector<CNum> phi_next(static_cast<std::size_t>(n) + 2, CNum(0, Prec{bits}));
    std::vector<CNum> star_next(static_cast<std::size_t>(n) + 2, CNum(0, Prec{bits}));
    CNum ca = conj(a_n);
    for (long j = 0; j <= n + 1; ++j) {
      CNum zphi = j > 0 ? phi[static_cast<std::size_t>(j - 1)] : CNum(0, Prec{bits});
      CNum ps = j <= n ? phistar[static_cast<std::size_t>(j)] : CNum(0, Prec{bits});
      phi_next[static_cast<std::size_t>(j)] = zphi - ca * ps;
      star_next[static_cast<std::size_t>(j)] = ps - a_n * zphi;
    }
    phi = std::move(phi_next);
    phistar = std::move(star_next);
    nrm = nrm * (one - m2);
    alphas.push_back(a_n);
  }
  return alphas;
}

namespace {

std::vector<CNum> alphas_from_s_series(const SzegoData& sd, long count) {
  if (count > sd.S.degree()) {
    fail(ErrorCode::BadInput, "coefficient series too short for the requested index");
  }
  std::vector<CNum> alphas;
  alphas.reserve(static_cast<std::size_t>(count));
  for (long j = 1; j <= count; ++j) alphas.push_back(-sd.S[static_cast<std::size_t>(j)]);
  return alphas;
}

// Trapezoid means of an integrand evaluated on a 2M grid; returns (mean at M
// points, mean at 2M points) so the caller can compare refinement levels.
std::pair<CNum, CNum> two_level_mean(const std::function<CNum(const Real&, const CNum&)>& f,
                                     const Weight& w, long M, long bits) {
  Real two_pi = Real(2L, Prec{bits}) * Real::pi(Prec{bits});
  const long fine = 2 * M;
  CNum sum_all(0, Prec{bits}), sum_even(0, Prec{bits});
  for (long k = 0; k < fine; ++k) {
    Real theta = two_pi * Real(k, Prec{bits}) / Real(fine, Prec{bits});
    Real wk = w.fn(theta);
    if (!wk.is_finite() || wk.sign() < 0) {
      fail(ErrorCode::NonSzegoWeight,
           "weight is negative or non-finite at grid point " + std::to_string(k));
    }
    CNum val = f(theta, unit(theta)) * wk;
    sum_all += val;
    if ((k & 1L) == 0) sum_even += val;
  }
  return {sum_even / Real(M, Prec{bits}), sum_all / Real(fine, Prec{bits})};
}

CNum refine_or_fail(const std::pair<CNum, CNum>& levels, long bits) {
  Real one(1L, Prec{bits});
  Real tol = ldexp2(max(one, mag(levels.second)), -(bits / 2));
  if (mag(levels.first - levels.second) > tol) {
    fail(ErrorCode::QuadratureUnresolved,
         "trapezoid refinement did not converge; increase the grid size");
  }
  return levels.second;
}

}  // namespace

CNum alpha_check_freud(long n, const SzegoData& sd, const Weight& w, long M) {
  const long bits = sd.bits;
  if (n < 0) fail(ErrorCode::BadInput, "index must be nonnegative");
  if (!is_power_of_two(M)) fail(ErrorCode::BadInput, "grid size must be a power of two");
  VerblunskySequence seq = verblunsky_explicit(alphas_from_s_series(sd, n + 1), bits);
  std::vector<PolynomialPair> pairs = phi_upto(seq, n + 1);
  const PolynomialPair& top = pairs[static_cast<std::size_t>(n + 1)];
  auto integrand = [&](const Real&, const CNum& e) {
    CNum phi_val = eval_phi(top, e).first;
    return conj(phi_val) * eval_series(sd.dinv, e);
  };
  CNum mean = refine_or_fail(two_level_mean(integrand, w, M, bits), bits);
  return -mean / (sd.D0 * sd.D0);
}

CNum alpha_check_2414(long n, const SzegoData& sd, const Weight& w, long M) {
  const long bits = sd.bits;
  if (n < 0) fail(ErrorCode::BadInput, "index must be nonnegative");
  if (!is_power_of_two(M)) fail(ErrorCode::BadInput, "grid size must be a power of two");
  VerblunskySequence seq = verblunsky_explicit(alphas_from_s_series(sd, n + 1), bits);
  std::vector<PolynomialPair> pairs = phi_upto(seq, n);
  const PolynomialPair& top = pairs[static_cast<std::size_t>(n)];
  CNum one_c(1, Prec{bits});
  auto integrand = [&](const Real&, const CNum& e) {
    CNum phi_val = eval_phi(top, e).first;
    return conj(phi_val) * (eval_series(sd.dinv, e) - one_c) * conj(e);
  };
  CNum mean = refine_or_fail(two_level_mean(integrand, w, M, bits), bits);
  return -(top.kappa * top.kappa) * mean;
}

}  // namespace szegolab
