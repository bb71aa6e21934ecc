#include "szegolab/analysis.hpp"

#include <algorithm>
#include <string>

namespace szegolab {

std::optional<std::vector<CNum>> solve_linear_system(std::vector<std::vector<CNum>> A,
                                                     std::vector<CNum> b, const Real& pivot_tol) {
  const std::size_t n = A.size();
  if (n == 0) return std::vector<CNum>{};
  const long bits = b.empty() ? Real::default_bits() : b[0].bits();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    Real best = mag(A[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      Real m = mag(A[r][col]);
      if (m > best) {
        best = m;
        piv = r;
      }
    }
    Real scale(0L, Prec{bits});
    for (std::size_t r = col; r < n; ++r) {
      for (std::size_t c = col; c < n; ++c) {
        Real m = mag(A[r][c]);
        if (m > scale) scale = m;
      }
    }
    if (scale.is_zero() || !(best > pivot_tol * scale)) return std::nullopt;
    if (piv != col) {
      std::swap(A[piv], A[col]);
      std::swap(b[piv], b[col]);
    }
    CNum inv_p = recip(A[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      CNum f = A[r][col] * inv_p;
      if (f.is_zero()) continue;
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<CNum> x(n, CNum(0, Prec{bits}));
  for (std::size_t i = n; i-- > 0;) {
    CNum acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= A[i][j] * x[j];
    x[i] = acc * recip(A[i][i]);
  }
  return x;
}

std::vector<CNum> least_squares_mgs(std::vector<std::vector<CNum>> A, std::vector<CNum> b) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows == 0 ? 0 : A[0].size();
  const long bits = b.empty() ? Real::default_bits() : b[0].bits();
  if (rows < cols) fail(ErrorCode::BadInput, "least squares needs rows >= cols");
  // Column-major copy.
  std::vector<std::vector<CNum>> q(cols, std::vector<CNum>(rows, CNum(0, Prec{bits})));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) q[c][r] = A[r][c];
  std::vector<std::vector<CNum>> R(cols, std::vector<CNum>(cols, CNum(0, Prec{bits})));
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      CNum dot(0, Prec{bits});
      for (std::size_t r = 0; r < rows; ++r) dot += conj(q[i][r]) * q[j][r];
      R[i][j] = dot;
      for (std::size_t r = 0; r < rows; ++r) q[j][r] -= dot * q[i][r];
    }
    Real nrm(0L, Prec{bits});
    for (std::size_t r = 0; r < rows; ++r) nrm += norm2(q[j][r]);
    nrm = sqrt(nrm);
    if (nrm.is_zero()) fail(ErrorCode::IllConditioned, "rank-deficient least-squares matrix");
    R[j][j] = CNum(nrm);
    Real inv = Real(1L, Prec{bits}) / nrm;
    for (std::size_t r = 0; r < rows; ++r) q[j][r] = q[j][r] * inv;
  }
  std::vector<CNum> qtb(cols, CNum(0, Prec{bits}));
  for (std::size_t j = 0; j < cols; ++j) {
    CNum dot(0, Prec{bits});
    for (std::size_t r = 0; r < rows; ++r) dot += conj(q[j][r]) * b[r];
    qtb[j] = dot;
  }
  std::vector<CNum> x(cols, CNum(0, Prec{bits}));
  for (std::size_t i = cols; i-- > 0;) {
    CNum acc = qtb[i];
    for (std::size_t j = i + 1; j < cols; ++j) acc -= R[i][j] * x[j];
    x[i] = acc * recip(R[i][i]);
  }
  return x;
}

std::vector<Real> singular_values_jacobi(std::vector<std::vector<CNum>> A, long bits) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows == 0 ? 0 : A[0].size();
  std::vector<std::vector<CNum>> col(cols, std::vector<CNum>(rows, CNum(0, Prec{bits})));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) col[c][r] = A[r][c];
  Real one(1L, Prec{bits});
  Real tol = ldexp2(one, -(bits - 16));
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < cols; ++i) {
      for (std::size_t j = i + 1; j < cols; ++j) {
        Real a(0L, Prec{bits}), b(0L, Prec{bits});
        CNum g(0, Prec{bits});
        for (std::size_t r = 0; r < rows; ++r) {
          a += norm2(col[i][r]);
          b += norm2(col[j][r]);
          g += conj(col[i][r]) * col[j][r];
        }
        Real gm = mag(g);
        if (a.is_zero() || b.is_zero() || !(gm > tol * sqrt(a * b))) continue;
        rotated = true;
        CNum phase = g / CNum(gm);
        Real tau = (b - a) / (Real(2L, Prec{bits}) * gm);
        Real t = (tau.sign() >= 0 ? one : -one) / (abs(tau) + sqrt(one + tau * tau));
        Real c = one / sqrt(one + t * t);
        Real s = c * t;
        for (std::size_t r = 0; r < rows; ++r) {
          CNum vi = col[i][r];
          CNum vj = col[j][r] * conj(phase);
          col[i][r] = vi * c - vj * s;
          col[j][r] = vi * s + vj * c;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<Real> sv;
  sv.reserve(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    Real nrm(0L, Prec{bits});
    for (std::size_t r = 0; r < rows; ++r) nrm += norm2(col[c][r]);
    sv.push_back(sqrt(nrm));
  }
  std::sort(sv.begin(), sv.end(), [](const Real& x, const Real& y) { return x > y; });
  return sv;
}

namespace {
std::pair<CNum, CNum> poly_and_deriv(const std::vector<CNum>& c, const CNum& z, long bits) {
  CNum p(0, Prec{bits}), dp(0, Prec{bits});
  for (std::size_t i = c.size(); i-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
  return {p, dp};
}
}  // namespace

std::vector<CNum> polynomial_roots(const std::vector<CNum>& coeffs, long bits) {
  std::vector<CNum> c = coeffs;
  std::vector<CNum> roots;
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  while (!c.empty() && c.front().is_zero()) {
    roots.push_back(CNum(0, Prec{bits}));
    c.erase(c.begin());
  }
  if (c.size() <= 1) return roots;
  const long deg = static_cast<long>(c.size()) - 1;
  if (deg == 1) {
    roots.push_back(-(c[0] / c[1]));
    return roots;
  }
  Real one(1L, Prec{bits});
  // Initial circle: geometric-mean root modulus, plus a fixed angular offset
  // that breaks conjugate symmetry.
  Real r0 = exp(log(mag(c[0]) / mag(c.back())) / Real(deg, Prec{bits}));
  if (!r0.is_finite() || r0.is_zero()) r0 = one;
  std::vector<CNum> z;
  Real two_pi = Real(2L, Prec{bits}) * Real::pi(Prec{bits});
  for (long j = 0; j < deg; ++j) {
    Real theta = two_pi * Real(j, Prec{bits}) / Real(deg, Prec{bits}) + Real(0.4, Prec{bits});
    z.push_back(unit(theta) * r0);
  }
  Real stop = ldexp2(one, -(bits - 24));
  for (int iter = 0; iter < 500; ++iter) {
    Real worst(0L, Prec{bits});
    for (long j = 0; j < deg; ++j) {
      auto [p, dp] = poly_and_deriv(c, z[static_cast<std::size_t>(j)], bits);
      if (p.is_zero()) continue;
      CNum w;
      if (dp.is_zero()) {
        w = CNum(Real(0.5, Prec{bits}), Real(0.25, Prec{bits}));
      } else {
        w = p / dp;
      }
      CNum sum(0, Prec{bits});
      for (long k = 0; k < deg; ++k) {
        if (k == j) continue;
        sum += recip(z[static_cast<std::size_t>(j)] - z[static_cast<std::size_t>(k)]);
      }
      CNum denom = CNum(1, Prec{bits}) - w * sum;
      CNum corr = denom.is_zero() ? w : w / denom;
      z[static_cast<std::size_t>(j)] -= corr;
      Real cm = mag(corr) / max(one, mag(z[static_cast<std::size_t>(j)]));
      if (cm > worst) worst = cm;
    }
    if (!(worst > stop)) break;
  }
  for (const CNum& r : z) roots.push_back(r);
  return roots;
}

PronyFit prony_fit(const std::vector<CNum>& alphas, long K_max) {
  const long bits = alphas.empty() ? Real::default_bits() : alphas[0].bits();
  Real one(1L, Prec{bits});
  if (K_max < 1) fail(ErrorCode::BadInput, "K_max must be >= 1");
  if (static_cast<long>(alphas.size()) < 4 * K_max + 8) {
    fail(ErrorCode::WindowTooShort, "need at least 4*K_max+8 sequence entries");
  }
  Real max_mag(0L, Prec{bits});
  for (const CNum& a : alphas) {
    Real m = mag(a);
    if (m > max_mag) max_mag = m;
  }
  Real floor = magnitude_floor(bits, max_mag);
  // Keep the prefix with magnitudes above the floor (trailing noise degrades
  // the fit without adding information).
  long L = static_cast<long>(alphas.size());
  while (L > 0 && !(mag(alphas[static_cast<std::size_t>(L - 1)]) > floor)) --L;
  if (L < 4 * K_max + 8) L = std::min<long>(4 * K_max + 8, static_cast<long>(alphas.size()));

  PronyFit out;
  out.residual_rate = Real::pos_inf(Prec{bits});
  out.condition = one;
  if (max_mag < ldexp2(one, -(bits - kGuardBits))) {
    out.model = make_exponential_model({}, Real::pos_inf(Prec{bits}));
    return out;  // identically-zero input: empty model
  }

  const long p = K_max;
  const long rows = L - p;
  std::vector<std::vector<CNum>> H(static_cast<std::size_t>(rows),
                                   std::vector<CNum>(static_cast<std::size_t>(p + 1)));
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j <= p; ++j)
      H[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          alphas[static_cast<std::size_t>(i + j)];
  std::vector<Real> sv = singular_values_jacobi(H, bits);

  const Real gap_need(1000000L, Prec{bits});
  // Numerical rank: singular values below sv[0] * 2^-(bits - kGuardBits - 16)
  // are arithmetic noise (for exact finite-rank data the trailing singular
  // values land many orders below this, at random magnitudes, so ratios among
  // them are meaningless and must not drive the order choice).
  Real rank_cut = sv[0] * ldexp2(one, -(bits - kGuardBits - 16));
  long K = 0;
  for (long k = 0; k <= p; ++k) {
    if (sv[static_cast<std::size_t>(k)] > rank_cut) K = k + 1;
  }
  if (K < 1) K = 1;
  bool saturated = false;
  if (K > p) {
    // Ladder denser than the budget: saturate at the requested cap.
    K = K_max;
    saturated = true;
  } else {
    const Real& hi = sv[static_cast<std::size_t>(K - 1)];
    const Real& lo = sv[static_cast<std::size_t>(K)];
    Real ratio = lo.is_zero() ? Real::pos_inf(Prec{bits}) : hi / lo;
    if (!(ratio >= gap_need)) {
      K = K_max;
      saturated = true;
    }
  }
  out.saturated = saturated;
  out.condition = sv[static_cast<std::size_t>(K - 1)].is_zero()
                      ? Real::pos_inf(Prec{bits})
                      : sv[0] / sv[static_cast<std::size_t>(K - 1)];
  if (out.condition > ldexp2(one, bits - 64)) {
    fail(ErrorCode::IllConditioned,
         "Hankel condition " + out.condition.to_string() + " too large for this precision");
  }

  // Linear recurrence alpha_{n+K} = sum_j x_j alpha_{n+j} by least squares.
  {
    std::vector<std::vector<CNum>> A(static_cast<std::size_t>(L - K),
                                     std::vector<CNum>(static_cast<std::size_t>(K)));
    std::vector<CNum> rhs(static_cast<std::size_t>(L - K));
    for (long i = 0; i < L - K; ++i) {
      for (long j = 0; j < K; ++j)
        A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            alphas[static_cast<std::size_t>(i + j)];
      rhs[static_cast<std::size_t>(i)] = alphas[static_cast<std::size_t>(i + K)];
    }
    std::vector<CNum> x = least_squares_mgs(std::move(A), std::move(rhs));
    std::vector<CNum> charpoly(static_cast<std::size_t>(K) + 1, CNum(0, Prec{bits}));
    charpoly[static_cast<std::size_t>(K)] = CNum(1, Prec{bits});
    for (long j = 0; j < K; ++j) charpoly[static_cast<std::size_t>(j)] = -x[static_cast<std::size_t>(j)];
    std::vector<CNum> roots = polynomial_roots(charpoly, bits);
    std::vector<CNum> mus;
    for (const CNum& t : roots) {
      if (mag(t) < ldexp2(one, -(bits / 2))) continue;  // overfit root at 0
      mus.push_back(recip(t));
    }
    for (std::size_t i = 0; i < mus.size(); ++i) {
      for (std::size_t j = i + 1; j < mus.size(); ++j) {
        Real sep = mag(mus[i] - mus[j]);
        Real scale = (mag(mus[i]) + mag(mus[j])) / Real(2L, Prec{bits});
        if (sep < Real(0.001, Prec{bits}) * scale) {
          fail(ErrorCode::OrderAmbiguous,
               "recurrence roots nearly confluent: polynomial amplitudes are outside the "
               "constant-amplitude model");
        }
      }
    }
    std::sort(mus.begin(), mus.end(), [](const CNum& u, const CNum& v) {
      Real mu = mag(u), mv = mag(v);
      if (mu != mv) return mu < mv;
      return arg(u) < arg(v);
    });
    // Amplitudes by least squares against the raw prefix.
    const long fit_n = L;
    std::vector<std::vector<CNum>> V(static_cast<std::size_t>(fit_n),
                                     std::vector<CNum>(mus.size()));
    std::vector<CNum> b(static_cast<std::size_t>(fit_n));
    std::vector<CNum> powers;
    for (const CNum& mu : mus) powers.push_back(recip(mu));
    for (long n = 0; n < fit_n; ++n) {
      for (std::size_t k = 0; k < mus.size(); ++k) {
        V[static_cast<std::size_t>(n)][k] = powers[k];
        powers[k] = powers[k] * recip(mus[k]);
      }
      b[static_cast<std::size_t>(n)] = alphas[static_cast<std::size_t>(n)];
    }
    std::vector<CNum> cs = least_squares_mgs(std::move(V), std::move(b));
    std::vector<std::pair<CNum, CNum>> terms;
    for (std::size_t k = 0; k < mus.size(); ++k) terms.emplace_back(cs[k], mus[k]);

    // Residual decay radius.
    std::vector<Real> resid;
    resid.reserve(static_cast<std::size_t>(L));
    std::vector<CNum> pw;
    for (const CNum& mu : mus) pw.push_back(recip(mu));
    for (long n = 0; n < L; ++n) {
      CNum modeln(0, Prec{bits});
      for (std::size_t k = 0; k < mus.size(); ++k) {
        modeln += terms[k].first * pw[k];
        pw[k] = pw[k] * recip(mus[k]);
      }
      resid.push_back(mag(alphas[static_cast<std::size_t>(n)] - modeln));
    }
    Real rr = Real::pos_inf(Prec{bits});
    auto [lo, hi] = auto_rate_window(resid, floor);
    if (lo >= 0) {
      RateEstimate est = fit_decay_rate(resid, lo, hi, floor);
      if (est.rate > Real(0L, Prec{bits})) rr = one / est.rate;
    }
    out.residual_rate = rr;
    out.model = make_exponential_model(std::move(terms), rr);
  }
  return out;
}

ExponentialModel refine_exponential_model(const ExponentialModel& model,
                                          const std::vector<CNum>& data, long rounds) {
  if (model.empty() || data.size() < 8) return model;
  const long bits = data[0].bits();
  Real one(1L, Prec{bits});
  Real max_mag(0L, Prec{bits});
  for (const CNum& a : data) {
    Real mg = mag(a);
    if (mg > max_mag) max_mag = mg;
  }
  Real floor = magnitude_floor(bits, max_mag);
  const long K = static_cast<long>(model.terms.size());
  std::vector<CNum> c, mu;
  {
    // Slowest rung first; a joint solve across widely separated scales is
    // hopeless (the slow rungs' linearization remainder dwarfs the fast
    // rungs' entire signal), so each modulus group is refined on its own
    // dominance window with the other rungs' current model subtracted.
    std::vector<std::pair<CNum, CNum>> sorted = model.terms;
    std::sort(sorted.begin(), sorted.end(),
              [](const std::pair<CNum, CNum>& u, const std::pair<CNum, CNum>& v) {
                return mag(u.second) < mag(v.second);
              });
    for (const auto& [ck, mk] : sorted) {
      if (!(mag(mk) > one)) return model;  // exponents inside the closed unit disk
      c.push_back(ck);
      mu.push_back(mk);
    }
  }
  const long L = static_cast<long>(data.size());
  Real lim = ldexp2(floor, 16);

  // Modulus groups (conjugate pairs and other equal-modulus terms move
  // together; their windows coincide and their columns share one scale).
  std::vector<std::pair<long, long>> groups;  // [first, last] inclusive
  for (long k = 0; k < K;) {
    long e = k;
    while (e + 1 < K && mag(mu[static_cast<std::size_t>(e + 1)]) <
                            mag(mu[static_cast<std::size_t>(k)]) * Real(1.05, Prec{bits}))
      ++e;
    groups.emplace_back(k, e);
    k = e + 1;
  }

  // Post-refinement relative residual per term: the peeling error a slower
  // rung injects into every faster rung's window.
  std::vector<Real> eps_term(static_cast<std::size_t>(K), Real(0L, Prec{bits}));

  // data minus every term outside [first, last], evaluated at index n via the
  // supplied power state (advanced by the caller).
  auto refine_group = [&](long first, long last) {
    const long G = last - first + 1;
    // Dominance window: every group term above the floor margin, and above
    // the slower rungs' measured leakage (their subtraction is only as good
    // as their own fit, and that leakage decays slower than the group's
    // signal, so it rules the deep end of the window).
    long hi = L - 1;
    bool any = false;
    for (long k = first; k <= last; ++k) {
      Real ck = mag(c[static_cast<std::size_t>(k)]);
      if (!(ck > floor)) continue;
      any = true;
      Real rk = one / mag(mu[static_cast<std::size_t>(k)]);
      {
        long n = hi;
        while (n > 1 && !(ck * pow_si(rk, n + 1) > lim)) --n;
        if (n < hi) hi = n;
      }
      for (long s = 0; s < first; ++s) {
        std::size_t ss = static_cast<std::size_t>(s);
        if (!(eps_term[ss] > Real(0L, Prec{bits}))) continue;
        Real cs = eps_term[ss] * mag(c[ss]) * Real(1024L, Prec{bits});
        if (!(cs > Real(0L, Prec{bits}))) continue;
        Real rs = one / mag(mu[ss]);
        long n = hi;
        while (n > 1 && !(ck * pow_si(rk, n + 1) > cs * pow_si(rs, n + 1))) --n;
        if (n < hi) hi = n;
      }
    }
    if (!any) return;
    long lo = hi / 2;
    if (lo < 1) lo = 1;
    const long rows = hi - lo + 1;
    if (rows < 2 * G + 4) return;

    // Peeled data: subtract the rungs outside this group once per call.
    std::vector<CNum> d(static_cast<std::size_t>(rows), CNum(0, Prec{bits}));
    {
      std::vector<CNum> pw;
      for (long k = 0; k < K; ++k)
        pw.push_back(pow_int(recip(mu[static_cast<std::size_t>(k)]), lo + 1));
      for (long n = lo; n <= hi; ++n) {
        CNum other(0, Prec{bits});
        for (long k = 0; k < K; ++k) {
          std::size_t ks = static_cast<std::size_t>(k);
          if (k < first || k > last) other += c[ks] * pw[ks];
          pw[ks] = pw[ks] * recip(mu[ks]);
        }
        d[static_cast<std::size_t>(n - lo)] = data[static_cast<std::size_t>(n)] - other;
      }
    }
    auto group_resid = [&](const std::vector<CNum>& cc, const std::vector<CNum>& mm) -> Real {
      Real s(0L, Prec{bits});
      std::vector<CNum> pw;
      for (long g = 0; g < G; ++g)
        pw.push_back(pow_int(recip(mm[static_cast<std::size_t>(g)]), lo + 1));
      for (long n = lo; n <= hi; ++n) {
        CNum modeln(0, Prec{bits});
        for (long g = 0; g < G; ++g) {
          std::size_t gs = static_cast<std::size_t>(g);
          modeln += cc[gs] * pw[gs];
          pw[gs] = pw[gs] * recip(mm[gs]);
        }
        s += norm2(d[static_cast<std::size_t>(n - lo)] - modeln);
      }
      return s;
    };

    std::vector<CNum> gc, gm;
    for (long k = first; k <= last; ++k) {
      gc.push_back(c[static_cast<std::size_t>(k)]);
      gm.push_back(mu[static_cast<std::size_t>(k)]);
    }
    Real step_stop = ldexp2(one, -(bits / 2));
    Real best = group_resid(gc, gm);
    for (long round = 0; round < rounds; ++round) {
      std::vector<std::vector<CNum>> A(static_cast<std::size_t>(rows),
                                       std::vector<CNum>(static_cast<std::size_t>(2 * G)));
      std::vector<CNum> r(static_cast<std::size_t>(rows));
      std::vector<CNum> pw;
      for (long g = 0; g < G; ++g)
        pw.push_back(pow_int(recip(gm[static_cast<std::size_t>(g)]), lo + 1));
      for (long n = lo; n <= hi; ++n) {
        std::size_t i = static_cast<std::size_t>(n - lo);
        CNum modeln(0, Prec{bits});
        for (long g = 0; g < G; ++g) {
          std::size_t gs = static_cast<std::size_t>(g);
          CNum term = gc[gs] * pw[gs];
          modeln += term;
          A[i][gs] = pw[gs];
          A[i][static_cast<std::size_t>(G + g)] =
              term * recip(gm[gs]) * CNum(-(n + 1), Prec{bits});
          pw[gs] = pw[gs] * recip(gm[gs]);
        }
        r[i] = d[i] - modeln;
      }
      std::vector<CNum> dx = least_squares_mgs(std::move(A), std::move(r));
      // Backtracking acceptance: a distant seed can put a full Gauss-Newton
      // step outside the linearization basin (the residual is exponential in
      // the parameters), so shrink until the windowed residual decreases.
      Real scale = one;
      bool accepted = false;
      Real worst(0L, Prec{bits});
      for (int t = 0; t < 7 && !accepted; ++t) {
        std::vector<CNum> c_try = gc, mu_try = gm;
        bool valid = true;
        worst = Real(0L, Prec{bits});
        for (long g = 0; g < G && valid; ++g) {
          std::size_t gs = static_cast<std::size_t>(g);
          CNum step = dx[static_cast<std::size_t>(G + g)] * scale;
          Real rel = mag(step) / mag(gm[gs]);
          if (rel > worst) worst = rel;
          if (rel > Real(0.5, Prec{bits})) valid = false;  // trust cap
          c_try[gs] += dx[gs] * scale;
          mu_try[gs] += step;
          if (!mu_try[gs].re.is_finite() || !mu_try[gs].im.is_finite() ||
              !(mag(mu_try[gs]) > one)) {
            valid = false;
          }
        }
        if (valid) {
          Real rn = group_resid(c_try, mu_try);
          if (rn < best) {
            best = rn;
            gc = std::move(c_try);
            gm = std::move(mu_try);
            accepted = true;
          }
        }
        scale = ldexp2(scale, -1);
      }
      if (!accepted || !(worst > step_stop)) break;
    }
    for (long k = first; k <= last; ++k) {
      std::size_t gs = static_cast<std::size_t>(k - first);
      c[static_cast<std::size_t>(k)] = gc[gs];
      mu[static_cast<std::size_t>(k)] = gm[gs];
      // Relative residual of this term over the window: the leakage budget
      // faster rungs must stand clear of when they pick their own windows.
      Real power(0L, Prec{bits});
      Real rk = one / mag(gm[gs]);
      Real ck = mag(gc[gs]);
      for (long n = lo; n <= hi; ++n) {
        Real s = ck * pow_si(rk, n + 1);
        power += s * s;
      }
      if (power > Real(0L, Prec{bits})) {
        eps_term[static_cast<std::size_t>(k)] = sqrt(best / power);
      }
    }
  };

  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& [first, last] : groups) refine_group(first, last);
  }
  std::vector<std::pair<CNum, CNum>> terms;
  for (long k = 0; k < K; ++k)
    terms.emplace_back(c[static_cast<std::size_t>(k)], mu[static_cast<std::size_t>(k)]);
  return make_exponential_model(std::move(terms), model.tail_rate);
}

PoleReport pade_poles(const PowerSeries& series, long m) {
  const long bits = series.bits;
  Real one(1L, Prec{bits});
  if (m < 1) fail(ErrorCode::BadInput, "approximant order must be >= 1");
  if (2 * m >= static_cast<long>(series.coeffs.size())) {
    fail(ErrorCode::WindowTooShort, "need series length > 2m");
  }
  if (!(mag(series.coeffs[static_cast<std::size_t>(2 * m)]) > series.floor)) {
    fail(ErrorCode::WindowBelowFloor, "trailing series coefficients are below the floor");
  }
  PoleReport report;
  Real pivot_tol = ldexp2(one, -(bits - 48));
  std::vector<CNum> q;
  long mm = m;
  const long len = static_cast<long>(series.coeffs.size());
  // If the series is rational with denominator degree d < mm, the shifted
  // coefficient matrix has numerical rank d and the square solve below returns
  // arbitrary-direction null-space garbage (huge fake poles with huge residues
  // that defeat residue-based filtering). Collapse the order to the detected
  // rank first.
  for (;;) {
    long rows = std::min<long>(len - 1 - mm, 3 * mm + 8);
    if (rows < mm + 1) break;  // too short to judge the rank; let the solver try
    std::vector<std::vector<CNum>> C(static_cast<std::size_t>(rows),
                                     std::vector<CNum>(static_cast<std::size_t>(mm) + 1));
    for (long r = 0; r < rows; ++r)
      for (long j = 0; j <= mm; ++j)
        C[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
            series.coeffs[static_cast<std::size_t>(mm + 1 + r - j)];
    std::vector<Real> sv = singular_values_jacobi(std::move(C), bits);
    Real cut = sv[0] * ldexp2(one, -(bits - kGuardBits - 16));
    long rank = 0;
    for (std::size_t k = 0; k < sv.size(); ++k)
      if (sv[k] > cut) rank = static_cast<long>(k) + 1;
    if (rank >= mm || mm == 1) break;
    report.retried_orders.push_back(mm);
    mm = std::max<long>(rank, 1);
  }
  for (; mm >= 1; --mm) {
    // sum_{i=0..mm} q_i c_{n-i} = 0 for n = mm+1..2mm, with q_0 = 1.
    std::vector<std::vector<CNum>> A(static_cast<std::size_t>(mm),
                                     std::vector<CNum>(static_cast<std::size_t>(mm)));
    std::vector<CNum> rhs(static_cast<std::size_t>(mm));
    for (long r = 0; r < mm; ++r) {
      long n = mm + 1 + r;
      for (long i = 1; i <= mm; ++i)
        A[static_cast<std::size_t>(r)][static_cast<std::size_t>(i - 1)] =
            series.coeffs[static_cast<std::size_t>(n - i)];
      rhs[static_cast<std::size_t>(r)] = -series.coeffs[static_cast<std::size_t>(n)];
    }
    auto sol = solve_linear_system(std::move(A), std::move(rhs), pivot_tol);
    if (!sol.has_value()) {
      report.retried_orders.push_back(mm);
      continue;
    }
    q.assign(1, CNum(1, Prec{bits}));
    for (const CNum& qi : *sol) q.push_back(qi);
    break;
  }
  if (mm < 1) {
    fail(ErrorCode::SingularToeplitz,
         "denominator system singular at every order down to 1");
  }
  report.order = {mm, mm};
  // Numerator: first mm+1 coefficients of series*q.
  std::vector<CNum> p(static_cast<std::size_t>(mm) + 1, CNum(0, Prec{bits}));
  for (long n = 0; n <= mm; ++n) {
    CNum acc(0, Prec{bits});
    for (long i = 0; i <= n && i <= mm; ++i)
      acc += q[static_cast<std::size_t>(i)] * series.coeffs[static_cast<std::size_t>(n - i)];
    p[static_cast<std::size_t>(n)] = acc;
  }
  // Strip negligible leading (top-degree) denominator coefficients before
  // root finding.
  std::vector<CNum> qt = q;
  {
    Real qmax(0L, Prec{bits});
    for (const CNum& c : qt) {
      Real mg = mag(c);
      if (mg > qmax) qmax = mg;
    }
    Real cut = ldexp2(qmax, -(bits - 48));
    while (qt.size() > 1 && mag(qt.back()) < cut) qt.pop_back();
  }
  std::vector<CNum> roots = polynomial_roots(qt, bits);
  std::vector<CNum> pzeros = polynomial_roots(p, bits);

  struct Cand {
    CNum z, res;
  };
  std::vector<Cand> cands;
  for (const CNum& w : roots) {
    if (!(mag(w) > one)) continue;
    CNum dq(0, Prec{bits});
    {
      CNum acc(0, Prec{bits});
      for (std::size_t i = qt.size(); i-- > 0;) {
        dq = dq * w + acc;
        acc = acc * w + qt[i];
      }
    }
    CNum pv(0, Prec{bits});
    for (std::size_t i = p.size(); i-- > 0;) pv = pv * w + p[i];
    if (dq.is_zero()) continue;
    cands.push_back({w, pv / dq});
  }
  if (cands.empty()) {
    fail(ErrorCode::AllSpurious, "no candidate pole outside the closed unit disk");
  }
  Real max_res(0L, Prec{bits});
  for (const Cand& c : cands) {
    Real mr = mag(c.res);
    if (mr > max_res) max_res = mr;
  }
  Real res_cut = Real("1e-10", Prec{bits}) * max_res;
  for (const Cand& c : cands) {
    Real merge_radius = Real("1e-6", Prec{bits}) * mag(c.z);
    bool near_zero = false;
    for (const CNum& zz : pzeros) {
      if (mag(c.z - zz) < merge_radius) {
        near_zero = true;
        break;
      }
    }
    if (mag(c.res) < res_cut || near_zero) {
      ++report.spurious_rejected;
      continue;
    }
    report.poles.emplace_back(c.z, c.res);
  }
  if (report.poles.empty()) fail(ErrorCode::AllSpurious, "all candidate poles were spurious");
  std::sort(report.poles.begin(), report.poles.end(),
            [](const std::pair<CNum, CNum>& u, const std::pair<CNum, CNum>& v) {
              Real mu = mag(u.first), mv = mag(v.first);
              if (mu != mv) return mu < mv;
              return arg(u.first) < arg(v.first);
            });
  return report;
}

AnalyticityEstimate analyticity_radius(const LaurentSlice& slice, long lo, long hi) {
  const long bits = slice.bits;
  if (slice.n_max() < 1) fail(ErrorCode::WindowTooShort, "no positive-index coefficients");
  std::vector<Real> mags;  // index n -> |b_n| for n >= 0 (index 0 unused sentinel)
  mags.reserve(static_cast<std::size_t>(slice.n_max()) + 1);
  for (long n = 0; n <= slice.n_max(); ++n) {
    mags.push_back(slice.has(n) ? mag(slice.at(n)) : Real(0L, Prec{bits}));
  }
  if (lo < 0) {
    auto w = auto_rate_window(mags, slice.floor);
    lo = w.first;
    hi = w.second;
    if (lo < 0) {
      fail(ErrorCode::WindowBelowFloor,
           "no usable run of positive-index coefficients above 10x floor");
    }
  }
  RateEstimate est = fit_decay_rate(mags, lo, hi, slice.floor);
  AnalyticityEstimate out;
  Real one(1L, Prec{bits});
  out.radius = one / est.rate;
  out.stderr_ = est.stderr_ / (est.rate * est.rate);
  out.window_lo = lo;
  out.window_hi = hi;
  return out;
}

}  // namespace szegolab
