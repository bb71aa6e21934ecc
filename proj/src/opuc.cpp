#include "szegolab/opuc.hpp"

#include <string>

namespace szegolab {

ExponentialModel make_exponential_model(std::vector<std::pair<CNum, CNum>> terms, Real tail_rate) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const CNum& mu = terms[i].second;
    if (!(mag(mu) > Real(1L, Prec{mu.bits()}))) {
      fail(ErrorCode::BadInput, "exponential-model exponent " + mu.to_string() +
                                    " must have modulus > 1");
    }
    for (std::size_t j = 0; j < i; ++j) {
      Real sep = mag(terms[i].second - terms[j].second);
      Real scale = mag(terms[i].second) + mag(terms[j].second);
      if (!(sep > ldexp2(scale, -40))) {
        fail(ErrorCode::BadInput, "exponential-model exponents must be pairwise distinct");
      }
    }
  }
  ExponentialModel m;
  m.terms = std::move(terms);
  m.tail_rate = std::move(tail_rate);
  return m;
}

VerblunskySequence verblunsky_explicit(std::vector<CNum> list, long bits) {
  VerblunskySequence s;
  s.kind = VerblunskySequence::Kind::Explicit;
  s.bits = bits;
  s.list = std::move(list);
  return s;
}

VerblunskySequence verblunsky_rogers_szego(const Real& q, long bits) {
  if (!(q > Real(0L, Prec{bits})) || !(q < Real(1L, Prec{bits}))) {
    fail(ErrorCode::BadInput, "rogers-szego parameter q must satisfy 0 < q < 1");
  }
  VerblunskySequence s;
  s.kind = VerblunskySequence::Kind::RogersSzego;
  s.bits = bits;
  s.q = q;
  return s;
}

VerblunskySequence verblunsky_single_moment(const Real& a, long bits) {
  if (!(a > Real(0L, Prec{bits})) || !(a < Real(1L, Prec{bits}))) {
    fail(ErrorCode::BadInput, "single-moment parameter a must satisfy 0 < a < 1");
  }
  VerblunskySequence s;
  s.kind = VerblunskySequence::Kind::SingleMoment;
  s.bits = bits;
  s.a = a;
  return s;
}

VerblunskySequence verblunsky_exponential(ExponentialModel model, std::function<CNum(long)> tail,
                                          long bits) {
  VerblunskySequence s;
  s.kind = VerblunskySequence::Kind::Exponential;
  s.bits = bits;
  s.model = std::move(model);
  s.tail = std::move(tail);
  return s;
}

namespace {
// mu_plus/mu_minus of the single-moment family: 1/a +- sqrt(1/a^2 - 1).
std::pair<Real, Real> single_moment_mus(const Real& a, long bits) {
  Real inv_a = Real(1L, Prec{bits}) / a;
  Real root = sqrt(inv_a * inv_a - Real(1L, Prec{bits}));
  return {inv_a + root, inv_a - root};
}

CNum checked(CNum v, long n, long bits) {
  if (!v.is_finite() || !(mag(v) < Real(1L, Prec{bits}))) {
    fail(ErrorCode::ModulusViolation,
         "alpha_" + std::to_string(n) + " = " + v.to_string() + " is not inside the unit disk");
  }
  return v;
}
}  // namespace

CNum alpha(const VerblunskySequence& seq, long n) {
  const long bits = seq.bits;
  if (n < -1) fail(ErrorCode::BadInput, "alpha index must be >= -1");
  if (n == -1) return CNum(-1, Prec{bits});
  switch (seq.kind) {
    case VerblunskySequence::Kind::Explicit: {
      if (n >= static_cast<long>(seq.list.size())) return CNum(0, Prec{bits});
      return checked(seq.list[static_cast<std::size_t>(n)], n, bits);
    }
    case VerblunskySequence::Kind::RogersSzego: {
      Real v = pow_si(sqrt(seq.q), n + 1);
      if (n % 2 != 0) v = -v;
      return checked(CNum(v), n, bits);
    }
    case VerblunskySequence::Kind::SingleMoment: {
      auto [mp, mm] = single_moment_mus(seq.a, bits);
      Real num = mp - mm;
      Real den = pow_si(mp, n + 2) - pow_si(mm, n + 2);
      return checked(CNum(-(num / den)), n, bits);
    }
    case VerblunskySequence::Kind::Exponential: {
      CNum acc(0, Prec{bits});
      for (const auto& [c, mu] : seq.model.terms) acc += c * pow_int(mu, -n - 1);
      if (seq.tail) acc += seq.tail(n);
      return checked(acc, n, bits);
    }
  }
  fail(ErrorCode::BadInput, "unknown sequence kind");
}

std::vector<CNum> alphas_upto(const VerblunskySequence& seq, long N) {
  const long bits = seq.bits;
  std::vector<CNum> out;
  out.reserve(static_cast<std::size_t>(N + 1));
  switch (seq.kind) {
    case VerblunskySequence::Kind::RogersSzego: {
      Real rq = sqrt(seq.q);
      Real p = rq;  // q^{(n+1)/2} at n=0
      for (long n = 0; n <= N; ++n) {
        Real v = (n % 2 != 0) ? -p : p;
        out.push_back(checked(CNum(v), n, bits));
        p = p * rq;
      }
      return out;
    }
    case VerblunskySequence::Kind::SingleMoment: {
      auto [mp, mm] = single_moment_mus(seq.a, bits);
      Real num = mp - mm;
      Real pp = mp * mp, pm = mm * mm;  // mu^{n+2} at n=0
      for (long n = 0; n <= N; ++n) {
        out.push_back(checked(CNum(-(num / (pp - pm))), n, bits));
        pp = pp * mp;
        pm = pm * mm;
      }
      return out;
    }
    case VerblunskySequence::Kind::Exponential: {
      std::vector<CNum> powers;  // mu_k^{-n-1} running
      for (const auto& [c, mu] : seq.model.terms) powers.push_back(recip(mu));
      for (long n = 0; n <= N; ++n) {
        CNum acc(0, Prec{bits});
        for (std::size_t k = 0; k < powers.size(); ++k) {
          acc += seq.model.terms[k].first * powers[k];
          powers[k] = powers[k] * recip(seq.model.terms[k].second);
        }
        if (seq.tail) acc += seq.tail(n);
        out.push_back(checked(acc, n, bits));
      }
      return out;
    }
    case VerblunskySequence::Kind::Explicit:
    default: {
      for (long n = 0; n <= N; ++n) out.push_back(alpha(seq, n));
      return out;
    }
  }
}

PolynomialPair initial_pair(long bits) {
  PolynomialPair p;
  p.n = 0;
  p.phi = {CNum(1, Prec{bits})};
  p.phistar = {CNum(1, Prec{bits})};
  p.kappa = Real(1L, Prec{bits});
  return p;
}

PolynomialPair recursion_step(const PolynomialPair& p, const CNum& alpha_n) {
  const long bits = p.kappa.bits();
  Real one(1L, Prec{bits});
  Real a2 = norm2(alpha_n);
  if (!(a2 < one)) {
    fail(ErrorCode::ModulusViolation, "recursion coefficient " + alpha_n.to_string() +
                                          " is not inside the unit disk");
  }
  PolynomialPair out;
  out.n = p.n + 1;
  const std::size_t len = static_cast<std::size_t>(out.n) + 1;
  out.phi.assign(len, CNum(0, Prec{bits}));
  out.phistar.assign(len, CNum(0, Prec{bits}));
  CNum ca = conj(alpha_n);
  for (std::size_t j = 0; j < len; ++j) {
    CNum zphi = (j >= 1 && j - 1 < p.phi.size()) ? p.phi[j - 1] : CNum(0, Prec{bits});
    CNum ps = j < p.phistar.size() ? p.phistar[j] : CNum(0, Prec{bits});
    out.phi[j] = zphi - ca * ps;
    out.phistar[j] = ps - alpha_n * zphi;
  }
  out.kappa = p.kappa / sqrt(one - a2);
  return out;
}

std::vector<PolynomialPair> phi_upto(const VerblunskySequence& seq, long N) {
  const long bits = seq.bits;
  std::vector<CNum> al = alphas_upto(seq, N > 0 ? N - 1 : 0);
  std::vector<PolynomialPair> out;
  out.reserve(static_cast<std::size_t>(N + 1));
  out.push_back(initial_pair(bits));
  for (long n = 0; n < N; ++n) {
    out.push_back(recursion_step(out.back(), al[static_cast<std::size_t>(n)]));
  }
  // Partial-sum identity: Phi_N* = 1 - sum_{j<N} alpha_j z Phi_j.
  std::vector<CNum> acc(static_cast<std::size_t>(N) + 1, CNum(0, Prec{bits}));
  acc[0] = CNum(1, Prec{bits});
  Real max_mag(0L, Prec{bits});
  for (long j = 0; j < N; ++j) {
    const auto& phi = out[static_cast<std::size_t>(j)].phi;
    const CNum& aj = al[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < phi.size(); ++i) {
      acc[i + 1] -= aj * phi[i];
      Real m = mag(acc[i + 1]);
      if (m > max_mag) max_mag = m;
    }
  }
  Real floor = magnitude_floor(bits, max_mag);
  Real worst(0L, Prec{bits});
  const auto& ps = out.back().phistar;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(N); ++i) {
    CNum want = i < ps.size() ? ps[i] : CNum(0, Prec{bits});
    Real diff = mag(acc[i] - want);
    if (diff > worst) worst = diff;
  }
  if (worst > Real(100L, Prec{bits}) * floor) {
    fail(ErrorCode::IdentityDrift, "partial-sum identity residual " + worst.to_string() +
                                       " exceeds 100x floor " + floor.to_string());
  }
  return out;
}

std::pair<CNum, CNum> eval_phi(const PolynomialPair& p, const CNum& z) {
  const long bits = z.bits() > p.kappa.bits() ? z.bits() : p.kappa.bits();
  CNum f(0, Prec{bits}), g(0, Prec{bits});
  for (std::size_t i = p.phi.size(); i-- > 0;) f = f * z + p.phi[i];
  for (std::size_t i = p.phistar.size(); i-- > 0;) g = g * z + p.phistar[i];
  return {f, g};
}

std::vector<std::pair<CNum, CNum>> phi_values_at(const VerblunskySequence& seq, long N,
                                                 const CNum& z) {
  const long bits = seq.bits;
  std::vector<CNum> al = alphas_upto(seq, N > 0 ? N - 1 : 0);
  std::vector<std::pair<CNum, CNum>> out;
  out.reserve(static_cast<std::size_t>(N + 1));
  CNum phi(1, Prec{bits}), phistar(1, Prec{bits});
  out.emplace_back(phi, phistar);
  for (long n = 0; n < N; ++n) {
    const CNum& a = al[static_cast<std::size_t>(n)];
    CNum zphi = z * phi;
    CNum nphi = zphi - conj(a) * phistar;
    phistar = phistar - a * zphi;
    phi = nphi;
    out.emplace_back(phi, phistar);
  }
  return out;
}

Real d0_from_alphas(const VerblunskySequence& seq, long J) {
  const long bits = seq.bits;
  std::vector<CNum> al = alphas_upto(seq, J > 0 ? J - 1 : 0);
  Real one(1L, Prec{bits});
  Real acc = one;
  for (long j = 0; j < J; ++j) acc *= one - norm2(al[static_cast<std::size_t>(j)]);
  return sqrt(acc);
}

std::vector<Real> kappa_ladder(const VerblunskySequence& seq, long N) {
  const long bits = seq.bits;
  std::vector<CNum> al = alphas_upto(seq, N > 0 ? N - 1 : 0);
  Real one(1L, Prec{bits});
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(N + 1));
  Real k = one;
  out.push_back(k);
  for (long n = 0; n < N; ++n) {
    k = k / sqrt(one - norm2(al[static_cast<std::size_t>(n)]));
    out.push_back(k);
  }
  return out;
}

}  // namespace szegolab
