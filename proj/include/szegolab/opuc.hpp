#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "szegolab/series.hpp"

namespace szegolab {

// Exponential-sum model for recursion coefficients:
//   alpha_n ~ sum_k c_k mu_k^{-n-1},  error O(tail_rate^{-n}).
// tail_rate is radius-like: the claimed error decays like tail_rate^{-n} and
// tail_rate exceeds every |mu_k| for a well-formed model (+inf when the model
// is exact).
struct ExponentialModel {
  std::vector<std::pair<CNum, CNum>> terms;  // (c_k, mu_k)
  Real tail_rate;

  bool empty() const { return terms.empty(); }
};

ExponentialModel make_exponential_model(std::vector<std::pair<CNum, CNum>> terms, Real tail_rate);

// Producer of recursion coefficients alpha_n in the unit disk, with the
// convention alpha_{-1} = -1.
struct VerblunskySequence {
  enum class Kind { Explicit, RogersSzego, SingleMoment, Exponential };

  Kind kind = Kind::Explicit;
  long bits = 256;
  std::vector<CNum> list;  // Explicit: zero beyond the stored prefix
  Real q;                  // RogersSzego parameter, 0 < q < 1
  Real a;                  // SingleMoment parameter, 0 < a < 1
  ExponentialModel model;  // Exponential
  std::function<CNum(long)> tail;  // optional additive tail for Exponential
};

VerblunskySequence verblunsky_explicit(std::vector<CNum> list, long bits);
VerblunskySequence verblunsky_rogers_szego(const Real& q, long bits);
VerblunskySequence verblunsky_single_moment(const Real& a, long bits);
VerblunskySequence verblunsky_exponential(ExponentialModel model, std::function<CNum(long)> tail,
                                          long bits);

// alpha_n; n = -1 returns -1.  Throws ModulusViolation if |alpha_n| >= 1.
CNum alpha(const VerblunskySequence& seq, long n);

// alpha_0 .. alpha_N as a vector (iterative powers; faster than per-n calls).
std::vector<CNum> alphas_upto(const VerblunskySequence& seq, long N);

// Monic orthogonal polynomial and its reversed companion at one degree:
//   phistar[j] = conj(phi[n-j]),  kappa_n = 1/||Phi_n||.
struct PolynomialPair {
  long n = 0;
  std::vector<CNum> phi;      // coefficients, degree n, monic
  std::vector<CNum> phistar;  // coefficients, degree <= n
  Real kappa;
};

PolynomialPair initial_pair(long bits);

// One recursion step:
//   Phi_{n+1} = z Phi_n - conj(alpha_n) Phi_n*,
//   Phi*_{n+1} = Phi_n* - alpha_n z Phi_n,
//   kappa_{n+1} = kappa_n (1-|alpha_n|^2)^{-1/2}.
PolynomialPair recursion_step(const PolynomialPair& p, const CNum& alpha_n);

// Pairs for n = 0..N.  Verifies the partial-sum identity
// Phi_N* = 1 - sum_{j<N} alpha_j z Phi_j coefficientwise; IdentityDrift if the
// residual exceeds 100x the coefficient floor.
std::vector<PolynomialPair> phi_upto(const VerblunskySequence& seq, long N);

// (Phi_n(z), Phi_n*(z)) by Horner evaluation.
std::pair<CNum, CNum> eval_phi(const PolynomialPair& p, const CNum& z);

// Pointwise recursion values (Phi_j(z), Phi_j*(z)) for j = 0..N at fixed z;
// O(N) work, no coefficient storage.
std::vector<std::pair<CNum, CNum>> phi_values_at(const VerblunskySequence& seq, long N,
                                                 const CNum& z);

// prod_{j=0..J-1} (1-|alpha_j|^2)^{1/2}; converges to D(0) as J grows.
Real d0_from_alphas(const VerblunskySequence& seq, long J);

// kappa_n = prod_{j<n} (1-|alpha_j|^2)^{-1/2} for n = 0..N.
std::vector<Real> kappa_ladder(const VerblunskySequence& seq, long N);

}  // namespace szegolab
