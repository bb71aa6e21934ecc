#pragma once

#include <functional>
#include <vector>

#include "szegolab/opuc.hpp"
#include "szegolab/series.hpp"

namespace szegolab {

// Nonnegative integrable weight on the circle satisfying the finite-log
// (Szego) condition.
struct Weight {
  std::function<Real(const Real&)> fn;  // theta in [0,2pi) -> w(theta)
  // Optional fast path: all samples on the uniform grid theta_k = 2 pi k / M
  // at once (weights with series structure can batch this through an FFT
  // instead of per-node evaluation).  Must agree with fn on those nodes.
  std::function<std::vector<Real>(long)> grid;
  bool smooth = true;
};

Weight weight_constant(long bits);
Weight weight_single_moment(const Real& a, long bits);  // 1 - a cos(theta)
Weight weight_rogers_szego(const Real& q, long bits);
// |D(e^{i theta})|^2 reconstructed from a coefficient sequence:
// w = D0^2 / |dinv(e^{i theta})|^2 with dinv of degree N.
Weight weight_from_sequence(const VerblunskySequence& seq, long N);

// Outer-function value D(z), |z| < 1, by trapezoid quadrature of the
// boundary-kernel integral of log w over M grid points.
CNum eval_D_from_weight(const Weight& w, const CNum& z, long M, long bits);

// Taylor data of the normalized inverse outer function dinv = D(0)/D and of
// the coefficient generating function S (S_0 = 1, S_n = -alpha_{n-1}).
struct SzegoData {
  PowerSeries dinv;      // e_n
  PowerSeries d;         // reciprocal series of dinv, d(0) = 1
  PowerSeries S;
  Real D0;               // D(0) > 0
  long bits = 256;
  Real alpha_ratio;      // fitted decay ratio of |alpha_n| (= 1/R)
  Real dinv_radius;      // validated convergence radius of dinv (1/rate of e_n)
  Real dinv_tail;        // observed truncation increment of the e_n build
};

// Coefficient recursion summed to J = N + extra steps, truncated at degree N.
SzegoData make_szego_data(const VerblunskySequence& seq, long N, long extra = 40);

PowerSeries dinv_series(const VerblunskySequence& seq, long N);
PowerSeries S_series(const VerblunskySequence& seq, long N);

CNum eval_dinv(const SzegoData& sd, const CNum& z);
CNum eval_S(const SzegoData& sd, const CNum& z);

// r(z) = conj(d(1/conj z)) * dinv(z) on the validated annulus
// 1 < |z| < dinv_radius*(1-margin).
CNum eval_r(const SzegoData& sd, const CNum& z, double margin = 0.02);

struct TwoPathLaurent {
  LaurentSlice slice;   // from circle sampling
  Real disagreement;    // max |sampling - convolution| over compared indices
  Real bound;           // tolerance the disagreement was checked against
};

// Laurent coefficients of r - S on |z| = rho via two independent paths
// (circle sampling and coefficient convolution b_n = sum_k conj(d_k) e_{n+k} - S_n);
// PathsDisagree when they differ beyond combined error bounds.
TwoPathLaurent r_minus_S_laurent(const SzegoData& sd, const Real& rho, long M);

// Third-order correction term: triple sum over model terms (k, l, r) of
//   c_k conj(c_l) c_r * conj(mu_l)^-1 mu_r^-1
//   * (1 - mu_k/z)^-1 (1 - mu_k^-1 conj(mu_l)^-1)^-1
//   * (1 - z mu_k^-1 conj(mu_l)^-1 mu_r^-1)^-1.
// Poles: {mu_k} and the triple products {mu_k conj(mu_l) mu_r}.
CNum q3_term(const ExponentialModel& model, const CNum& z, double margin = 1e-3);

// Pole locations of q3 from its factor structure, deduplicated within eps.
std::vector<CNum> q3_poles(const ExponentialModel& model, const Real& eps);

// Laurent coefficients of q3 for n = 0..n_max on the outer annulus
// max|mu_k| < |z| < min|triple product| (the inner poles contribute only
// negative indices there).
std::vector<CNum> q3_outer_coeffs(const ExponentialModel& model, long n_max, long bits);

// Leading-order predictor of Phi_n(z) for |z| below the third-power scale:
//   -dinv(z) sum_k conj(c_k) conj(mu_k)^{-n} (1 - z conj(mu_k))^{-1}.
CNum predictor_phi(const ExponentialModel& model, const SzegoData& sd, long n, const CNum& z,
                   double delta = 0.25);

// Second-order predictor of Phi_n*(z) - dinv(z):
//   -dinv(z) * z * sum_{k,l} conj(c_k) c_l mu_l^{-1}
//     (1 - z conj(mu_k))^{-1} (1 - conj(mu_k)^{-1} mu_l^{-1})^{-1}
//     (conj(mu_k) mu_l)^{-n}.
CNum predictor_phistar(const ExponentialModel& model, const SzegoData& sd, long n, const CNum& z,
                       double delta = 0.25);

// Pointwise value of r - S by the convergent partial-sum identity
//   (dbar - 1) - dbar * sum_{j>=1} alpha_{j-1} z (Phi_{j-1}(z) - dbar^{-1} z^{j-1}),
// dbar = conj(d(1/conj z)); converges for 1 <= |z| < R^3.  `alphas` must hold
// alpha_0..alpha_{Jmax-1}.
CNum r_minus_s_pointwise(const std::vector<CNum>& alphas, const SzegoData& sd, const CNum& z,
                         long Jmax);

}  // namespace szegolab
