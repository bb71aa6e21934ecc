#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "szegolab/opuc.hpp"
#include "szegolab/series.hpp"

namespace szegolab {

// --- dense linear-algebra kernels (complex, configurable precision) ---

// Gaussian elimination with partial pivoting; nullopt when a pivot falls under
// pivot_tol * row scale.
std::optional<std::vector<CNum>> solve_linear_system(std::vector<std::vector<CNum>> A,
                                                     std::vector<CNum> b, const Real& pivot_tol);

// Least squares min ||Ax - b|| via modified Gram-Schmidt QR (rows >= cols).
std::vector<CNum> least_squares_mgs(std::vector<std::vector<CNum>> A, std::vector<CNum> b);

// Singular values (descending) by one-sided Jacobi on the columns.
std::vector<Real> singular_values_jacobi(std::vector<std::vector<CNum>> A, long bits);

// All roots of sum_k coeffs[k] z^k by the Aberth-Ehrlich simultaneous
// iteration with deterministic initial points.  Exact zero leading/trailing
// coefficients are stripped (roots at 0 are returned explicitly).
std::vector<CNum> polynomial_roots(const std::vector<CNum>& coeffs, long bits);

// --- exponential-sum fitting ---

struct PronyFit {
  ExponentialModel model;
  Real residual_rate;  // radius: post-fit residual decays like residual_rate^{-n}; +inf if exact
  Real condition;      // sigma_1/sigma_K of the Hankel at the chosen order
  bool saturated = false;  // no clear singular-value gap; order forced to K_max
};

// Recover (c_k, mu_k) with alpha_n ~ sum_k c_k mu_k^{-n-1} from a prefix of
// the sequence.  Order chosen by the largest singular-value ratio gap
// (>= 1e6); with no clear gap the fit saturates at K_max.  OrderAmbiguous on
// confluent recurrence roots (polynomial-amplitude inputs).
PronyFit prony_fit(const std::vector<CNum>& alphas, long K_max);

// Gauss-Newton polish of an exponential model against the sequence it was
// fitted from.  Works on a late index window (where the modeled slow terms
// dominate whatever faster-decaying terms the model omits, but every modeled
// term still stands clear of the data floor), so the refined exponents are
// limited by that leakage rather than by the Hankel fit's conditioning.
// Returns the model unchanged when the window is too short to solve.
ExponentialModel refine_exponential_model(const ExponentialModel& model,
                                          const std::vector<CNum>& data, long rounds = 3);

// --- rational (diagonal) approximation pole detection ---

struct PoleReport {
  std::vector<std::pair<CNum, CNum>> poles;  // (location, residue), |location| > 1
  long spurious_rejected = 0;
  std::pair<long, long> order{0, 0};         // realized [m/m]
  std::vector<long> retried_orders;          // orders abandoned as singular
};

// Denominator roots of the [m/m] rational approximant of the series, with
// spurious (Froissart) poles filtered by residue magnitude and pole-zero
// proximity.  Singular Toeplitz systems retry at m-1 automatically.
PoleReport pade_poles(const PowerSeries& series, long m);

struct AnalyticityEstimate {
  Real radius;   // 1 / fitted decay rate of the positive-index coefficients
  Real stderr_;  // standard error propagated to the radius
  long window_lo = 0, window_hi = 0;
};

// Outer analyticity radius from a Laurent slice: reciprocal of the fitted
// decay rate of |b_n|, n > 0, over an automatic window (longest run above
// 10x floor after index 5) unless an explicit window is given.
AnalyticityEstimate analyticity_radius(const LaurentSlice& slice, long lo = -1, long hi = -1);

}  // namespace szegolab
