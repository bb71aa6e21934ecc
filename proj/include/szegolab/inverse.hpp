#pragma once

// Inverse direction: weight on the circle -> trigonometric moments ->
// recursion coefficients, plus two independent integral formulas for the
// coefficients used as cross-checks.

#include <vector>

#include "szegolab/szego.hpp"

namespace szegolab {

// c[n] = integral of e^{-in theta} w(theta) d theta / (2 pi), n = 0..N.
// Negative indices follow by conjugation.
struct MomentSequence {
  std::vector<CNum> c;
  long bits = 256;
};

// Trapezoid (= DFT) quadrature on M uniform points; spectrally accurate for
// smooth weights.  Requires M >= 8N and M a power of two.  A weight whose
// mass differs from 1 by more than 1e-6 raises NotNormalized unless
// auto_normalize is set, in which case all moments are divided by c[0].
MomentSequence moments_from_weight(const Weight& w, long N, long M, bool auto_normalize = false);

// Moments of the reconstructed weight D0^2 / |dinv(e^{i theta})|^2, evaluated
// as a contour integral by residues over the reflected-polynomial roots.
// Grid-free, so it stays accurate when dinv has zeros hugging the circle
// (reconstructions of generic coefficient lists concentrate the weight into
// spikes whose uniform-quadrature resolution would be astronomical).
// NonSzegoWeight if dinv has a zero on or inside the circle.
MomentSequence moments_from_szego_data(const SzegoData& sd, long N);

// Moment-domain recursion: produces alpha_0..alpha_{N-1} from c_0..c_N by
// maintaining the polynomial pair against the moment functional,
//   conj(alpha_n) = <1, z Phi_n> / ||Phi_n||^2.
// NotPositiveDefinite at the first n where the norm fails to stay positive or
// the coefficient leaves the unit disk.
std::vector<CNum> alphas_from_moments(const MomentSequence& ms);

// -kappa_inf * integral conj(Phi_{n+1}(e)) D(e)^{-1} dmu over the circle,
// computed at M and 2M points with agreement required (QuadratureUnresolved).
// Equals alpha_n when the measure is w dtheta/2pi.
CNum alpha_check_freud(long n, const SzegoData& sd, const Weight& w, long M);

// -kappa_inf^{-1} kappa_n^2 * integral conj(Phi_n(e)) [D(e)^{-1} - D(0)^{-1}]
// e^{-i theta} dmu; an independent route to the same coefficient.
CNum alpha_check_2414(long n, const SzegoData& sd, const Weight& w, long M);

}  // namespace szegolab
