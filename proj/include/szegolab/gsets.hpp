#pragma once

// Generated-set algebra on finite point sets in the exterior of the unit
// disk: layered product sets, their closure under the (k unbarred) x (k-1
// conjugated) product operation up to a truncation radius, minimal-generator
// extraction, and factorization counting.

#include <utility>
#include <vector>

#include "szegolab/cnum.hpp"
#include "szegolab/errors.hpp"

namespace szegolab {

// Finite set of points, each with modulus in (1, radius_cut).  Points within
// merge_eps (scaled by modulus) of each other are merged on construction.
struct ExteriorSet {
  std::vector<CNum> points;  // ascending modulus, ties by ascending argument
  Real radius_cut;
  Real merge_eps;
};

// Validates moduli > 1 (BadInput otherwise), drops points with modulus >=
// radius_cut, sorts, and merges near-duplicates.
ExteriorSet make_exterior_set(std::vector<CNum> points, Real radius_cut,
                              Real merge_eps = Real(1e-9));

bool set_contains(const ExteriorSet& s, const CNum& z);
// Every point of a appears in b (within b's merge tolerance).
bool set_subset(const ExteriorSet& a, const ExteriorSet& b);
bool set_equal(const ExteriorSet& a, const ExteriorSet& b);

// Layer k: all products of k set elements times k-1 conjugated set elements,
// truncated to modulus < radius_cut.  Layer 1 is the set itself.
ExteriorSet g_layer(const ExteriorSet& T, long k);

// Union of all layers whose minimum possible modulus rho_min^(2k-1) stays
// below radius_cut.  Idempotent: g_full(g_full(T)) = g_full(T).
ExteriorSet g_full(const ExteriorSet& T);

// Union of layers 2 and up (triple products and beyond).  This is the
// membership test used by the generator-extraction scan.
ExteriorSet g_tail3(const ExteriorSet& T);

// Greedy generator extraction: scan by ascending modulus (ties by argument),
// keep a point iff it does not already lie in g_tail3 of the points kept so
// far.  Precondition (checked): Q is closed, g_full(Q) = Q; NotGenerated
// otherwise.  The result W satisfies g_full(W) = Q and g_tail3(W) ∩ W = ∅.
ExteriorSet minimal_generators(const ExteriorSet& Q);

// Same greedy filter without the closure precondition or postconditions;
// used to reduce a fitted pole set to its first-layer representatives when
// the truncation radius has cut the set mid-layer.
ExteriorSet reduce_generated(const ExteriorSet& Q);

struct Factorization {
  CNum a, b, c;  // z0 = a * b * conj(c); (a, b) stored with |a| <= |b|
};

struct MembershipReport {
  long count = 0;
  std::vector<Factorization> factorizations;
};

// Counts the distinct ways z0 factors as a product of two set elements and
// one conjugated set element, with the two plain slots unordered and the
// conjugated slot distinguished.
MembershipReport g3_membership(const CNum& z0, const ExteriorSet& T);

}  // namespace szegolab
