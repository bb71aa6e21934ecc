#include "szegolab/gsets.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace szegolab {

namespace {

bool point_less(const CNum& u, const CNum& v) {
  Real mu = mag(u), mv = mag(v);
  if (mu != mv) return mu < mv;
  return arg(u) < arg(v);
}

bool points_close(const CNum& u, const CNum& v, const Real& eps) {
  Real scale = (mag(u) + mag(v)) * Real(0.5);
  Real one(1L);
  if (scale < one) scale = one;
  return mag(u - v) < eps * scale;
}

// All products of `count` elements drawn from pts with repetition, order
// ignored (nondecreasing index tuples), pruned once the running modulus
// reaches cut.  pts is sorted by ascending modulus and every modulus exceeds
// 1, so a partial product at or past the cut cannot recover: break, do not
// continue.
void products_of(const std::vector<CNum>& pts, long count, const Real& cut,
                 std::vector<CNum>& out) {
  std::function<void(std::size_t, long, const CNum&)> rec =
      [&](std::size_t start, long remaining, const CNum& acc) {
        if (remaining == 0) {
          out.push_back(acc);
          return;
        }
        for (std::size_t i = start; i < pts.size(); ++i) {
          CNum next = acc * pts[i];
          if (!(mag(next) < cut)) break;
          rec(i, remaining - 1, next);
        }
      };
  rec(0, count, CNum(1));
}

// Union of layers first_k and up; the layer index is capped by the smallest
// generator modulus: layer k products have modulus >= rho_min^(2k-1).
ExteriorSet layers_from(const ExteriorSet& T, long first_k) {
  ExteriorSet empty;
  empty.radius_cut = T.radius_cut;
  empty.merge_eps = T.merge_eps;
  if (T.points.empty()) return empty;
  Real rho_min = mag(T.points.front());
  std::vector<CNum> all;
  const long kLayerCap = 64;
  long k = 1;
  Real odd_power = rho_min;  // rho_min^(2k-1)
  while (odd_power < T.radius_cut) {
    if (k > kLayerCap) {
      fail(ErrorCode::BadInput,
           "truncation radius admits more than 64 product layers for this set");
    }
    if (k >= first_k) {
      ExteriorSet layer = g_layer(T, k);
      all.insert(all.end(), layer.points.begin(), layer.points.end());
    }
    ++k;
    odd_power = odd_power * rho_min * rho_min;
  }
  return make_exterior_set(std::move(all), T.radius_cut, T.merge_eps);
}

}  // namespace

ExteriorSet make_exterior_set(std::vector<CNum> points, Real radius_cut, Real merge_eps) {
  Real one(1L);
  if (!(radius_cut > one)) fail(ErrorCode::BadInput, "truncation radius must exceed 1");
  ExteriorSet s;
  s.radius_cut = radius_cut;
  s.merge_eps = merge_eps;
  std::sort(points.begin(), points.end(), point_less);
  for (const CNum& p : points) {
    Real m = mag(p);
    if (!(m > one)) {
      fail(ErrorCode::BadInput,
           "point " + p.to_string() + " lies inside the closed unit disk");
    }
    if (!(m < radius_cut)) continue;
    bool dup = false;
    for (const CNum& kept : s.points) {
      if (points_close(p, kept, merge_eps)) {
        dup = true;
        break;
      }
    }
    if (!dup) s.points.push_back(p);
  }
  return s;
}

bool set_contains(const ExteriorSet& s, const CNum& z) {
  for (const CNum& p : s.points) {
    if (points_close(p, z, s.merge_eps)) return true;
  }
  return false;
}

bool set_subset(const ExteriorSet& a, const ExteriorSet& b) {
  for (const CNum& p : a.points) {
    if (!set_contains(b, p)) return false;
  }
  return true;
}

bool set_equal(const ExteriorSet& a, const ExteriorSet& b) {
  return a.points.size() == b.points.size() && set_subset(a, b) && set_subset(b, a);
}

ExteriorSet g_layer(const ExteriorSet& T, long k) {
  if (k < 1) fail(ErrorCode::BadInput, "layer index must be >= 1");
  std::vector<CNum> plain, barred, out;
  products_of(T.points, k, T.radius_cut, plain);
  products_of(T.points, k - 1, T.radius_cut, barred);
  for (const CNum& u : plain) {
    for (const CNum& v : barred) {
      CNum w = u * conj(v);
      if (mag(w) < T.radius_cut) out.push_back(w);
    }
  }
  return make_exterior_set(std::move(out), T.radius_cut, T.merge_eps);
}

ExteriorSet g_full(const ExteriorSet& T) { return layers_from(T, 1); }

ExteriorSet g_tail3(const ExteriorSet& T) { return layers_from(T, 2); }

ExteriorSet reduce_generated(const ExteriorSet& Q) {
  ExteriorSet kept;
  kept.radius_cut = Q.radius_cut;
  kept.merge_eps = Q.merge_eps;
  for (const CNum& w : Q.points) {  // already in ascending order
    if (!set_contains(g_tail3(kept), w)) kept.points.push_back(w);
  }
  return kept;
}

ExteriorSet minimal_generators(const ExteriorSet& Q) {
  if (!set_equal(g_full(Q), Q)) {
    fail(ErrorCode::NotGenerated, "input set is not closed under its products");
  }
  ExteriorSet W = reduce_generated(Q);
  if (!set_equal(g_full(W), Q)) {
    fail(ErrorCode::NotGenerated, "extracted generators fail to regenerate the set");
  }
  ExteriorSet tail = g_tail3(W);
  for (const CNum& w : W.points) {
    if (set_contains(tail, w)) {
      fail(ErrorCode::NotGenerated, "extracted generators are not product-free");
    }
  }
  return W;
}

MembershipReport g3_membership(const CNum& z0, const ExteriorSet& T) {
  MembershipReport rep;
  const std::size_t n = T.points.size();
  for (std::size_t ia = 0; ia < n; ++ia) {
    for (std::size_t ib = ia; ib < n; ++ib) {
      CNum ab = T.points[ia] * T.points[ib];
      for (std::size_t ic = 0; ic < n; ++ic) {
        CNum w = ab * conj(T.points[ic]);
        if (points_close(w, z0, T.merge_eps)) {
          rep.factorizations.push_back({T.points[ia], T.points[ib], T.points[ic]});
          ++rep.count;
        }
      }
    }
  }
  return rep;
}

}  // namespace szegolab
