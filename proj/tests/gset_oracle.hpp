#pragma once

// Independent brute-force oracle for the generated-set algebra, used only by
// the acceptance suite.  Intentionally naive and structurally different from
// the library implementation: plain double-precision complex arithmetic,
// fully ordered tuple enumeration (no sorted-index normalization, no
// pruning), and quadratic deduplication.  Double rounding error (~1e-15)
// is far below the 1e-9 merge tolerance the comparison uses.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace gset_oracle {

using C = std::complex<double>;

inline bool near(const C& u, const C& v, double eps) {
  double scale = std::max(1.0, (std::abs(u) + std::abs(v)) / 2.0);
  return std::abs(u - v) < eps * scale;
}

inline std::vector<C> dedup_sorted(const std::vector<C>& pts, double eps) {
  std::vector<C> out;
  for (const C& p : pts) {
    bool dup = false;
    for (const C& q : out) {
      if (near(p, q, eps)) dup = true;
    }
    if (!dup) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const C& a, const C& b) {
    double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    return std::arg(a) < std::arg(b);
  });
  return out;
}

// All values a_1...a_k * conj(b_1)...conj(b_{k-1}) over ordered tuples drawn
// from T, truncated to modulus < rmax.
inline std::vector<C> layer(const std::vector<C>& T, long k, double rmax) {
  const std::size_t m = T.size();
  const long slots = 2 * k - 1;
  std::vector<std::size_t> idx(static_cast<std::size_t>(slots), 0);
  std::vector<C> vals;
  while (true) {
    C v(1.0, 0.0);
    for (long s = 0; s < slots; ++s) {
      const C& t = T[idx[static_cast<std::size_t>(s)]];
      v *= (s < k) ? t : std::conj(t);
    }
    if (std::abs(v) < rmax) vals.push_back(v);
    long s = slots - 1;
    while (s >= 0) {
      if (++idx[static_cast<std::size_t>(s)] < m) break;
      idx[static_cast<std::size_t>(s)] = 0;
      --s;
    }
    if (s < 0) break;
  }
  return vals;
}

// Union of every layer whose smallest possible modulus stays under rmax.
inline std::vector<C> full(const std::vector<C>& T, double rmax, double eps) {
  double rho_min = 1e300;
  for (const C& t : T) rho_min = std::min(rho_min, std::abs(t));
  std::vector<C> all;
  for (long k = 1; k <= 64; ++k) {
    if (std::pow(rho_min, 2 * k - 1) >= rmax) break;
    std::vector<C> l = layer(T, k, rmax);
    all.insert(all.end(), l.begin(), l.end());
  }
  return dedup_sorted(all, eps);
}

}  // namespace gset_oracle
