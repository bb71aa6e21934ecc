#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>

#include "szegolab/gsets.hpp"

using namespace szegolab;

namespace {

template <typename F>
std::optional<ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const SzegoLabError& e) {
    return e.code();
  }
  return std::nullopt;
}

CNum c(double re, double im = 0.0) { return CNum(Real(re), Real(im)); }

ExteriorSet reals(std::initializer_list<double> xs, double rmax) {
  std::vector<CNum> pts;
  for (double x : xs) pts.push_back(c(x));
  return make_exterior_set(std::move(pts), Real(rmax), Real(1e-9));
}

bool same_points(const ExteriorSet& s, std::initializer_list<double> xs) {
  if (s.points.size() != xs.size()) return false;
  std::size_t i = 0;
  for (double x : xs) {
    if (!(mag(s.points[i] - c(x)) < Real(1e-6))) return false;
    ++i;
  }
  return true;
}

}  // namespace

TEST_CASE("exterior sets sort, merge, validate, and truncate") {
  ExteriorSet s = make_exterior_set({c(3), c(2), c(2.0000000000001), c(50)}, Real(40L),
                                    Real(1e-9));
  CHECK(same_points(s, {2, 3}));  // near-duplicate merged, 50 dropped

  auto bad = code_of([&] { make_exterior_set({c(0.5)}, Real(10L), Real(1e-9)); });
  REQUIRE(bad.has_value());
  CHECK(*bad == ErrorCode::BadInput);

  ExteriorSet t = make_exterior_set({c(0, 2), c(-2), c(2)}, Real(10L), Real(1e-9));
  // Equal moduli sort by ascending argument: -2 (pi) comes last.
  CHECK(mag(t.points[0] - c(2)) < Real(1e-12));
  CHECK(mag(t.points[1] - c(0, 2)) < Real(1e-12));
  CHECK(mag(t.points[2] - c(-2)) < Real(1e-12));

  CHECK(set_contains(t, c(0, 2)));
  CHECK(!set_contains(t, c(0, -2)));
}

TEST_CASE("layer products enumerate unbarred and conjugated slots") {
  ExteriorSet T = reals({2, 3}, 50);
  CHECK(same_points(g_layer(T, 1), {2, 3}));
  CHECK(same_points(g_layer(T, 2), {8, 12, 18, 27}));

  // One complex generator: layer 2 is mu^2 conj(mu) = mu |mu|^2.
  ExteriorSet C = make_exterior_set({c(2, 1)}, Real(40L), Real(1e-9));
  ExteriorSet L2 = g_layer(C, 2);
  REQUIRE(L2.points.size() == 1);
  CHECK(mag(L2.points[0] - c(10, 5)) < Real(1e-12));
}

TEST_CASE("full generated set matches frozen enumerations") {
  CHECK(same_points(g_full(reals({2, 3}, 50)), {2, 3, 8, 12, 18, 27, 32, 48}));
  CHECK(same_points(g_full(reals({-2}, 100)), {-2, -8, -32}));
  CHECK(same_points(g_full(reals({2}, 40)), {2, 8, 32}));
}

TEST_CASE("generated sets are idempotent under truncation") {
  for (double rmax : {20.0, 50.0, 90.0}) {
    ExteriorSet T = reals({2, 3}, rmax);
    ExteriorSet G = g_full(T);
    CHECK(set_equal(g_full(G), G));
  }
  ExteriorSet X = make_exterior_set({c(2, 1), c(-3)}, Real(60L), Real(1e-9));
  ExteriorSet GX = g_full(X);
  CHECK(set_equal(g_full(GX), GX));
}

TEST_CASE("tail union excludes the first layer but keeps deeper products") {
  ExteriorSet T = reals({2}, 40);
  ExteriorSet tail = g_tail3(T);
  CHECK(same_points(tail, {8, 32}));
  // 32 sits in layer 3 of {2}; the tail union must see it even though the
  // layer-2 products of {2} stop at 8.
  CHECK(set_contains(tail, c(32)));
  CHECK(!set_contains(tail, c(2)));
}

TEST_CASE("minimal generators collapse geometric towers") {
  CHECK(same_points(minimal_generators(reals({2, 8, 32}, 40)), {2}));
  CHECK(same_points(minimal_generators(reals({-2, -8, -32}, 40)), {-2}));
  CHECK(same_points(minimal_generators(reals({2, 3, 8, 12, 18, 27, 32, 48}, 50)), {2, 3}));

  auto open = code_of([&] { minimal_generators(reals({2, 8, 32, 7}, 40)); });
  REQUIRE(open.has_value());
  CHECK(*open == ErrorCode::NotGenerated);
}

TEST_CASE("reduction without closure precondition handles mid-layer cuts") {
  // {2, 8} truncated at 12 is not closed (32 missing) but still reduces.
  CHECK(same_points(reduce_generated(reals({2, 8}, 12)), {2}));
  CHECK(same_points(reduce_generated(reals({2, 3}, 12)), {2, 3}));
}

TEST_CASE("factorization counting distinguishes the conjugated slot") {
  ExteriorSet T2 = reals({2}, 40);
  MembershipReport r8 = g3_membership(c(8), T2);
  CHECK(r8.count == 1);
  REQUIRE(r8.factorizations.size() == 1);
  CHECK(mag(r8.factorizations[0].a - c(2)) < Real(1e-12));

  ExteriorSet T23 = reals({2, 3}, 40);
  CHECK(g3_membership(c(12), T23).count == 2);  // 2*2*conj(3) and 2*3*conj(2)
  CHECK(g3_membership(c(7), T23).count == 0);
  CHECK(g3_membership(c(18), T23).count == 2);  // 3*3*conj(2) and 2*3*conj(3)
  CHECK(g3_membership(c(8), T23).count == 1);

  // Complex: 10+5i = (2+i)^2 conj(2+i) uniquely over {2+i}.
  ExteriorSet C = make_exterior_set({c(2, 1)}, Real(40L), Real(1e-9));
  CHECK(g3_membership(c(10, 5), C).count == 1);
}

TEST_CASE("subset and equality respect the merge tolerance") {
  ExteriorSet a = reals({2, 8}, 40);
  ExteriorSet b = make_exterior_set({c(2.0000001), c(8.0000004), c(32)}, Real(40L), Real(1e-6));
  CHECK(set_subset(a, b));
  CHECK(!set_subset(b, a));
  CHECK(!set_equal(a, b));
  ExteriorSet a2 = reals({8, 2}, 40);
  CHECK(set_equal(a, a2));
}
