#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <optional>

#include "szegolab/analysis.hpp"

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

}  // namespace

TEST_CASE("linear solver handles a well-posed system and flags singular ones") {
  std::vector<std::vector<CNum>> A{{c(2), c(1)}, {c(1), c(3)}};
  std::vector<CNum> b{c(5), c(10)};
  auto x = solve_linear_system(A, b, Real(1e-40));
  REQUIRE(x.has_value());
  CHECK(mag((*x)[0] - c(1)) < Real(1e-60));
  CHECK(mag((*x)[1] - c(3)) < Real(1e-60));

  std::vector<std::vector<CNum>> S{{c(1), c(2)}, {c(2), c(4)}};
  CHECK(!solve_linear_system(S, {c(1), c(2)}, Real(1e-40)).has_value());
}

TEST_CASE("least squares reproduces an exactly consistent overdetermined system") {
  // Fit y = 2 - 3x at x = 0..4.
  std::vector<std::vector<CNum>> A;
  std::vector<CNum> b;
  for (int i = 0; i < 5; ++i) {
    A.push_back({c(1), c(i)});
    b.push_back(c(2 - 3 * i));
  }
  std::vector<CNum> x = least_squares_mgs(A, b);
  REQUIRE(x.size() == 2);
  CHECK(mag(x[0] - c(2)) < Real(1e-60));
  CHECK(mag(x[1] - c(-3)) < Real(1e-60));
}

TEST_CASE("jacobi singular values match closed forms") {
  std::vector<Real> sv = singular_values_jacobi({{c(3), c(0)}, {c(0), c(1)}}, 256);
  REQUIRE(sv.size() == 2);
  CHECK(abs(sv[0] - Real(3L)) < Real(1e-60));
  CHECK(abs(sv[1] - Real(1L)) < Real(1e-60));

  // [[1,1],[0,1]]: singular values are the golden ratio and its reciprocal.
  std::vector<Real> gold = singular_values_jacobi({{c(1), c(1)}, {c(0), c(1)}}, 256);
  Real phi = (Real(1L) + sqrt(Real(5L, Prec{256}))) / 2L;
  CHECK(abs(gold[0] - phi) < Real(1e-60));
  CHECK(abs(gold[1] - Real(1L) / phi) < Real(1e-60));

  // Complex entries: unitary column scaling leaves singular values alone.
  std::vector<Real> rot = singular_values_jacobi({{c(0, 3), c(0)}, {c(0), c(0, -1)}}, 256);
  CHECK(abs(rot[0] - Real(3L)) < Real(1e-60));
  CHECK(abs(rot[1] - Real(1L)) < Real(1e-60));
}

TEST_CASE("polynomial roots at modest degree") {
  // z^2 - 3z + 2 = (z-1)(z-2).
  std::vector<CNum> r1 = polynomial_roots({c(2), c(-3), c(1)}, 256);
  REQUIRE(r1.size() == 2);
  CHECK(mag(r1[0] - c(1)) < Real(1e-50));
  CHECK(mag(r1[1] - c(2)) < Real(1e-50));

  // z^2 + 1 = (z-i)(z+i).
  std::vector<CNum> r2 = polynomial_roots({c(1), c(0), c(1)}, 256);
  REQUIRE(r2.size() == 2);
  for (const CNum& r : r2) CHECK(abs(mag(r) - Real(1L)) < Real(1e-50));

  // Exact zero roots are returned explicitly.
  std::vector<CNum> r3 = polynomial_roots({c(0), c(0), c(1)}, 256);
  REQUIRE(r3.size() == 2);
  CHECK(mag(r3[0]) == Real(0L));
  CHECK(mag(r3[1]) == Real(0L));

  // Degree 6 with well-separated roots 1..6 via expanded coefficients.  The
  // root finder makes no ordering promise, so sort before comparing.
  std::vector<CNum> coeffs{c(720), c(-1764), c(1624), c(-735), c(175), c(-21), c(1)};
  std::vector<CNum> r4 = polynomial_roots(coeffs, 256);
  REQUIRE(r4.size() == 6);
  std::sort(r4.begin(), r4.end(), [](const CNum& u, const CNum& v) { return mag(u) < mag(v); });
  for (int k = 0; k < 6; ++k) CHECK(mag(r4[static_cast<std::size_t>(k)] - c(k + 1)) < Real(1e-40));
}

TEST_CASE("two-exponential recovery is exact to working precision") {
  long bits = 256;
  CNum c1 = c(0.7), mu1 = c(2);
  CNum c2(Real(1L) / 5L, Real(1L) / 10L);
  CNum mu2 = c(-3);
  std::vector<CNum> al;
  for (long n = 0; n <= 60; ++n) {
    al.push_back(c1 * pow_int(mu1, -n - 1) + c2 * pow_int(mu2, -n - 1));
  }
  (void)bits;
  PronyFit fit = prony_fit(al, 4);
  REQUIRE(fit.model.terms.size() == 2);
  CHECK(!fit.saturated);
  // Sorted by ascending modulus: mu1 = 2 first.
  CHECK(mag(fit.model.terms[0].second - mu1) < Real(1e-50));
  CHECK(mag(fit.model.terms[0].first - c1) < Real(1e-50));
  CHECK(mag(fit.model.terms[1].second - mu2) < Real(1e-50));
  CHECK(mag(fit.model.terms[1].first - c2) < Real(1e-50));
  CHECK(fit.model.tail_rate.is_inf());
  CHECK(fit.residual_rate.is_inf());
}

TEST_CASE("prony on the zero sequence returns an empty model") {
  std::vector<CNum> zeros(50, CNum(0, Prec{256}));
  PronyFit fit = prony_fit(zeros, 4);
  CHECK(fit.model.empty());
}

TEST_CASE("prony flags confluent inputs instead of fitting them") {
  std::vector<CNum> al;
  for (long n = 0; n <= 60; ++n) al.push_back(c(1) * Real(n) * pow_si(Real(2L), -n));
  auto code = code_of([&] { prony_fit(al, 4); });
  REQUIRE(code.has_value());
  CHECK(*code == ErrorCode::OrderAmbiguous);
}

TEST_CASE("diagonal rational fit finds a single geometric pole after retries") {
  long bits = 256;
  std::vector<CNum> geo;
  for (long n = 0; n <= 30; ++n) geo.push_back(CNum(Real(pow_si(Real(2L), -n))));
  PowerSeries s = make_power_series(geo, bits);
  PoleReport pr = pade_poles(s, 12);
  REQUIRE(pr.poles.size() == 1);
  CHECK(mag(pr.poles[0].first - c(2)) < Real(1e-40));
  CHECK(mag(pr.poles[0].second - c(-2)) < Real(1e-30));  // residue of 1/(1 - z/2) at 2
  CHECK(pr.order.first == 1);
  CHECK(!pr.retried_orders.empty());
}

TEST_CASE("rational fit separates two real poles") {
  long bits = 256;
  // f = 1/(1 - z/2) + 1/(1 + z/3): poles 2 and -3, residues -2 and 3.
  std::vector<CNum> coeffs;
  for (long n = 0; n <= 40; ++n) {
    coeffs.push_back(CNum(pow_si(Real(2L), -n) + pow_si(Real(-3L), -n)));
  }
  PoleReport pr = pade_poles(make_power_series(coeffs, bits), 2);
  REQUIRE(pr.poles.size() == 2);
  CHECK(mag(pr.poles[0].first - c(2)) < Real(1e-40));
  CHECK(mag(pr.poles[0].second - c(-2)) < Real(1e-35));
  CHECK(mag(pr.poles[1].first - c(-3)) < Real(1e-40));
  CHECK(mag(pr.poles[1].second - c(3)) < Real(1e-35));
}

TEST_CASE("poles inside the unit circle are not reported") {
  long bits = 256;
  // 1/(1 - 2z): pole at 1/2, inside the excluded disk.
  std::vector<CNum> coeffs;
  for (long n = 0; n <= 20; ++n) coeffs.push_back(CNum(pow_si(Real(2L), n)));
  auto code = code_of([&] { pade_poles(make_power_series(coeffs, bits), 1); });
  REQUIRE(code.has_value());
  CHECK(*code == ErrorCode::AllSpurious);
}

TEST_CASE("analyticity radius from a synthetic slice") {
  long bits = 256;
  std::vector<CNum> coeffs;
  for (long n = -5; n <= 60; ++n) {
    coeffs.push_back(CNum(pow_si(Real(3L), -(n < 0 ? -n : n))));
  }
  LaurentSlice slice = make_laurent_slice(coeffs, -5, bits);
  AnalyticityEstimate est = analyticity_radius(slice);
  CHECK(abs(est.radius - Real(3L)) < Real(1e-6));
  CHECK(est.window_lo >= 5);
}
