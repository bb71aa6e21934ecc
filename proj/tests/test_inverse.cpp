#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>

#include "szegolab/inverse.hpp"

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

Real a08(long bits = 256) { return Real::from_string("0.8", Prec{bits}); }

}  // namespace

TEST_CASE("moments of the cosine weight are supported on one frequency") {
  Weight w = weight_single_moment(a08(), 256);
  MomentSequence ms = moments_from_weight(w, 10, 512);
  REQUIRE(ms.c.size() == 11);
  CHECK(mag(ms.c[0] - CNum(1, Prec{256})) < Real(1e-60));
  CHECK(mag(ms.c[1] + CNum(Real(2L) / 5L)) < Real(1e-60));
  for (std::size_t n = 2; n <= 10; ++n) CHECK(mag(ms.c[n]) < Real(1e-60));
}

TEST_CASE("moment recursion reproduces the closed-form coefficients") {
  long bits = 256;
  Weight w = weight_single_moment(a08(bits), bits);
  MomentSequence ms = moments_from_weight(w, 21, 512);
  std::vector<CNum> al = alphas_from_moments(ms);
  REQUIRE(al.size() == 21);
  VerblunskySequence seq = verblunsky_single_moment(a08(bits), bits);
  for (long n = 0; n < 21; ++n) {
    CHECK(mag(al[static_cast<std::size_t>(n)] - alpha(seq, n)) < Real(1e-50));
  }
}

TEST_CASE("alternating family round trip through its weight") {
  long bits = 256;
  Real q = Real(1L, Prec{bits}) / 4L;
  Weight w = weight_rogers_szego(q, bits);
  MomentSequence ms = moments_from_weight(w, 20, 1024);
  std::vector<CNum> al = alphas_from_moments(ms);
  VerblunskySequence seq = verblunsky_rogers_szego(q, bits);
  for (long n = 0; n < 20; ++n) {
    CHECK(mag(al[static_cast<std::size_t>(n)] - alpha(seq, n)) < Real(1e-45));
  }
}

TEST_CASE("unnormalized weights are rejected unless rescaling is requested") {
  long bits = 256;
  Weight w = weight_constant(bits);
  Weight doubled;
  doubled.fn = [fn = w.fn](const Real& t) { return Real(2L) * fn(t); };
  auto code = code_of([&] { moments_from_weight(doubled, 5, 256); });
  REQUIRE(code.has_value());
  CHECK(*code == ErrorCode::NotNormalized);

  MomentSequence ms = moments_from_weight(doubled, 5, 256, true);
  CHECK(mag(ms.c[0] - CNum(1, Prec{bits})) < Real(1e-70));
  std::vector<CNum> al = alphas_from_moments(ms);
  for (const CNum& a : al) CHECK(mag(a) < Real(1e-60));
}

TEST_CASE("non positive definite moment data is flagged") {
  MomentSequence bad;
  bad.bits = 256;
  bad.c = {CNum(1, Prec{256}), CNum(Real(6L) / 5L)};
  auto code = code_of([&] { alphas_from_moments(bad); });
  REQUIRE(code.has_value());
  CHECK(*code == ErrorCode::NotPositiveDefinite);
}

TEST_CASE("integral formula one matches the recursion coefficients") {
  long bits = 256;
  Real q = Real(1L, Prec{bits}) / 4L;
  VerblunskySequence seq = verblunsky_rogers_szego(q, bits);
  SzegoData sd = make_szego_data(seq, 200);
  Weight w = weight_rogers_szego(q, bits);
  // alpha_3 = -q^2 = -1/16 exactly.
  CNum est = alpha_check_freud(3, sd, w, 512);
  CHECK(mag(est + CNum(Real(1L) / 16L)) < Real(1e-25));
  CNum est0 = alpha_check_freud(0, sd, w, 512);
  CHECK(mag(est0 - alpha(seq, 0)) < Real(1e-25));
}

TEST_CASE("integral formula two matches the recursion coefficients") {
  long bits = 256;
  VerblunskySequence seq = verblunsky_single_moment(a08(bits), bits);
  SzegoData sd = make_szego_data(seq, 200);
  Weight w = weight_single_moment(a08(bits), bits);
  CNum est = alpha_check_2414(2, sd, w, 512);
  CHECK(mag(est - alpha(seq, 2)) < Real(1e-25));
  CNum est5 = alpha_check_2414(5, sd, w, 512);
  CHECK(mag(est5 - alpha(seq, 5)) < Real(1e-25));
}

TEST_CASE("weight reconstructed from a coefficient prefix matches the source weight") {
  long bits = 256;
  VerblunskySequence seq = verblunsky_single_moment(a08(bits), bits);
  Weight rec = weight_from_sequence(seq, 40);
  Weight truth = weight_single_moment(a08(bits), bits);
  for (int k = 0; k < 5; ++k) {
    Real theta = Real(2L) * Real::pi(Prec{bits}) * Real(static_cast<long>(k)) / 5L +
                 Real(1L) / 3L;
    CHECK(abs(rec.fn(theta) - truth.fn(theta)) < Real(1e-10));
  }
}

TEST_CASE("norm ladder agrees with direct quadrature of the polynomial norm") {
  long bits = 256;
  VerblunskySequence seq = verblunsky_single_moment(a08(bits), bits);
  Weight w = weight_single_moment(a08(bits), bits);
  std::vector<PolynomialPair> pairs = phi_upto(seq, 10);
  const PolynomialPair& p10 = pairs[10];
  // kappa_10^{-2} = integral |Phi_10|^2 w dtheta/2pi by trapezoid on 512 nodes.
  long M = 512;
  Real two_pi = Real(2L) * Real::pi(Prec{bits});
  Real acc(0L, Prec{bits});
  for (long k = 0; k < M; ++k) {
    Real theta = two_pi * Real(k) / Real(M);
    CNum e = unit(theta);
    acc += norm2(eval_phi(p10, e).first) * w.fn(theta);
  }
  acc = acc / Real(M);
  Real ladder = Real(1L) / (p10.kappa * p10.kappa);
  CHECK(abs(acc - ladder) < Real(1e-20));
}

TEST_CASE("residue moments match trapezoid quadrature on a resolvable reconstruction") {
  long bits = 256;
  VerblunskySequence seq = verblunsky_rogers_szego(Real(1L) / 4L, bits);
  SzegoData sd = make_szego_data(seq, 40);
  Weight w = weight_from_sequence(seq, 40);
  MomentSequence quad = moments_from_weight(w, 20, 4096);
  MomentSequence res = moments_from_szego_data(sd, 20);
  for (int n = 0; n <= 20; ++n) {
    CHECK(mag(quad.c[n] - res.c[n]) < Real(1e-70));
  }
}

TEST_CASE("residue moments round-trip a short explicit list at full precision") {
  long bits = 256;
  std::vector<CNum> list{CNum(Real::from_string("0.5", Prec{bits})),
                         CNum(Real(0L), Real::from_string("-0.3", Prec{bits})),
                         CNum(Real::from_string("0.2", Prec{bits}),
                              Real::from_string("0.1", Prec{bits}))};
  VerblunskySequence seq = verblunsky_explicit(list, bits);
  SzegoData sd = make_szego_data(seq, 40);
  MomentSequence ms = moments_from_szego_data(sd, 10);
  CHECK(abs(ms.c[0].re - Real(1L)) < Real(1e-70));
  std::vector<CNum> back = alphas_from_moments(ms);
  for (int i = 0; i < 3; ++i) {
    CHECK(mag(back[static_cast<std::size_t>(i)] - list[static_cast<std::size_t>(i)]) < Real(1e-70));
  }
  for (int i = 3; i < 10; ++i) {
    CHECK(mag(back[static_cast<std::size_t>(i)]) < Real(1e-70));
  }
}

TEST_CASE("residue moments reject a boundary polynomial with an inside zero") {
  long bits = 256;
  SzegoData sd;
  sd.bits = bits;
  sd.D0 = Real(1L, Prec{bits});
  // 1 - 2z vanishes at z = 1/2, inside the circle: not a legal boundary
  // polynomial for a positive weight reconstruction.
  sd.dinv = make_power_series({CNum(1, Prec{bits}), CNum(-2, Prec{bits})}, bits);
  auto code = code_of([&] { (void)moments_from_szego_data(sd, 4); });
  REQUIRE(code.has_value());
  CHECK(*code == ErrorCode::NonSzegoWeight);
}
