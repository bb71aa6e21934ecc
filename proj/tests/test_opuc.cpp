#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>

#include "szegolab/opuc.hpp"

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

Real tiny(long k) { return ldexp2(Real(1L), -k); }

}  // namespace

TEST_CASE("alternating-sign family coefficients are exact dyadics at q=1/4") {
  VerblunskySequence seq = verblunsky_rogers_szego(Real(1L) / 4L, 256);
  CHECK(mag(alpha(seq, -1) + CNum(1, Prec{256})) == Real(0L));
  CHECK(mag(alpha(seq, 0) - CNum(Real(1L) / 2L)) < tiny(250));
  CHECK(mag(alpha(seq, 1) + CNum(Real(1L) / 4L)) < tiny(250));
  CHECK(mag(alpha(seq, 2) - CNum(Real(1L) / 8L)) < tiny(250));
  std::vector<CNum> al = alphas_upto(seq, 10);
  REQUIRE(al.size() == 11);
  for (long n = 0; n <= 10; ++n) {
    CHECK(mag(al[static_cast<std::size_t>(n)] - alpha(seq, n)) < tiny(250));
  }
}

TEST_CASE("cosine-perturbation family matches its closed-form ratios") {
  VerblunskySequence seq = verblunsky_single_moment(Real::from_string("0.8", Prec{256}), 256);
  // mu+ = 2, mu- = 1/2: alpha_n = -(mu+ - mu-)/(mu+^{n+2} - mu-^{n+2}).
  CHECK(mag(alpha(seq, 0) + CNum(Real(2L) / 5L)) < tiny(245));
  CHECK(mag(alpha(seq, 1) + CNum(Real(4L) / 21L)) < tiny(245));
  CHECK(mag(alpha(seq, 2) + CNum(Real(8L) / 85L)) < tiny(245));
  CHECK(mag(alpha(seq, 40)) < Real(1e-12));  // ~ -(3/8) 2^-40
  CHECK(mag(alpha(seq, 40)) > Real(1e-13));
}

TEST_CASE("explicit sequences are zero beyond the prefix and reject big moduli") {
  VerblunskySequence seq =
      verblunsky_explicit({CNum(Real(1L) / 2L), CNum(Real(0L), Real(1L) / 3L)}, 256);
  CHECK(mag(alpha(seq, 1) - CNum(Real(0L), Real(1L) / 3L)) == Real(0L));
  CHECK(mag(alpha(seq, 2)) == Real(0L));
  CHECK(mag(alpha(seq, 99)) == Real(0L));

  VerblunskySequence bad = verblunsky_explicit({CNum(Real(3L) / 2L)}, 256);
  auto c = code_of([&] { alpha(bad, 0); });
  REQUIRE(c.has_value());
  CHECK(*c == ErrorCode::ModulusViolation);
}

TEST_CASE("exponential models validate moduli and feed the recursion") {
  auto c = code_of([&] {
    make_exponential_model({{CNum(1, Prec{256}), CNum(Real(1L) / 2L)}}, Real(4L));
  });
  REQUIRE(c.has_value());
  CHECK(*c == ErrorCode::BadInput);

  ExponentialModel m =
      make_exponential_model({{CNum(Real(-3L) / 4L), CNum(Real(2L))}}, Real(8L));
  VerblunskySequence seq = verblunsky_exponential(m, nullptr, 256);
  // alpha_n = -(3/4) 2^{-n-1}.
  CHECK(mag(alpha(seq, 0) + CNum(Real(3L) / 8L)) < tiny(250));
  CHECK(mag(alpha(seq, 5) + CNum(Real(3L) / 256L)) < tiny(250));

  ExponentialModel big = make_exponential_model({{CNum(Real(10L)), CNum(Real(11L) / 10L)}},
                                                Real(2L));
  VerblunskySequence loud = verblunsky_exponential(big, nullptr, 256);
  auto c2 = code_of([&] { alpha(loud, 0); });
  REQUIRE(c2.has_value());
  CHECK(*c2 == ErrorCode::ModulusViolation);
}

TEST_CASE("degree-2 polynomial of the alternating family is the known dyadic") {
  VerblunskySequence seq = verblunsky_rogers_szego(Real(1L) / 4L, 256);
  std::vector<PolynomialPair> pairs = phi_upto(seq, 2);
  const PolynomialPair& p2 = pairs[2];
  REQUIRE(p2.phi.size() == 3);
  // Phi_2 = z^2 - (5/8) z + 1/4.
  CHECK(mag(p2.phi[2] - CNum(1, Prec{256})) < tiny(250));
  CHECK(mag(p2.phi[1] + CNum(Real(5L) / 8L)) < tiny(250));
  CHECK(mag(p2.phi[0] - CNum(Real(1L) / 4L)) < tiny(250));
  // Phi_2* has the conjugate-reversed coefficients.
  CHECK(mag(p2.phistar[0] - conj(p2.phi[2])) < tiny(245));
  CHECK(mag(p2.phistar[1] - conj(p2.phi[1])) < tiny(245));
  CHECK(mag(p2.phistar[2] - conj(p2.phi[0])) < tiny(245));
}

TEST_CASE("monic leading coefficient is exactly one at every step") {
  VerblunskySequence seq = verblunsky_single_moment(Real::from_string("0.8", Prec{256}), 256);
  std::vector<PolynomialPair> pairs = phi_upto(seq, 30);
  for (const PolynomialPair& p : pairs) {
    REQUIRE(p.phi.size() == static_cast<std::size_t>(p.n) + 1);
    CHECK(p.phi.back().re == Real(1L));
    CHECK(p.phi.back().im == Real(0L));
  }
}

TEST_CASE("reversed polynomial has equal magnitude on the circle") {
  VerblunskySequence seq = verblunsky_rogers_szego(Real(1L) / 4L, 256);
  std::vector<PolynomialPair> pairs = phi_upto(seq, 12);
  for (int k = 0; k < 8; ++k) {
    CNum e = unit(Real(2L) * Real::pi(Prec{256}) * Real(static_cast<long>(k)) / Real(8L) +
                  Real(1L) / 7L);
    auto [pv, sv] = eval_phi(pairs[12], e);
    CHECK(abs(mag(pv) - mag(sv)) < tiny(240));
  }
}

TEST_CASE("pointwise recursion values agree with coefficient evaluation") {
  VerblunskySequence seq = verblunsky_single_moment(Real::from_string("0.8", Prec{256}), 256);
  CNum z(Real(3L) / 10L, Real(1L) / 10L);
  std::vector<std::pair<CNum, CNum>> vals = phi_values_at(seq, 20, z);
  std::vector<PolynomialPair> pairs = phi_upto(seq, 20);
  REQUIRE(vals.size() == 21);
  for (long n = 0; n <= 20; ++n) {
    auto [pv, sv] = eval_phi(pairs[static_cast<std::size_t>(n)], z);
    CHECK(mag(vals[static_cast<std::size_t>(n)].first - pv) < tiny(230));
    CHECK(mag(vals[static_cast<std::size_t>(n)].second - sv) < tiny(230));
  }
}

TEST_CASE("norm ladder matches the product formula and the outer value at 0") {
  VerblunskySequence seq = verblunsky_rogers_szego(Real(1L) / 4L, 256);
  std::vector<Real> ks = kappa_ladder(seq, 5);
  REQUIRE(ks.size() == 6);
  CHECK(ks[0] == Real(1L));
  Real expect2 = Real(1L) / sqrt((Real(1L) - Real(1L) / 4L) * (Real(1L) - Real(1L) / 16L));
  CHECK(abs(ks[2] - expect2) < tiny(245));

  std::vector<PolynomialPair> pairs = phi_upto(seq, 5);
  for (long n = 0; n <= 5; ++n) {
    CHECK(abs(pairs[static_cast<std::size_t>(n)].kappa - ks[static_cast<std::size_t>(n)]) <
          tiny(245));
  }

  VerblunskySequence sm = verblunsky_single_moment(Real::from_string("0.8", Prec{256}), 256);
  Real d0 = d0_from_alphas(sm, 300);
  CHECK(abs(d0 - sqrt(Real::from_string("0.8", Prec{256}))) < Real(1e-40));
}
