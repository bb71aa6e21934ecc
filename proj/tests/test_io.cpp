#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>

#include "szegolab/io.hpp"

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

}  // namespace

TEST_CASE("real json round trip is bit exact at matching precision") {
  Real x = sqrt(Real(2L, Prec{256}));
  CHECK(real_from_json(real_to_json(x), 256) == x);
  Real y = -ldexp2(Real(3L, Prec{256}), -200);
  CHECK(real_from_json(real_to_json(y), 256) == y);
  CHECK(real_from_json(Json(5), 256) == Real(5L));
  CHECK(real_from_json(real_to_json(Real::pos_inf(Prec{64})), 64).is_inf());
}

TEST_CASE("complex json round trip") {
  CNum z(sqrt(Real(3L, Prec{256})), -Real::pi(Prec{256}));
  CNum back = cnum_from_json(cnum_to_json(z), 256);
  CHECK(back.re == z.re);
  CHECK(back.im == z.im);
}

TEST_CASE("series json and csv round trips preserve every coefficient") {
  std::vector<CNum> c;
  for (long n = 0; n < 12; ++n) {
    c.push_back(CNum(pow_si(Real(7L, Prec{256}), -n), Real(n, Prec{256}) / 3L));
  }
  std::vector<CNum> jback = series_from_json(series_to_json(c), 256);
  REQUIRE(jback.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(jback[i].re == c[i].re);
    CHECK(jback[i].im == c[i].im);
  }
  std::vector<CNum> cback = series_from_csv(series_to_csv(c), 256);
  REQUIRE(cback.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(cback[i].re == c[i].re);
    CHECK(cback[i].im == c[i].im);
  }
}

TEST_CASE("csv reader tolerates the header and flags malformed rows") {
  std::vector<CNum> ok = series_from_csv("n,re,im\n0,1,0\n1,0.5,-2\n", 64);
  REQUIRE(ok.size() == 2);
  CHECK(ok[1].im == Real(-2L));
  auto code = code_of([&] { series_from_csv("0,not-a-number,0\n", 64); });
  REQUIRE(code.has_value());
  CHECK(*code == ErrorCode::BadInput);
}

TEST_CASE("model round trip and default tail rate") {
  ExponentialModel m = make_exponential_model(
      {{CNum(Real(-3L) / 4L), CNum(Real(2L))}, {CNum(Real(1L), Real(1L)), CNum(Real(0L), Real(3L))}},
      Real(8L));
  ExponentialModel back = model_from_json(model_to_json(m), 256);
  REQUIRE(back.terms.size() == 2);
  CHECK(mag(back.terms[0].first - m.terms[0].first) == Real(0L));
  CHECK(mag(back.terms[1].second - m.terms[1].second) == Real(0L));
  CHECK(back.tail_rate == Real(8L));

  Json j = model_to_json(m);
  j.erase("tail_rate");
  CHECK(model_from_json(j, 256).tail_rate.is_inf());
}

TEST_CASE("pole report serialization exposes the documented fields") {
  PoleReport r;
  r.poles.push_back({CNum(Real(2L)), CNum(Real(-2L))});
  r.order = {3, 3};
  r.spurious_rejected = 4;
  r.retried_orders = {5, 4};
  Json j = poles_to_json(r);
  CHECK(j.contains("poles"));
  CHECK(j["poles"].size() == 1);
  CHECK(j["order"][0] == 3);
  CHECK(j["spurious_rejected"] == 4);
  std::vector<CNum> pts = points_from_json(j, 256);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].re == Real(2L));
}

TEST_CASE("set serialization round trips points and tolerances") {
  ExteriorSet s = make_exterior_set({CNum(Real(2L)), CNum(Real(0L), Real(-3L))}, Real(40L),
                                    Real(1e-9));
  ExteriorSet back = set_from_json(set_to_json(s), 256);
  REQUIRE(back.points.size() == 2);
  CHECK(mag(back.points[0] - s.points[0]) == Real(0L));
  CHECK(back.radius_cut == s.radius_cut);

  std::vector<CNum> bare = points_from_json(parse_json_text("[[1.5,0],[0,2]]"), 256);
  REQUIRE(bare.size() == 2);
  CHECK(bare[1].im == Real(2L));
}

TEST_CASE("complex command-line literals") {
  CHECK(mag(parse_cnum_arg("4+0i", 256) - CNum(Real(4L))) == Real(0L));
  CHECK(parse_cnum_arg("-2i", 256).im == Real(-2L));
  CHECK(parse_cnum_arg("-2i", 256).re == Real(0L));
  CHECK(parse_cnum_arg("i", 256).im == Real(1L));
  CHECK(parse_cnum_arg("1.5", 256).re == Real(3L) / 2L);
  CNum z = parse_cnum_arg("0.25-1e-3i", 256);
  CHECK(z.re == Real::from_string("0.25", Prec{256}));
  CHECK(z.im == -Real::from_string("0.001", Prec{256}));
  auto code = code_of([&] { parse_cnum_arg("abc", 256); });
  REQUIRE(code.has_value());
  CHECK(*code == ErrorCode::BadInput);
}

TEST_CASE("json and file helpers surface io failures") {
  auto code = code_of([&] { parse_json_text("{broken"); });
  REQUIRE(code.has_value());
  CHECK(*code == ErrorCode::IoFailure);
  auto missing = code_of([&] { read_text_file("/nonexistent/definitely/missing.json"); });
  REQUIRE(missing.has_value());
  CHECK(*missing == ErrorCode::IoFailure);
}
