#include <doctest.h>

#include "padic/json_io.hpp"
#include "padic/parse.hpp"
#include "padic/request.hpp"

using namespace padic;

namespace {

PadicNumber q(const Rational& v, std::int64_t p = 5, std::int64_t k = 8) {
  return PadicNumber::from_rational(v, p, k);
}

void check_round_trip(const Json& j) {
  const std::string text = j.dump(2);
  CHECK(Json::parse(text).dump(2) == text);
}

} // namespace

TEST_CASE("parse rationals") {
  CHECK(parse_rational("7/25") == Rational(7, 25));
  CHECK(parse_rational(" -3 ") == -3);
  CHECK(parse_rational("+4/6") == Rational(2, 3));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("1/2/3"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational(""), InvalidArgument);
}

TEST_CASE("parse polynomials") {
  const auto c = parse_polynomial("3*x^2 - 1/2*x + 4");
  REQUIRE(c.size() == 3);
  CHECK(c[0] == 4);
  CHECK(c[1] == Rational(-1, 2));
  CHECK(c[2] == 3);
  CHECK(parse_polynomial("x") == std::vector<Rational>{0, 1});
  CHECK(parse_polynomial("-x^3 + x^3").empty());
  CHECK(parse_polynomial("x^2 + x^2") == std::vector<Rational>{0, 0, 2});
  CHECK_THROWS_AS(parse_polynomial("x^"), InvalidArgument);
  CHECK(parse_polynomial("3 x") == std::vector<Rational>{0, 3});
  CHECK_THROWS_AS(parse_polynomial("3**x"), InvalidArgument);
  CHECK_THROWS_AS(parse_polynomial("2*y"), InvalidArgument);
  CHECK_THROWS_AS(parse_polynomial("x^99999"), InvalidArgument);
}

TEST_CASE("p-adic number schema") {
  const Json j = to_json(q(Rational(7, 25), 5, 4));
  CHECK(j.dump() == R"({"prime":5,"valuation":-2,"digits":[2,1,0,0],"abs_precision":4})");
  CHECK(padic_from_json(j) == q(Rational(7, 25), 5, 4));

  const Json zero = to_json(PadicNumber::exact_zero(5));
  CHECK(zero.dump() == R"({"prime":5,"valuation":null,"digits":[],"abs_precision":null})");
  CHECK(padic_from_json(zero).is_exact_zero());

  const Json fuzzy = to_json(PadicNumber::zero_modulo(5, 3));
  CHECK(fuzzy.dump() == R"({"prime":5,"valuation":3,"digits":[],"abs_precision":0})");
  CHECK(padic_from_json(fuzzy) == PadicNumber::zero_modulo(5, 3));

  CHECK_THROWS_AS(padic_from_json(Json::parse(R"({"prime":5,"valuation":0,"digits":[1],"abs_precision":2})")),
                  InvalidArgument);
  CHECK_THROWS_AS(padic_from_json(Json::parse(R"({"prime":4,"valuation":0,"digits":[1],"abs_precision":1})")),
                  InvalidArgument);
  CHECK_THROWS_AS(padic_from_json(Json::parse(R"({"valuation":0})")), InvalidArgument);
}

TEST_CASE("scalars") {
  CHECK(scalar_from_json(Json("7/25"), 5, 4) == q(Rational(7, 25), 5, 4));
  CHECK(scalar_from_json(Json(7), 5, 4) == q(7, 5, 4));
  CHECK(scalar_from_json(to_json(q(3)), 5, 4) == q(3));
  CHECK_THROWS_AS(scalar_from_json(to_json(q(3, 7)), 5, 4), InvalidArgument);
  CHECK_THROWS_AS(scalar_from_json(Json(1.5), 5, 4), InvalidArgument);
}

TEST_CASE("series round trip") {
  const auto e = PadicPowerSeries::exponential(5, 6, 8);
  const Json j = to_json(e);
  CHECK(j["radius_valuation"] == 1);
  CHECK(j["tail"]["slope"] == "-1/4");
  const auto back = series_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
  check_round_trip(j);

  const auto poly = PadicPowerSeries::polynomial(5, {Rational(1), Rational(2)}, 8);
  CHECK(to_json(poly)["radius_valuation"].is_null());
  CHECK(to_json(poly)["tail"] == "vanishes");
  CHECK(to_json(series_from_json(to_json(poly))).dump() == to_json(poly).dump());

  CHECK(potential_from_json(Json(nullptr), 5, 8).is_zero());
  CHECK(potential_from_json(Json("0"), 5, 8).is_zero());
  CHECK(potential_from_json(Json("x^2 + 1"), 5, 8).degree() == 2);
  CHECK_THROWS_AS(potential_from_json(Json(true), 5, 8), InvalidArgument);
}

TEST_CASE("measures") {
  const auto d = measure_from_json(Json::parse(R"({"kind":"dirac","d":"3"})"), 5, 8);
  REQUIRE(d.as_dirac());
  CHECK(d.as_dirac()->point == q(3));
  CHECK(to_json(d)["kind"] == "dirac");
  CHECK(measure_from_json(Json::parse(R"({"kind":"haar"})"), 5, 8).name() == "haar");
  CHECK(measure_from_json(Json::parse(R"({"kind":"mu_minus_one"})"), 5, 8).name() == "mu_minus_one");
  CHECK_THROWS_AS(measure_from_json(Json::parse(R"({"kind":"lebesgue"})"), 5, 8), InvalidArgument);
  CHECK(std::holds_alternative<ChainedDirac>(
      step_measure_from_json(Json::parse(R"({"kind":"dirac_chain"})"), 5, 8)));
  CHECK(to_json(StepMeasure{ChainedDirac{}}).dump() == R"({"kind":"dirac_chain"})");
}

TEST_CASE("integration report json") {
  auto mu = BallMeasure::mu_minus_one(5, 20);
  auto f = [](const PadicNumber& x) { return x; };
  const Json j = to_json(riemann_integrate(f, mu, 4, 2));
  CHECK(j["method"] == "riemann");
  CHECK(j["levels"].size() == 4);
  CHECK(j["rational_estimate"] == "-1/2");
  CHECK(j["converged"] == true);
  check_round_trip(j);
}

TEST_CASE("propagator request") {
  const Json request = Json::parse(R"({"prime":5,"precision":10,"m":"2","a":"5","x":"0","y":"1",
                                       "t0":"0","t":"1","N":3})");
  const Json out = run_propagator(propagator_request_from_json(request));
  CHECK(out["method"] == "iterated");
  CHECK(out["agreement"] == true);
  CHECK(out["value"] == out["closed_form"]);
  CHECK(out["diagnostics"].size() == 2);
  check_round_trip(out);

  Json with_v = request;
  with_v["potential"] = "5";
  const Json general = run_propagator(propagator_request_from_json(with_v));
  CHECK(general["method"] == "general");
  CHECK(general["agreement"].is_null());

  Json bad = request;
  bad["m"] = "1";
  bad["a"] = "1";
  try {
    run_propagator(propagator_request_from_json(bad));
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    const Json err = error_json(e);
    CHECK(err["error"]["type"] == "DomainError");
    CHECK(err["error"]["step"] == 1);
    CHECK(exit_code(e) == 3);
  }
  CHECK_THROWS_AS(propagator_request_from_json(Json::parse(R"({"prime":5})")), InvalidArgument);
  CHECK_THROWS_AS(propagator_request_from_json(Json::parse(R"([1])")), InvalidArgument);
  Json zero_steps = request;
  zero_steps["N"] = 0;
  CHECK_THROWS_AS(propagator_request_from_json(zero_steps), InvalidArgument);
}

TEST_CASE("exit codes") {
  CHECK(exit_code(InvalidArgument("x")) == 2);
  CHECK(exit_code(PrecisionError("x")) == 3);
  CHECK(exit_code(DivisionByZero("x")) == 3);
  CHECK(exit_code(UnboundedMeasureError("x")) == 3);
  CHECK(exit_code(ConvergenceError("x")) == 4);
  CHECK(exit_code(std::runtime_error("x")) == 1);
}
