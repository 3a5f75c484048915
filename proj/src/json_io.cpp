#include "padic/json_io.hpp"

#include "padic/parse.hpp"

namespace padic {

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InvalidArgument(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("field '") + key + "': " + e.what());
  }
}

} // namespace

Json rational_json(const Rational& q) { return q.get_str(); }

Json valuation_json(std::int64_t v) {
  if (v == kInfiniteValuation)
    return nullptr;
  return v;
}

Json to_json(const PadicNumber& x) {
  Json j;
  j["prime"] = x.prime();
  if (x.is_exact_zero()) {
    j["valuation"] = nullptr;
    j["digits"] = Json::array();
    j["abs_precision"] = nullptr;
    return j;
  }
  j["valuation"] = x.valuation();
  j["digits"] = x.is_zero() ? Json::array() : Json(x.digits());
  j["abs_precision"] = x.precision();
  return j;
}

PadicNumber padic_from_json(const Json& j) {
  const auto prime = field<std::int64_t>(j, "prime");
  require_odd_prime(prime);
  const auto digits = field<std::vector<int>>(j, "digits");
  if (!j.contains("valuation") || !j.contains("abs_precision"))
    throw InvalidArgument("p-adic number needs 'valuation' and 'abs_precision'");
  if (j["valuation"].is_null()) {
    if (!digits.empty() || !j["abs_precision"].is_null())
      throw InvalidArgument("exact zero must have no digits and null abs_precision");
    return PadicNumber::exact_zero(prime);
  }
  const auto valuation = field<std::int64_t>(j, "valuation");
  const auto precision = field<std::int64_t>(j, "abs_precision");
  if (precision != static_cast<std::int64_t>(digits.size()))
    throw InvalidArgument("abs_precision must equal the number of digits");
  return PadicNumber::from_digits(prime, valuation, digits);
}

PadicNumber scalar_from_json(const Json& j, std::int64_t prime, std::int64_t precision) {
  if (j.is_object()) {
    PadicNumber x = padic_from_json(j);
    if (x.prime() != prime)
      throw InvalidArgument("p-adic number has the wrong prime");
    return x;
  }
  if (j.is_number_integer())
    return PadicNumber::from_integer(j.get<std::int64_t>(), prime, precision);
  if (j.is_string())
    return PadicNumber::from_rational(parse_rational(j.get<std::string>()), prime, precision);
  throw InvalidArgument("expected a rational string, an integer or a p-adic number object");
}

Json to_json(const PadicPowerSeries& f) {
  Json j;
  j["prime"] = f.prime();
  j["center"] = to_json(f.center());
  if (f.radius_valuation() <= kWholeLine)
    j["radius_valuation"] = nullptr;
  else
    j["radius_valuation"] = f.radius_valuation();
  Json cs = Json::array();
  for (const auto& c : f.coefficients())
    cs.push_back(to_json(c));
  j["coefficients"] = std::move(cs);
  if (!f.tail()) {
    j["tail"] = nullptr;
  } else if (f.tail()->vanishes) {
    j["tail"] = "vanishes";
  } else {
    Json t;
    t["slope"] = rational_json(f.tail()->slope);
    t["offset"] = rational_json(f.tail()->offset);
    t["log_loss"] = f.tail()->log_loss;
    j["tail"] = std::move(t);
  }
  return j;
}

PadicPowerSeries series_from_json(const Json& j) {
  const auto prime = field<std::int64_t>(j, "prime");
  require_odd_prime(prime);
  const std::int64_t default_precision = 20;
  PadicNumber center = j.contains("center") ? scalar_from_json(j["center"], prime, default_precision)
                                            : PadicNumber::exact_zero(prime);
  std::int64_t radius = kWholeLine;
  if (j.contains("radius_valuation") && !j["radius_valuation"].is_null())
    radius = field<std::int64_t>(j, "radius_valuation");
  std::vector<PadicNumber> cs;
  for (const auto& c : field<Json>(j, "coefficients"))
    cs.push_back(scalar_from_json(c, prime, default_precision));
  std::optional<TailBound> tail = TailBound::vanishing();
  if (j.contains("tail")) {
    const Json& t = j["tail"];
    if (t.is_null())
      tail.reset();
    else if (t.is_object())
      tail = TailBound{parse_rational(field<std::string>(t, "slope")),
                       parse_rational(field<std::string>(t, "offset")),
                       field<std::int64_t>(t, "log_loss"), false};
  }
  return PadicPowerSeries(prime, std::move(cs), std::move(center), radius, std::move(tail));
}

PadicPowerSeries potential_from_json(const Json& j, std::int64_t prime, std::int64_t precision) {
  if (j.is_null())
    return PadicPowerSeries::zero(prime);
  if (j.is_object()) {
    PadicPowerSeries f = series_from_json(j);
    if (f.prime() != prime)
      throw InvalidArgument("potential has the wrong prime");
    return f;
  }
  if (j.is_number_integer())
    return PadicPowerSeries::polynomial(prime, {Rational(static_cast<long>(j.get<std::int64_t>()))},
                                        precision);
  if (j.is_string()) {
    const auto coeffs = parse_polynomial(j.get<std::string>());
    if (coeffs.empty())
      return PadicPowerSeries::zero(prime);
    return PadicPowerSeries::polynomial(prime, coeffs, precision);
  }
  throw InvalidArgument("potential must be null, a polynomial string or a series object");
}

Json to_json(const BallMeasure& measure) {
  Json j;
  j["kind"] = measure.name();
  if (const Dirac* d = measure.as_dirac())
    j["d"] = to_json(d->point);
  return j;
}

BallMeasure measure_from_json(const Json& j, std::int64_t prime, std::int64_t precision) {
  const auto kind = field<std::string>(j, "kind");
  if (kind == "dirac")
    return BallMeasure::dirac(scalar_from_json(field<Json>(j, "d"), prime, precision), precision);
  if (kind == "mu_minus_one")
    return BallMeasure::mu_minus_one(prime, precision);
  if (kind == "haar")
    return BallMeasure::haar(prime, precision);
  throw InvalidArgument("unknown measure kind '" + kind + "'");
}

Json to_json(const StepMeasure& measure) {
  if (std::holds_alternative<ChainedDirac>(measure))
    return Json{{"kind", "dirac_chain"}};
  return to_json(std::get<BallMeasure>(measure));
}

StepMeasure step_measure_from_json(const Json& j, std::int64_t prime, std::int64_t precision) {
  if (field<std::string>(j, "kind") == "dirac_chain")
    return ChainedDirac{};
  return measure_from_json(j, prime, precision);
}

Json to_json(const IntegrationReport& report) {
  Json j;
  j["method"] = report.method;
  j["target_precision"] = report.target_precision;
  Json levels = Json::array();
  for (const auto& l : report.levels) {
    Json e;
    e["level"] = l.level;
    e["sum"] = to_json(l.sum);
    e["stabilization_valuation"] = valuation_json(l.stabilization_valuation);
    levels.push_back(std::move(e));
  }
  j["levels"] = std::move(levels);
  j["converged"] = report.converged;
  j["converged_level"] =
      report.converged_level ? Json(*report.converged_level) : Json(nullptr);
  j["stabilization_valuation"] = valuation_json(report.stabilization_valuation);
  j["limit_estimate"] = to_json(report.limit_estimate);
  const auto guess = plausible_rational(report.limit_estimate);
  j["rational_estimate"] = guess ? rational_json(*guess) : Json(nullptr);
  return j;
}

Json to_json(const StepDiagnostic& step) {
  Json j;
  j["step"] = step.step;
  j["dirac_point"] = to_json(step.dirac_point);
  j["point_in_unit_ball"] = step.point_in_unit_ball;
  j["square_identity"] = step.square_identity;
  j["exponent_argument"] = to_json(step.exponent_argument);
  j["domain_margin"] = valuation_json(step.domain_margin);
  return j;
}

Json to_json(const PropagatorResult& result) {
  Json j;
  j["value"] = to_json(result.value);
  j["exponent_argument"] =
      result.exponent_argument ? to_json(*result.exponent_argument) : Json(nullptr);
  j["domain_margin"] = valuation_json(result.domain_margin);
  j["steps"] = result.steps;
  Json diags = Json::array();
  for (const auto& d : result.diagnostics)
    diags.push_back(to_json(d));
  j["diagnostics"] = std::move(diags);
  j["stable_under_refinement"] =
      result.stable_under_refinement ? Json(*result.stable_under_refinement) : Json(nullptr);
  j["riemann_stabilization"] =
      result.riemann_stabilization ? valuation_json(*result.riemann_stabilization) : Json(nullptr);
  return j;
}

} // namespace padic
