#include "padic/request.hpp"

#include <algorithm>

namespace padic {

namespace {

std::int64_t int_field(const Json& j, const char* key, std::int64_t fallback) {
  if (!j.contains(key) || j[key].is_null())
    return fallback;
  if (!j[key].is_number_integer())
    throw InvalidArgument(std::string("field '") + key + "' must be an integer");
  return j[key].get<std::int64_t>();
}

PadicNumber scalar_field(const Json& j, const char* key, std::int64_t prime,
                         std::int64_t precision, const char* fallback = nullptr) {
  if (!j.contains(key) || j[key].is_null()) {
    if (!fallback)
      throw InvalidArgument(std::string("missing field '") + key + "'");
    return scalar_from_json(Json(fallback), prime, precision);
  }
  return scalar_from_json(j[key], prime, precision);
}

bool chain_family(const PropagatorRequest& r) {
  return std::all_of(r.measures.begin(), r.measures.end(), [](const StepMeasure& m) {
    return std::holds_alternative<ChainedDirac>(m);
  });
}

} // namespace

PropagatorRequest propagator_request_from_json(const Json& j) {
  if (!j.is_object())
    throw InvalidArgument("propagator request must be a JSON object");
  PropagatorRequest r{.prime = int_field(j, "prime", 5),
                      .precision = int_field(j, "precision", 20),
                      .mass = PadicNumber::exact_zero(3),
                      .a = PadicNumber::exact_zero(3),
                      .x = PadicNumber::exact_zero(3),
                      .y = PadicNumber::exact_zero(3),
                      .t0 = PadicNumber::exact_zero(3),
                      .t = PadicNumber::exact_zero(3),
                      .steps = int_field(j, "N", 2),
                      .potential = PadicPowerSeries::zero(3),
                      .measures = {},
                      .options = {}};
  require_odd_prime(r.prime);
  if (r.precision < 1)
    throw InvalidArgument("precision must be at least 1");
  if (r.steps < 1)
    throw InvalidArgument("N must be at least 1");
  const std::int64_t p = r.prime, k = r.precision;
  r.mass = scalar_field(j, "m", p, k);
  r.a = scalar_field(j, "a", p, k);
  r.x = scalar_field(j, "x", p, k);
  r.y = scalar_field(j, "y", p, k);
  r.t0 = scalar_field(j, "t0", p, k, "0");
  r.t = scalar_field(j, "t", p, k, "1");
  r.potential = potential_from_json(j.contains("potential") ? j["potential"] : Json(nullptr), p, k);
  if (j.contains("measures") && !j["measures"].is_null()) {
    if (!j["measures"].is_array())
      throw InvalidArgument("'measures' must be an array");
    for (const auto& m : j["measures"])
      r.measures.push_back(step_measure_from_json(m, p, k));
  }
  if (j.contains("potential_epsilon_factor")) {
    if (!j["potential_epsilon_factor"].is_boolean())
      throw InvalidArgument("'potential_epsilon_factor' must be a boolean");
    r.options.potential_epsilon_factor = j["potential_epsilon_factor"].get<bool>();
  }
  r.options.riemann_level = int_field(j, "riemann_level", r.options.riemann_level);
  return r;
}

Json run_propagator(const PropagatorRequest& r) {
  const LagrangianSpec spec{r.mass, r.potential, r.a};
  spec.validate();
  std::vector<StepMeasure> measures = r.measures;
  if (measures.empty())
    measures = free_particle_measures(r.steps);
  const bool free_chain = r.potential.is_zero() && chain_family(r);

  Json out;
  PropagatorResult result = [&] {
    if (free_chain && r.steps >= 2) {
      out["method"] = "iterated";
      return free_propagator_iterated(r.x, r.y, r.t0, r.t, r.steps, spec, r.precision);
    }
    out["method"] = "general";
    return propagator_general(r.x, r.y, r.t0, r.t, r.steps, spec, measures, r.precision,
                              r.options);
  }();
  const Json fields = to_json(result);
  for (const auto& [key, value] : fields.items())
    out[key] = value;
  if (free_chain) {
    const PropagatorResult closed =
        free_propagator_closed(r.x, r.y, r.t0, r.t, spec, r.precision);
    out["closed_form"] = to_json(closed.value);
    out["agreement"] = closed.value == result.value;
  } else {
    out["closed_form"] = nullptr;
    out["agreement"] = nullptr;
  }
  return out;
}

Json error_json(const std::exception& e) {
  Json err;
  std::string type = "Error";
  if (dynamic_cast<const UnboundedMeasureError*>(&e))
    type = "UnboundedMeasureError";
  else if (dynamic_cast<const DomainError*>(&e))
    type = "DomainError";
  else if (dynamic_cast<const PrecisionError*>(&e))
    type = "PrecisionError";
  else if (dynamic_cast<const DivisionByZero*>(&e))
    type = "DivisionByZero";
  else if (dynamic_cast<const ConvergenceError*>(&e))
    type = "ConvergenceError";
  else if (dynamic_cast<const InvalidArgument*>(&e))
    type = "InvalidArgument";
  err["type"] = type;
  err["message"] = e.what();
  const auto* domain = dynamic_cast<const DomainError*>(&e);
  err["step"] = domain && domain->step() ? Json(*domain->step()) : Json(nullptr);
  return Json{{"error", err}};
}

int exit_code(const std::exception& e) {
  if (dynamic_cast<const InvalidArgument*>(&e))
    return 2;
  if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const PrecisionError*>(&e) ||
      dynamic_cast<const DivisionByZero*>(&e))
    return 3;
  if (dynamic_cast<const ConvergenceError*>(&e))
    return 4;
  return 1;
}

} // namespace padic
