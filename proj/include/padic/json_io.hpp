#pragma once

#include <cstdint>

#include <json.hpp>

#include "padic/analysis.hpp"
#include "padic/measures.hpp"
#include "padic/padic_number.hpp"
#include "padic/propagator.hpp"

namespace padic {

/// Field order is fixed by insertion, so output is canonical and parsing then
/// re-serializing reproduces the same bytes.
using Json = nlohmann::ordered_json;

/// {"prime", "valuation", "digits" (a_0 first), "abs_precision"}.  The value
/// is known modulo p^(valuation + abs_precision).  A zero known modulo p^n
/// has valuation n, no digits and abs_precision 0; the exact zero has null
/// valuation and abs_precision.
Json to_json(const PadicNumber& x);
PadicNumber padic_from_json(const Json& j);

/// A PadicNumber object, an integer, or a rational string such as "7/25".
PadicNumber scalar_from_json(const Json& j, std::int64_t prime, std::int64_t precision);

/// {"prime", "center", "radius_valuation" (null = whole line), "coefficients", "tail"}.
Json to_json(const PadicPowerSeries& f);
PadicPowerSeries series_from_json(const Json& j);

/// A series object, a polynomial string, null, or "0".
PadicPowerSeries potential_from_json(const Json& j, std::int64_t prime, std::int64_t precision);

/// {"kind": "dirac", "d": ...} | {"kind": "mu_minus_one"} | {"kind": "haar"}.
Json to_json(const BallMeasure& measure);
BallMeasure measure_from_json(const Json& j, std::int64_t prime, std::int64_t precision);

/// Also accepts {"kind": "dirac_chain"} for the free-particle family.
Json to_json(const StepMeasure& measure);
StepMeasure step_measure_from_json(const Json& j, std::int64_t prime, std::int64_t precision);

Json to_json(const IntegrationReport& report);
Json to_json(const StepDiagnostic& step);
Json to_json(const PropagatorResult& result);

/// Rationals travel as strings ("-1/2"); infinite valuations as null.
Json rational_json(const Rational& q);
Json valuation_json(std::int64_t v);

} // namespace padic
