#pragma once

#include <cstdint>
#include <vector>

#include "padic/json_io.hpp"

namespace padic {

struct PropagatorRequest {
  std::int64_t prime = 5;
  std::int64_t precision = 20;
  PadicNumber mass;
  PadicNumber a;
  PadicNumber x;
  PadicNumber y;
  PadicNumber t0;
  PadicNumber t;
  std::int64_t steps = 2;
  PadicPowerSeries potential;
  /// Empty means the chained Dirac family.
  std::vector<StepMeasure> measures;
  GeneralOptions options;
};

/// {prime, precision, m, a, x, y, t0, t, N, potential, measures,
///  potential_epsilon_factor, riemann_level}.  Scalars may be rational
/// strings, integers or p-adic number objects.
PropagatorRequest propagator_request_from_json(const Json& j);

/// Chained-Dirac family with no potential: the iterated computation, checked
/// against the closed form.  Anything else goes through the general nested
/// integral.  Output keys: method, value, exponent_argument, domain_margin,
/// steps, diagnostics, stable_under_refinement, riemann_stabilization,
/// closed_form, agreement.
Json run_propagator(const PropagatorRequest& request);

/// {"error": {"type", "message", "step"}}.
Json error_json(const std::exception& e);

/// Process exit status for an error: 2 bad input, 3 domain/precision,
/// 4 non-convergence, 1 anything else.
int exit_code(const std::exception& e);

} // namespace padic
