#include "padic/propagator.hpp"

#include <algorithm>
#include <functional>
#include <initializer_list>

namespace padic {

namespace {

// Relative precision for small integer constants entering a computation: as
// fine as the finest operand so the constants never limit the result.
std::int64_t constant_precision(std::initializer_list<const PadicNumber*> operands,
                                std::int64_t floor = 1) {
  std::int64_t prec = std::max<std::int64_t>(floor, 1);
  for (const auto* x : operands)
    prec = std::max(prec, x->precision());
  return prec;
}

PadicNumber integer_constant(std::int64_t n, std::int64_t prime, std::int64_t precision) {
  return PadicNumber::from_integer(n, prime, precision);
}

PadicNumber square(const PadicNumber& z) { return z * z; }

void require_same_prime(std::int64_t prime, std::initializer_list<const PadicNumber*> values) {
  for (const auto* v : values)
    if (v->prime() != prime)
      throw InvalidArgument("prime mismatch between propagator inputs");
}

void require_in_unit_ball(const PadicNumber& v, const char* name) {
  if (!v.is_integral())
    throw DomainError(std::string(name) + " must lie in Z_p, got valuation " +
                      std::to_string(v.valuation()));
}

PadicNumber time_step(const PadicNumber& t0, const PadicNumber& t, std::int64_t steps) {
  if (steps < 1)
    throw InvalidArgument("step count must be at least 1");
  const PadicNumber span = t - t0;
  if (span.is_zero())
    throw InvalidArgument("t must differ from t0 at the known precision");
  return span / integer_constant(steps, t0.prime(), constant_precision({&t0, &t}));
}

PadicNumber action_from_nodes(std::span<const PadicNumber> nodes, const PadicNumber& epsilon,
                              const LagrangianSpec& spec, bool potential_epsilon_factor) {
  const std::int64_t p = spec.prime();
  const std::int64_t prec = constant_precision({&spec.mass, &epsilon, &nodes.front()});
  const PadicNumber two = integer_constant(2, p, prec);
  const PadicNumber half_mass = spec.mass / two;
  const bool has_potential = !spec.potential.is_zero();

  PadicNumber action = PadicNumber::exact_zero(p);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    action += half_mass * square(nodes[i + 1] - nodes[i]) / epsilon;
    if (has_potential) {
      const PadicNumber midpoint = (nodes[i] + nodes[i + 1]) / two;
      const PadicNumber v = eval_series(spec.potential, midpoint);
      action -= potential_epsilon_factor ? epsilon * v : v;
    }
  }
  return action;
}

} // namespace

// ---------------------------------------------------------------------------

LagrangianSpec LagrangianSpec::free_particle(const PadicNumber& mass, const PadicNumber& a) {
  LagrangianSpec spec{mass, PadicPowerSeries::zero(mass.prime()), a};
  spec.validate();
  return spec;
}

void LagrangianSpec::validate() const {
  if (mass.is_zero())
    throw InvalidArgument("mass must be nonzero");
  if (a.is_zero())
    throw InvalidArgument("character parameter a must be nonzero");
  if (a.prime() != mass.prime() || potential.prime() != mass.prime())
    throw InvalidArgument("prime mismatch in Lagrangian");
}

PathGrid PathGrid::straight_line(const PadicNumber& x, const PadicNumber& y,
                                 const PadicNumber& t0, const PadicNumber& t,
                                 std::int64_t steps) {
  require_same_prime(x.prime(), {&y, &t0, &t});
  PadicNumber epsilon = time_step(t0, t, steps);
  const PadicNumber increment =
      (y - x) / integer_constant(steps, x.prime(), constant_precision({&x, &y}));
  std::vector<PadicNumber> nodes;
  nodes.reserve(static_cast<std::size_t>(steps) + 1);
  for (std::int64_t i = 0; i < steps; ++i)
    nodes.push_back(x + increment * integer_constant(i, x.prime(), constant_precision({&x, &y})));
  nodes.push_back(y);
  for (const auto& node : nodes)
    require_in_unit_ball(node, "grid node");
  return PathGrid(t0, t, std::move(epsilon), std::move(nodes));
}

PathGrid PathGrid::from_nodes(const PadicNumber& t0, const PadicNumber& t,
                              std::vector<PadicNumber> nodes) {
  if (nodes.size() < 2)
    throw InvalidArgument("a path grid needs at least two nodes");
  require_same_prime(t0.prime(), {&t});
  for (const auto& node : nodes) {
    require_same_prime(t0.prime(), {&node});
    require_in_unit_ball(node, "grid node");
  }
  PadicNumber epsilon = time_step(t0, t, static_cast<std::int64_t>(nodes.size()) - 1);
  return PathGrid(t0, t, std::move(epsilon), std::move(nodes));
}

PadicNumber PathGrid::time(std::int64_t i) const {
  if (i < 0 || i > steps())
    throw InvalidArgument("time index out of range");
  return t0_ + epsilon_ * integer_constant(i, t0_.prime(), constant_precision({&epsilon_}));
}

PadicNumber discretized_action(const PathGrid& grid, const LagrangianSpec& spec,
                               bool potential_epsilon_factor) {
  spec.validate();
  require_same_prime(spec.prime(), {&grid.t0()});
  return action_from_nodes(grid.nodes(), grid.epsilon(), spec, potential_epsilon_factor);
}

std::int64_t action_domain_check(const PadicNumber& action, const PadicNumber& a) {
  return DomainBa{a}.margin(action);
}

LipschitzReport lipschitz_check(const PathGrid& grid, const PadicNumber& lipschitz_constant,
                                const LagrangianSpec& spec) {
  LipschitzReport report{true, false, std::nullopt};
  report.constant_in_ball = DomainBa{spec.a * spec.mass}.contains(lipschitz_constant);

  const Rational k2 = lipschitz_constant.norm() * lipschitz_constant.norm();
  const auto& nodes = grid.nodes();
  std::vector<PadicNumber> times;
  for (std::int64_t i = 0; i <= grid.steps(); ++i)
    times.push_back(grid.time(i));

  // Compare |dx|^2 against |K|^2 |dt| to stay within exact rationals; the
  // worst pair maximizes |dx|^2 - |K|^2 |dt|.
  Rational worst = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const Rational dx = (nodes[i] - nodes[j]).norm();
      const Rational dt = (times[i] - times[j]).norm();
      const Rational excess = dx * dx - k2 * dt;
      if (excess > worst) {
        worst = excess;
        report.holds = false;
        report.worst_pair = std::pair{static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)};
      }
    }
  }
  return report;
}

PadicNumber chained_dirac_point(std::int64_t k, const PadicNumber& x0, const PadicNumber& xk1) {
  if (k < 1)
    throw InvalidArgument("Dirac chain index must be at least 1");
  const std::int64_t prec = constant_precision({&x0, &xk1});
  const std::int64_t p = x0.prime();
  return (x0 + integer_constant(k, p, prec) * xk1) / integer_constant(k + 1, p, prec);
}

SquareCompletion complete_square_step(std::int64_t k, const PadicNumber& x0,
                                      const PadicNumber& xk, const PadicNumber& xk1) {
  if (k < 1)
    throw InvalidArgument("completing the square needs k >= 1");
  const std::int64_t p = x0.prime();
  require_same_prime(p, {&xk, &xk1});

  const std::int64_t available =
      std::min({x0.absolute_precision(), xk.absolute_precision(), xk1.absolute_precision()});
  const std::int64_t lost = integer_valuation(Integer(static_cast<long>(k)), p) +
                            integer_valuation(Integer(static_cast<long>(k + 1)), p);
  if (available != kInfiniteValuation && lost >= available)
    throw PrecisionError("dividing by k(k+1) = " + std::to_string(k) + "*" +
                         std::to_string(k + 1) + " exhausts the known precision");

  const std::int64_t prec = constant_precision({&x0, &xk, &xk1});
  const PadicNumber kk = integer_constant(k, p, prec);
  const PadicNumber k1 = integer_constant(k + 1, p, prec);

  PadicNumber lhs = square(xk - x0) / kk + square(xk1 - xk);
  const PadicNumber centered = xk - chained_dirac_point(k, x0, xk1);
  PadicNumber rhs = k1 / kk * square(centered) + square(xk1 - x0) / k1;
  return SquareCompletion{std::move(lhs), std::move(rhs)};
}

// ---------------------------------------------------------------------------

PropagatorResult free_propagator_iterated(const PadicNumber& x, const PadicNumber& y,
                                          const PadicNumber& t0, const PadicNumber& t,
                                          std::int64_t steps, const LagrangianSpec& spec,
                                          std::int64_t precision) {
  spec.validate();
  const std::int64_t p = spec.prime();
  require_same_prime(p, {&x, &y, &t0, &t});
  if (steps < 2)
    throw InvalidArgument("the iterated propagator needs N >= 2");
  require_in_unit_ball(x, "x");
  require_in_unit_ball(y, "y");

  const PadicNumber epsilon = time_step(t0, t, steps);
  const std::int64_t prec = constant_precision({&x, &y, &spec.mass, &spec.a}, precision);
  const PadicNumber coefficient = spec.a * spec.mass / (integer_constant(2, p, prec) * epsilon);

  // The Dirac point for x_j depends on x_{j+1}; resolve them from x_N = y down.
  const auto n = static_cast<std::size_t>(steps);
  std::vector<PadicNumber> nodes(n + 1, y);
  nodes[0] = x;
  for (std::size_t j = n - 1; j >= 1; --j)
    nodes[j] = chained_dirac_point(static_cast<std::int64_t>(j), x, nodes[j + 1]);

  // suffix[i] = sum_{m >= i} (x_{m+1} - x_m)^2, the kinetic terms not yet integrated.
  std::vector<PadicNumber> suffix(n + 1, PadicNumber::exact_zero(p));
  for (std::size_t i = n; i-- > 0;)
    suffix[i] = suffix[i + 1] + square(nodes[i + 1] - nodes[i]);

  PropagatorResult result{PadicNumber::exact_zero(p), std::nullopt, 0, steps, {}, std::nullopt,
                          std::nullopt};

  // Before integrating x_j the exponent is coefficient * (reduced + suffix[j])
  // with reduced = (1/j)(x_j - x_0)^2.
  PadicNumber reduced = square(nodes[1] - x);
  for (std::size_t j = 1; j < n; ++j) {
    const auto k = static_cast<std::int64_t>(j);
    const SquareCompletion step = complete_square_step(k, x, nodes[j], nodes[j + 1]);
    const bool identity =
        agree(step.lhs, step.rhs) && agree(step.lhs, reduced + square(nodes[j + 1] - nodes[j]));

    // Integrating against the Dirac measure at the completed-square center
    // removes the square, leaving (1/(k+1))(x_{k+1} - x_0)^2.
    const PadicNumber& point = nodes[j];
    const PadicNumber scale = integer_constant(k + 1, p, prec) / integer_constant(k, p, prec);
    reduced = step.rhs - scale * square(nodes[j] - point);

    const PadicNumber argument = coefficient * (reduced + suffix[j + 1]);
    const std::int64_t margin = DomainE::margin(argument);
    result.diagnostics.push_back(
        StepDiagnostic{k, point, point.is_integral(), identity, argument, margin});
    if (margin < 0)
      throw DomainError("exponent argument leaves the convergence disk at step " +
                            std::to_string(k) + " (valuation " +
                            std::to_string(argument.valuation()) + " < 1)",
                        k);
  }

  const PadicNumber argument = coefficient * reduced;
  result.domain_margin = DomainE::margin(argument);
  result.value = exp_p(argument, precision);
  result.exponent_argument = argument;
  return result;
}

PropagatorResult free_propagator_closed(const PadicNumber& x, const PadicNumber& y,
                                        const PadicNumber& t0, const PadicNumber& t,
                                        const LagrangianSpec& spec, std::int64_t precision) {
  spec.validate();
  const std::int64_t p = spec.prime();
  require_same_prime(p, {&x, &y, &t0, &t});
  require_in_unit_ball(x, "x");
  require_in_unit_ball(y, "y");
  const PadicNumber span = t - t0;
  if (span.is_zero())
    throw InvalidArgument("t must differ from t0 at the known precision");

  const std::int64_t prec = constant_precision({&x, &y, &spec.mass}, precision);
  const PadicNumber action = spec.mass * square(y - x) / (integer_constant(2, p, prec) * span);
  const std::int64_t margin = action_domain_check(action, spec.a);
  if (margin < 0)
    throw DomainError("a (m/2)(y - x)^2/(t - t0) has valuation " +
                      std::to_string(margin + 1) + " < 1, outside the convergence disk");
  const PadicNumber argument = spec.a * action;
  return PropagatorResult{exp_p(argument, precision), argument, margin, 1, {}, std::nullopt,
                          std::nullopt};
}

std::vector<StepMeasure> free_particle_measures(std::int64_t steps) {
  if (steps < 1)
    throw InvalidArgument("step count must be at least 1");
  return std::vector<StepMeasure>(static_cast<std::size_t>(steps - 1), ChainedDirac{});
}

PropagatorResult propagator_general(const PadicNumber& x, const PadicNumber& y,
                                    const PadicNumber& t0, const PadicNumber& t,
                                    std::int64_t steps, const LagrangianSpec& spec,
                                    std::span<const StepMeasure> measures,
                                    std::int64_t precision, const GeneralOptions& options) {
  spec.validate();
  const std::int64_t p = spec.prime();
  require_same_prime(p, {&x, &y, &t0, &t});
  if (steps < 1)
    throw InvalidArgument("step count must be at least 1");
  if (static_cast<std::int64_t>(measures.size()) != steps - 1)
    throw InvalidArgument("N steps need exactly N - 1 measures, got " +
                          std::to_string(measures.size()));

  bool has_riemann = false;
  bool all_chained = true;
  for (const auto& m : measures) {
    if (const auto* ball = std::get_if<BallMeasure>(&m)) {
      all_chained = false;
      if (ball->prime() != p)
        throw InvalidArgument("measure prime does not match");
      if (!ball->bounded())
        throw UnboundedMeasureError(ball->name() + " is unbounded; Riemann sums need a measure");
      if (!ball->as_dirac())
        has_riemann = true;
    }
  }
  if (has_riemann && options.riemann_level < 1)
    throw InvalidArgument("Riemann level must be at least 1");

  const PadicNumber epsilon = time_step(t0, t, steps);
  const auto n = static_cast<std::size_t>(steps);
  std::vector<PadicNumber> nodes(n + 1, y);
  nodes[0] = x;

  std::int64_t min_margin = kInfiniteValuation;
  std::optional<PadicNumber> last_argument;

  const auto leaf = [&]() {
    const PadicNumber action =
        action_from_nodes(nodes, epsilon, spec, options.potential_epsilon_factor);
    const PadicNumber argument = spec.a * action;
    const std::int64_t margin = DomainE::margin(argument);
    if (margin < 0)
      throw DomainError("chi_a(S) undefined: a*S has valuation " +
                        std::to_string(argument.valuation()) + " < 1");
    min_margin = std::min(min_margin, margin);
    last_argument = argument;
    return exp_p(argument, precision);
  };

  std::function<PadicNumber(std::size_t, std::int64_t)> integrate =
      [&](std::size_t j, std::int64_t level) -> PadicNumber {
    if (j == 0)
      return leaf();
    const StepMeasure& m = measures[j - 1];
    if (std::holds_alternative<ChainedDirac>(m)) {
      nodes[j] = chained_dirac_point(static_cast<std::int64_t>(j), x, nodes[j + 1]);
      return integrate(j - 1, level);
    }
    const auto& ball = std::get<BallMeasure>(m);
    if (const Dirac* d = ball.as_dirac()) {
      nodes[j] = d->point;
      return integrate(j - 1, level);
    }
    PadicNumber sum = PadicNumber::exact_zero(p);
    const std::int64_t count = prime_power(p, level).get_si();
    for (std::int64_t a = 0; a < count; ++a) {
      const PadicNumber weight = ball_value(ball, a, level);
      if (weight.is_exact_zero())
        continue;
      nodes[j] = PadicNumber::from_integer(a, p, ball.precision());
      sum += weight * integrate(j - 1, level);
    }
    return sum;
  };

  const std::size_t top = n - 1;
  PropagatorResult result{integrate(top, options.riemann_level), std::nullopt, 0, steps, {},
                          std::nullopt, std::nullopt};
  if (has_riemann) {
    const PadicNumber coarser = integrate(top, options.riemann_level - 1);
    const std::int64_t stab = (result.value - coarser).valuation();
    result.riemann_stabilization = stab;
    if (stab < options.convergence_precision)
      throw ConvergenceError("Riemann levels " + std::to_string(options.riemann_level - 1) +
                             " and " + std::to_string(options.riemann_level) +
                             " agree only modulo p^" + std::to_string(stab));
  } else {
    result.exponent_argument = last_argument;
  }
  result.domain_margin = min_margin;

  if (all_chained && options.refinement_check) {
    GeneralOptions refined = options;
    refined.refinement_check = false;
    const std::int64_t finer = steps * p;
    const auto family = free_particle_measures(finer);
    const PropagatorResult other =
        propagator_general(x, y, t0, t, finer, spec, family, precision, refined);
    result.stable_under_refinement = agree(result.value, other.value);
  }
  return result;
}

PadicFunction free_kernel(const PadicNumber& y, const PadicNumber& t0, const PadicNumber& t,
                          const LagrangianSpec& spec, std::int64_t precision) {
  return [=](const PadicNumber& x) {
    return free_propagator_closed(x, y, t0, t, spec, precision).value;
  };
}

IntegrationReport evolve_state_report(const PadicFunction& psi, const PadicFunction& kernel,
                                      const BallMeasure& measure, std::int64_t max_level,
                                      std::int64_t target_precision) {
  return riemann_integrate([&](const PadicNumber& x) { return kernel(x) * psi(x); }, measure,
                           max_level, target_precision);
}

PadicNumber evolve_state(const PadicFunction& psi, const PadicFunction& kernel,
                         const BallMeasure& measure, std::int64_t max_level,
                         std::int64_t target_precision) {
  IntegrationReport report = evolve_state_report(psi, kernel, measure, max_level, target_precision);
  if (!report.converged)
    throw ConvergenceError("state evolution did not converge: levels agree only modulo p^" +
                           std::to_string(report.stabilization_valuation));
  return report.limit_estimate;
}

} // namespace padic
