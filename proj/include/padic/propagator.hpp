#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "padic/analysis.hpp"
#include "padic/measures.hpp"
#include "padic/padic_number.hpp"

namespace padic {

/// L = (m/2) xdot^2 - V(x), together with the parameter a of chi_a.
struct LagrangianSpec {
  PadicNumber mass;
  PadicPowerSeries potential;
  PadicNumber a;

  static LagrangianSpec free_particle(const PadicNumber& mass, const PadicNumber& a);
  /// Throws InvalidArgument when m or a vanish or the primes disagree.
  void validate() const;
  std::int64_t prime() const noexcept { return mass.prime(); }
};

/// A trajectory sampled at t_i = t0 + i*eps, eps = (t - t0)/N, with nodes in Z_p.
class PathGrid {
public:
  /// Nodes x + i (y - x)/N.
  static PathGrid straight_line(const PadicNumber& x, const PadicNumber& y, const PadicNumber& t0,
                                const PadicNumber& t, std::int64_t steps);
  static PathGrid from_nodes(const PadicNumber& t0, const PadicNumber& t,
                             std::vector<PadicNumber> nodes);

  const PadicNumber& t0() const noexcept { return t0_; }
  const PadicNumber& t() const noexcept { return t_; }
  std::int64_t steps() const noexcept { return static_cast<std::int64_t>(nodes_.size()) - 1; }
  const PadicNumber& epsilon() const noexcept { return epsilon_; }
  const std::vector<PadicNumber>& nodes() const noexcept { return nodes_; }
  PadicNumber time(std::int64_t i) const;

private:
  PathGrid(PadicNumber t0, PadicNumber t, PadicNumber epsilon, std::vector<PadicNumber> nodes)
      : t0_(std::move(t0)), t_(std::move(t)), epsilon_(std::move(epsilon)),
        nodes_(std::move(nodes)) {}

  PadicNumber t0_;
  PadicNumber t_;
  PadicNumber epsilon_;
  std::vector<PadicNumber> nodes_;
};

/// sum_i (m/2)(x_{i+1} - x_i)^2/eps - c_i V((x_i + x_{i+1})/2), where c_i is
/// eps when `potential_epsilon_factor` is set and 1 otherwise.
PadicNumber discretized_action(const PathGrid& grid, const LagrangianSpec& spec,
                               bool potential_epsilon_factor = true);

/// v(S) + v(a) - 1: nonnegative exactly when chi_a(S) is defined.
std::int64_t action_domain_check(const PadicNumber& action, const PadicNumber& a);

struct LipschitzReport {
  /// |x_i - x_j|^2 <= |K|^2 |t_i - t_j| for every node pair.
  bool holds;
  /// v(K) + v(a m) >= 1.
  bool constant_in_ball;
  /// Node pair with the largest violation, when the inequality fails.
  std::optional<std::pair<std::int64_t, std::int64_t>> worst_pair;
};

LipschitzReport lipschitz_check(const PathGrid& grid, const PadicNumber& lipschitz_constant,
                                const LagrangianSpec& spec);

/// Both sides of
///   (1/k)(x_k - x_0)^2 + (x_{k+1} - x_k)^2
///     = ((k+1)/k)(x_k - x_0/(k+1) - k x_{k+1}/(k+1))^2 + (1/(k+1))(x_{k+1} - x_0)^2.
struct SquareCompletion {
  PadicNumber lhs;
  PadicNumber rhs;
};

SquareCompletion complete_square_step(std::int64_t k, const PadicNumber& x0,
                                      const PadicNumber& xk, const PadicNumber& xk1);

/// Point of the Dirac measure integrating out x_k: x_0/(k+1) + k x_{k+1}/(k+1).
PadicNumber chained_dirac_point(std::int64_t k, const PadicNumber& x0, const PadicNumber& xk1);

struct StepDiagnostic {
  std::int64_t step;
  PadicNumber dirac_point;
  bool point_in_unit_ball;
  /// Completed-square identity held for the current nodes.
  bool square_identity;
  PadicNumber exponent_argument;
  std::int64_t domain_margin;
};

struct PropagatorResult {
  PadicNumber value;
  /// Argument of the exponential; absent when the value is a Riemann sum.
  std::optional<PadicNumber> exponent_argument;
  std::int64_t domain_margin;
  std::int64_t steps;
  std::vector<StepDiagnostic> diagnostics;
  /// Agreement with the same computation at p*N steps (chained Dirac family only).
  std::optional<bool> stable_under_refinement;
  /// Valuation of the difference between the last two Riemann levels.
  std::optional<std::int64_t> riemann_stabilization;
};

/// Performs the N-1 Dirac integrations of the free-particle kernel one at a
/// time, reducing the quadratic form by completing the square at each step.
/// `precision` is the target absolute precision of the exponential.
PropagatorResult free_propagator_iterated(const PadicNumber& x, const PadicNumber& y,
                                          const PadicNumber& t0, const PadicNumber& t,
                                          std::int64_t steps, const LagrangianSpec& spec,
                                          std::int64_t precision);

/// exp_p(a (m/2)(y - x)^2/(t - t0)).
PropagatorResult free_propagator_closed(const PadicNumber& x, const PadicNumber& y,
                                        const PadicNumber& t0, const PadicNumber& t,
                                        const LagrangianSpec& spec, std::int64_t precision);

/// Dirac measure at x_0/(k+1) + k x_{k+1}/(k+1) for the variable x_k.
struct ChainedDirac {};

using StepMeasure = std::variant<ChainedDirac, BallMeasure>;

/// The free-particle measure family for N steps (N-1 chained Dirac measures).
std::vector<StepMeasure> free_particle_measures(std::int64_t steps);

struct GeneralOptions {
  bool potential_epsilon_factor = true;
  /// Level of the Riemann sums for non-Dirac measures.
  std::int64_t riemann_level = 3;
  /// Required agreement between Riemann levels L-1 and L.
  std::int64_t convergence_precision = 1;
  bool refinement_check = true;
};

/// The (N-1)-fold integral of chi_a(discretized action) against
/// `measures[j-1]` in x_j, innermost (x_1) first.  Finite-N value; no limit
/// is taken.
PropagatorResult propagator_general(const PadicNumber& x, const PadicNumber& y,
                                    const PadicNumber& t0, const PadicNumber& t,
                                    std::int64_t steps, const LagrangianSpec& spec,
                                    std::span<const StepMeasure> measures,
                                    std::int64_t precision, const GeneralOptions& options = {});

/// x -> U(y, t; x, t0) for the free particle.
PadicFunction free_kernel(const PadicNumber& y, const PadicNumber& t0, const PadicNumber& t,
                          const LagrangianSpec& spec, std::int64_t precision);

/// Riemann integral of x -> U(x) psi(x) against `measure`.
IntegrationReport evolve_state_report(const PadicFunction& psi, const PadicFunction& kernel,
                                      const BallMeasure& measure, std::int64_t max_level,
                                      std::int64_t target_precision);

/// The evolved value; throws ConvergenceError when the sums do not settle.
PadicNumber evolve_state(const PadicFunction& psi, const PadicFunction& kernel,
                         const BallMeasure& measure, std::int64_t max_level,
                         std::int64_t target_precision);

} // namespace padic
