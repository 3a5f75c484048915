#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "padic/analysis.hpp"
#include "padic/padic_number.hpp"

namespace padic {

struct Dirac {
  PadicNumber point;
};

/// mu_{-1}(a + p^N Z_p) = (-1)^a for 0 <= a < p^N.
struct MuMinusOne {};

/// mu_Haar(a + p^N Z_p) = p^-N.  Unbounded: a distribution, not a measure.
struct Haar {};

struct CustomMeasure {
  std::function<PadicNumber(std::int64_t ball, std::int64_t level)> value;
  bool bounded = true;
};

/// A finitely additive assignment of Q_p values to the balls a + p^N Z_p.
class BallMeasure {
public:
  using Kind = std::variant<Dirac, MuMinusOne, Haar, CustomMeasure>;

  /// `precision` is the relative precision of the ball values produced.
  static BallMeasure dirac(const PadicNumber& point, std::int64_t precision);
  static BallMeasure mu_minus_one(std::int64_t prime, std::int64_t precision);
  static BallMeasure haar(std::int64_t prime, std::int64_t precision);
  static BallMeasure custom(std::int64_t prime, std::int64_t precision, CustomMeasure measure);

  std::int64_t prime() const noexcept { return prime_; }
  std::int64_t precision() const noexcept { return precision_; }
  const Kind& kind() const noexcept { return kind_; }
  bool bounded() const;
  const Dirac* as_dirac() const noexcept { return std::get_if<Dirac>(&kind_); }
  /// "dirac", "mu_minus_one", "haar" or "custom".
  std::string name() const;

private:
  BallMeasure(std::int64_t prime, std::int64_t precision, Kind kind)
      : prime_(prime), precision_(precision), kind_(std::move(kind)) {}

  std::int64_t prime_;
  std::int64_t precision_;
  Kind kind_;
};

/// Value of the measure on a + p^level Z_p, 0 <= a < p^level.
PadicNumber ball_value(const BallMeasure& measure, std::int64_t ball, std::int64_t level);

/// First ball (a, N) with N < max_level whose value differs from the sum over
/// its p children, if any.
std::optional<std::pair<std::int64_t, std::int64_t>>
additivity_violation(const BallMeasure& measure, std::int64_t max_level);

struct LevelSum {
  std::int64_t level;
  PadicNumber sum;
  /// Valuation of sum(level) - sum(level - 1); a lower bound when the
  /// difference vanishes at the known precision.
  std::int64_t stabilization_valuation;
};

struct IntegrationReport {
  /// "dirac", "riemann" or "volkenborn".
  std::string method;
  std::int64_t target_precision;
  std::vector<LevelSum> levels;
  bool converged;
  /// Earliest level N such that level N and every later level agree with the
  /// level before them modulo p^target.
  std::optional<std::int64_t> converged_level;
  /// Last level sum, reduced to the digits on which the last two levels agree.
  PadicNumber limit_estimate;
  std::int64_t stabilization_valuation;
};

/// Sample point chosen in the ball a + p^level Z_p.
using SamplePoint = std::function<PadicNumber(std::int64_t ball, std::int64_t level)>;

/// Riemann sums sum_{a < p^N} f(x_a) mu(a + p^N Z_p) for N = 1..max_level.
/// Dirac measures short-circuit to f(d); unbounded measures are refused.
/// Sample points default to x_a = a.
IntegrationReport riemann_integrate(const PadicFunction& f, const BallMeasure& measure,
                                    std::int64_t max_level, std::int64_t target_precision,
                                    const SamplePoint& sample = {});

/// Volkenborn averages p^-N sum_{a < p^N} f(a) for N = 1..max_level.
IntegrationReport volkenborn_integrate(const PadicFunction& f, std::int64_t prime,
                                       std::int64_t max_level, std::int64_t target_precision,
                                       std::int64_t working_precision);

/// |mu_Haar(p^N Z_p)|_p for N = 1..levels.
std::vector<Rational> haar_unboundedness_witness(std::int64_t prime, std::int64_t levels);

} // namespace padic
