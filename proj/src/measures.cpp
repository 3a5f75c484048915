#include "padic/measures.hpp"

#include <algorithm>

namespace padic {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::int64_t kMaxBalls = std::int64_t{1} << 32;

std::int64_t ball_count(std::int64_t prime, std::int64_t level) {
  if (level < 0)
    throw InvalidArgument("ball level must be nonnegative");
  std::int64_t n = 1;
  for (std::int64_t i = 0; i < level; ++i) {
    n *= prime;
    if (n > kMaxBalls)
      throw InvalidArgument("too many balls at level " + std::to_string(level));
  }
  return n;
}

// d mod p^level for d in Z_p.
std::int64_t residue(const PadicNumber& d, std::int64_t level) {
  if (d.is_zero())
    return 0;
  Integer r;
  const Integer m = prime_power(d.prime(), level);
  mpz_mod(r.get_mpz_t(), d.lift().get_num_mpz_t(), m.get_mpz_t());
  return r.get_si();
}

void finish_report(IntegrationReport& report) {
  const auto& levels = report.levels;
  report.stabilization_valuation = levels.back().stabilization_valuation;
  report.converged = report.stabilization_valuation >= report.target_precision;
  report.converged_level.reset();
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    if (it->stabilization_valuation < report.target_precision)
      break;
    report.converged_level = it->level;
  }
  report.limit_estimate = levels.back().sum.reduce(report.stabilization_valuation);
}

void append_level(IntegrationReport& report, std::int64_t level, PadicNumber sum,
                  const PadicNumber& previous) {
  const std::int64_t stab = (sum - previous).valuation();
  report.levels.push_back(LevelSum{level, std::move(sum), stab});
}

void check_levels(std::int64_t max_level, std::int64_t target_precision) {
  if (max_level < 1)
    throw InvalidArgument("max_level must be at least 1");
  if (target_precision < 1)
    throw InvalidArgument("target precision must be at least 1");
}

} // namespace

BallMeasure BallMeasure::dirac(const PadicNumber& point, std::int64_t precision) {
  if (!point.is_integral())
    throw InvalidArgument("Dirac point must lie in Z_p");
  if (precision < 1)
    throw InvalidArgument("measure precision must be at least 1");
  return BallMeasure(point.prime(), precision, Dirac{point});
}

BallMeasure BallMeasure::mu_minus_one(std::int64_t prime, std::int64_t precision) {
  require_odd_prime(prime);
  if (precision < 1)
    throw InvalidArgument("measure precision must be at least 1");
  return BallMeasure(prime, precision, MuMinusOne{});
}

BallMeasure BallMeasure::haar(std::int64_t prime, std::int64_t precision) {
  require_odd_prime(prime);
  if (precision < 1)
    throw InvalidArgument("measure precision must be at least 1");
  return BallMeasure(prime, precision, Haar{});
}

BallMeasure BallMeasure::custom(std::int64_t prime, std::int64_t precision,
                                CustomMeasure measure) {
  require_odd_prime(prime);
  if (!measure.value)
    throw InvalidArgument("custom measure needs a value function");
  return BallMeasure(prime, precision, std::move(measure));
}

bool BallMeasure::bounded() const {
  return std::visit(overloaded{[](const Haar&) { return false; },
                               [](const CustomMeasure& c) { return c.bounded; },
                               [](const auto&) { return true; }},
                    kind_);
}

std::string BallMeasure::name() const {
  return std::visit(overloaded{[](const Dirac&) { return std::string("dirac"); },
                               [](const MuMinusOne&) { return std::string("mu_minus_one"); },
                               [](const Haar&) { return std::string("haar"); },
                               [](const CustomMeasure&) { return std::string("custom"); }},
                    kind_);
}

PadicNumber ball_value(const BallMeasure& measure, std::int64_t ball, std::int64_t level) {
  const std::int64_t count = ball_count(measure.prime(), level);
  if (ball < 0 || ball >= count)
    throw InvalidArgument("ball index " + std::to_string(ball) + " outside [0, p^" +
                          std::to_string(level) + ")");
  const std::int64_t p = measure.prime();
  const std::int64_t prec = measure.precision();
  return std::visit(
      overloaded{
          [&](const Dirac& d) {
            if (d.point.absolute_precision() < level)
              throw PrecisionError("Dirac point is not known modulo p^" + std::to_string(level));
            return residue(d.point, level) == ball ? PadicNumber::from_integer(1, p, prec)
                                                   : PadicNumber::exact_zero(p);
          },
          [&](const MuMinusOne&) {
            return PadicNumber::from_integer(ball % 2 == 0 ? 1 : -1, p, prec);
          },
          [&](const Haar&) {
            return PadicNumber::from_rational(Integer(1), prime_power(p, level), p, prec);
          },
          [&](const CustomMeasure& c) { return c.value(ball, level); }},
      measure.kind());
}

std::optional<std::pair<std::int64_t, std::int64_t>>
additivity_violation(const BallMeasure& measure, std::int64_t max_level) {
  const std::int64_t p = measure.prime();
  for (std::int64_t level = 0; level < max_level; ++level) {
    const std::int64_t count = ball_count(p, level);
    for (std::int64_t a = 0; a < count; ++a) {
      PadicNumber children = PadicNumber::exact_zero(p);
      for (std::int64_t j = 0; j < p; ++j)
        children += ball_value(measure, a + j * count, level + 1);
      if (!agree(ball_value(measure, a, level), children))
        return std::pair{a, level};
    }
  }
  return std::nullopt;
}

IntegrationReport riemann_integrate(const PadicFunction& f, const BallMeasure& measure,
                                    std::int64_t max_level, std::int64_t target_precision,
                                    const SamplePoint& sample) {
  check_levels(max_level, target_precision);
  const std::int64_t p = measure.prime();

  if (const Dirac* d = measure.as_dirac()) {
    const PadicNumber value = f(d->point);
    IntegrationReport report{"dirac", target_precision, {}, true, 1, value, kInfiniteValuation};
    for (std::int64_t level = 1; level <= max_level; ++level)
      report.levels.push_back(LevelSum{level, value, kInfiniteValuation});
    return report;
  }
  if (!measure.bounded())
    throw UnboundedMeasureError("Riemann sums need a bounded measure; " + measure.name() +
                                " is a distribution (use the Volkenborn integral)");

  const auto point = [&](std::int64_t a, std::int64_t level) {
    return sample ? sample(a, level) : PadicNumber::from_integer(a, p, measure.precision());
  };
  const auto level_sum = [&](std::int64_t level) {
    const std::int64_t count = ball_count(p, level);
    PadicNumber sum = PadicNumber::exact_zero(p);
    const bool alternating = std::holds_alternative<MuMinusOne>(measure.kind());
    for (std::int64_t a = 0; a < count; ++a) {
      PadicNumber fx = f(point(a, level));
      if (alternating)
        sum += (a % 2 == 0) ? fx : -fx;
      else
        sum += fx * ball_value(measure, a, level);
    }
    return sum;
  };

  IntegrationReport report{"riemann", target_precision, {}, false, std::nullopt,
                           PadicNumber::exact_zero(p), 0};
  PadicNumber previous = level_sum(0);
  for (std::int64_t level = 1; level <= max_level; ++level) {
    PadicNumber sum = level_sum(level);
    append_level(report, level, sum, previous);
    previous = std::move(sum);
  }
  finish_report(report);
  return report;
}

IntegrationReport volkenborn_integrate(const PadicFunction& f, std::int64_t prime,
                                       std::int64_t max_level, std::int64_t target_precision,
                                       std::int64_t working_precision) {
  check_levels(max_level, target_precision);
  const BallMeasure haar = BallMeasure::haar(prime, working_precision);

  IntegrationReport report{"volkenborn", target_precision, {}, false, std::nullopt,
                           PadicNumber::exact_zero(prime), 0};
  PadicNumber total = f(PadicNumber::exact_zero(prime));
  PadicNumber previous = total;
  std::int64_t done = 1;
  for (std::int64_t level = 1; level <= max_level; ++level) {
    // Extend the running sum of f(a) from a < p^(level-1) to a < p^level.
    const std::int64_t count = ball_count(prime, level);
    for (std::int64_t a = done; a < count; ++a)
      total += f(PadicNumber::from_integer(a, prime, working_precision));
    done = count;
    PadicNumber average = total * ball_value(haar, 0, level);
    append_level(report, level, average, previous);
    previous = std::move(average);
  }
  finish_report(report);
  return report;
}

std::vector<Rational> haar_unboundedness_witness(std::int64_t prime, std::int64_t levels) {
  if (levels < 1)
    throw InvalidArgument("levels must be at least 1");
  const BallMeasure haar = BallMeasure::haar(prime, 1);
  std::vector<Rational> norms;
  for (std::int64_t level = 1; level <= levels; ++level)
    norms.push_back(ball_value(haar, 0, level).norm());
  return norms;
}

} // namespace padic
