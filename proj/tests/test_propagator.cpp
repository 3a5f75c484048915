#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "padic/propagator.hpp"

using namespace padic;

namespace {

PadicNumber q(const mpq_class& v, std::int64_t p, std::int64_t k = 40) {
  return PadicNumber::from_rational(v, p, k);
}

LagrangianSpec free_spec(long m, long a, long p) {
  return LagrangianSpec::free_particle(q(m, p), q(a, p));
}

} // namespace

TEST_CASE("lagrangian validation") {
  CHECK_THROWS_AS(LagrangianSpec::free_particle(PadicNumber::exact_zero(5), q(1, 5)).validate(),
                  InvalidArgument);
  CHECK_THROWS_AS(LagrangianSpec::free_particle(q(1, 5), q(1, 7)).validate(), InvalidArgument);
}

TEST_CASE("path grid") {
  auto g = PathGrid::straight_line(q(0, 5), q(1, 5), q(0, 5), q(1, 5), 3);
  CHECK(g.steps() == 3);
  CHECK(agree(g.epsilon() * q(3, 5), q(1, 5)));
  CHECK(agree(g.time(2), q(mpq_class(2, 3), 5)));
  CHECK_THROWS_AS(PathGrid::straight_line(q(0, 5), q(1, 5), q(0, 5), q(1, 5), 5), DomainError);
  CHECK_THROWS_AS(PathGrid::straight_line(q(0, 5), q(1, 5), q(1, 5), q(1, 5), 2), InvalidArgument);
}

TEST_CASE("discretized action") {
  auto spec = free_spec(3, 1, 5);
  for (std::int64_t n : {1, 2, 3, 4, 6, 7}) {
    auto g = PathGrid::straight_line(q(2, 5), q(9, 5), q(1, 5), q(4, 5), n);
    auto s = discretized_action(g, spec);
    CHECK(oracle::congruent(s.lift(), mpq_class(3 * 49, 2 * 3), 5, s.absolute_precision()));
    CHECK(s.absolute_precision() >= 30);
  }
  auto with_v = spec;
  with_v.potential = PadicPowerSeries::polynomial(5, {Rational(7)}, 40);
  auto g = PathGrid::straight_line(q(2, 5), q(9, 5), q(1, 5), q(4, 5), 4);
  CHECK(agree(discretized_action(g, with_v), discretized_action(g, spec) - q(21, 5)));
  CHECK(agree(discretized_action(g, with_v, false), discretized_action(g, spec) - q(28, 5)));
}

TEST_CASE("action domain check") {
  CHECK(action_domain_check(q(5, 5), q(1, 5)) == 0);
  CHECK(action_domain_check(q(1, 5), q(1, 5)) == -1);
  CHECK(action_domain_check(q(25, 5), q(5, 5)) == 2);
}

TEST_CASE("lipschitz check") {
  auto spec = free_spec(1, 5, 5);
  std::vector<PadicNumber> flat(4, q(3, 5));
  auto constant = PathGrid::from_nodes(q(0, 5), q(1, 5), flat);
  CHECK(lipschitz_check(constant, q(1, 5), spec).holds);

  auto line = PathGrid::straight_line(q(0, 5), q(125, 5), q(0, 5), q(1, 5), 4);
  auto ok = lipschitz_check(line, q(1, 5), spec);
  CHECK(ok.holds);
  CHECK(ok.constant_in_ball);

  std::vector<PadicNumber> jump{q(0, 5), q(1, 5), q(1, 5)};
  auto jumpy = PathGrid::from_nodes(q(0, 5), q(50, 5), jump);
  auto bad = lipschitz_check(jumpy, q(5, 5), spec);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.worst_pair);
  CHECK(bad.worst_pair->first == 0);
  CHECK_FALSE(lipschitz_check(line, q(1, 5), free_spec(1, 1, 5)).constant_in_ball);
}

TEST_CASE("completing the square") {
  auto step = complete_square_step(1, q(3, 5, 30), q(7, 5, 30), q(11, 5, 30));
  CHECK(step.lhs == step.rhs);
  CHECK(step.lhs.lift() == 16 + 16);
  auto x = q(4, 5, 30);
  auto zero = complete_square_step(3, x, x, x);
  CHECK(zero.lhs.is_zero());
  CHECK(zero.rhs.is_zero());
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> digit(0, 1000000);
  for (int trial = 0; trial < 50; ++trial) {
    mpq_class x0 = digit(rng), xk = digit(rng), xk1 = digit(rng);
    auto s = complete_square_step(4, q(x0, 5, 30), q(xk, 5, 30), q(xk1, 5, 30));
    CHECK(agree(s.lhs, s.rhs));
    const mpq_class exact = (xk - x0) * (xk - x0) / 4 + (xk1 - xk) * (xk1 - xk);
    CHECK(oracle::congruent(s.lhs.lift(), exact, 5, s.lhs.absolute_precision()));
  }
  CHECK_THROWS_AS(complete_square_step(124, q(1, 5, 2), q(2, 5, 2), q(3, 5, 2)), PrecisionError);
}

TEST_CASE("free propagator examples") {
  auto spec = free_spec(2, 5, 5);
  auto it = free_propagator_iterated(q(0, 5), q(1, 5), q(0, 5), q(1, 5), 3, spec, 30);
  auto cl = free_propagator_closed(q(0, 5), q(1, 5), q(0, 5), q(1, 5), spec, 30);
  CHECK(it.value == cl.value);
  CHECK(cl.value == exp_p(q(5, 5), 30));
  CHECK(oracle::congruent(cl.value.lift(), oracle::exp_partial_sum(5, 60), 5, 30));
  CHECK(it.diagnostics.size() == 2);
  for (const auto& d : it.diagnostics)
    CHECK(d.square_identity);

  auto same = free_propagator_iterated(q(3, 5), q(3, 5), q(0, 5), q(1, 5), 4, spec, 30);
  CHECK(same.value == PadicNumber::from_integer(1, 5, 30));

  auto bad = free_spec(1, 1, 5);
  try {
    free_propagator_iterated(q(0, 5), q(1, 5), q(0, 5), q(1, 5), 3, bad, 30);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    REQUIRE(e.step());
    CHECK(*e.step() == 1);
  }
  CHECK_THROWS_AS(free_propagator_closed(q(0, 5), q(1, 5), q(0, 5), q(1, 5), bad, 30), DomainError);
}

TEST_CASE("free propagator symmetries") {
  auto spec = free_spec(3, 5, 7);
  auto base = free_propagator_closed(q(2, 7), q(51, 7), q(0, 7), q(3, 7), spec, 30);
  auto shifted = free_propagator_closed(q(12, 7), q(61, 7), q(0, 7), q(3, 7), spec, 30);
  CHECK(base.value == shifted.value);
  auto scaled = free_propagator_closed(q(2, 7), q(51, 7), q(0, 7), q(6, 7), spec, 30);
  REQUIRE(base.exponent_argument);
  REQUIRE(scaled.exponent_argument);
  CHECK(agree(*scaled.exponent_argument * q(2, 7), *base.exponent_argument));
}

TEST_CASE("general propagator") {
  auto spec = free_spec(2, 5, 5);
  const auto x = q(0, 5), y = q(1, 5), t0 = q(0, 5), t = q(1, 5);
  auto family = free_particle_measures(3);
  auto general = propagator_general(x, y, t0, t, 3, spec, family, 30);
  auto iterated = free_propagator_iterated(x, y, t0, t, 3, spec, 30);
  CHECK(general.value == iterated.value);
  REQUIRE(general.stable_under_refinement);
  CHECK(*general.stable_under_refinement);

  auto single = propagator_general(x, y, t0, t, 1, spec, {}, 30);
  CHECK(single.value == free_propagator_closed(x, y, t0, t, spec, 30).value);

  auto with_v = spec;
  with_v.potential = PadicPowerSeries::polynomial(5, {Rational(5)}, 40);
  auto shifted = propagator_general(x, y, t0, t, 3, with_v, family, 30);
  auto factor = exp_p(-(spec.a * q(5, 5) * (t - t0)), 30);
  CHECK(agree(shifted.value, general.value * factor));

  std::vector<StepMeasure> riemann{BallMeasure::mu_minus_one(5, 30)};
  auto r = propagator_general(q(0, 5), q(25, 5), t0, t, 2, spec, riemann, 10);
  CHECK(r.riemann_stabilization);
  CHECK_FALSE(r.exponent_argument);

  std::vector<StepMeasure> wrong_count{ChainedDirac{}};
  CHECK_THROWS_AS(propagator_general(x, y, t0, t, 3, spec, wrong_count, 30), InvalidArgument);
}

TEST_CASE("state evolution") {
  auto spec = free_spec(2, 5, 5);
  auto kernel = free_kernel(q(1, 5), q(0, 5), q(1, 5), spec, 20);
  auto psi = [](const PadicNumber& x) { return x + PadicNumber::from_integer(2, 5, 30); };
  auto d = q(3, 5);
  auto value = evolve_state(psi, kernel, BallMeasure::dirac(d, 30), 3, 10);
  CHECK(value == kernel(d) * psi(d));
  auto one = [](const PadicNumber&) { return PadicNumber::from_integer(1, 5, 30); };
  CHECK(evolve_state(one, kernel, BallMeasure::dirac(d, 30), 3, 10) ==
        free_propagator_closed(d, q(1, 5), q(0, 5), q(1, 5), spec, 20).value);
  auto identity = [](const PadicNumber& x) { return x.reduce(30); };
  auto first = evolve_state(identity, one, BallMeasure::mu_minus_one(5, 30), 6, 4);
  CHECK(oracle::congruent(first.lift(), mpq_class(-1, 2), 5, 4));
  CHECK_THROWS_AS(evolve_state(identity, one, BallMeasure::mu_minus_one(5, 30), 3, 10),
                  ConvergenceError);
}
