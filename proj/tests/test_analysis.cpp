#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "padic/analysis.hpp"

using namespace padic;

namespace {

PadicNumber q(const mpq_class& v, std::int64_t p, std::int64_t k) {
  return PadicNumber::from_rational(v, p, k);
}

std::vector<Rational> rationals(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs)
    out.emplace_back(x);
  return out;
}

} // namespace

TEST_CASE("domains") {
  CHECK(DomainE::contains(q(5, 5, 10)));
  CHECK_FALSE(DomainE::contains(q(1, 5, 10)));
  CHECK(DomainE::margin(q(25, 5, 10)) == 1);
  DomainBa ba{q(5, 5, 10)};
  CHECK(ba.contains(q(1, 5, 10)));
  CHECK_FALSE(ba.contains(q(mpq_class(1, 5), 5, 10)));
  CHECK(ba.margin(q(25, 5, 10)) == 2);
}

TEST_CASE("exp_p examples") {
  CHECK(exp_p(PadicNumber::exact_zero(5), 10) == PadicNumber::from_integer(1, 5, 10));
  auto e5 = exp_p(q(5, 5, 20), 6);
  CHECK(e5.absolute_precision() == 6);
  CHECK(oracle::congruent(e5.lift(), oracle::exp_partial_sum(5, 9), 5, 6));
  CHECK_THROWS_AS(exp_p(q(1, 5, 20), 6), DomainError);
  CHECK_THROWS_AS(exp_p(q(mpq_class(1, 5), 5, 20), 6), DomainError);
}

TEST_CASE("exp_p against exact partial sums") {
  std::mt19937_64 rng(3);
  for (long p : {3L, 5L, 7L}) {
    for (int trial = 0; trial < 40; ++trial) {
      mpq_class x = oracle::random_rational(rng, 50) * p;
      x.canonicalize();
      if (x == 0 || oracle::valuation(x, p) < 1)
        continue;
      const std::int64_t target = 15;
      auto e = exp_p(q(x, p, 40), target);
      REQUIRE(e.absolute_precision() == target);
      // Enough terms that the omitted tail is below p^target for certain.
      const mpq_class reference = oracle::exp_partial_sum(x, 80);
      CHECK(oracle::congruent(e.lift(), reference, p, target));
      // Raising the working precision never contradicts the reported digits.
      auto finer = exp_p(q(x, p, 60), 30);
      CHECK(congruent(e, finer, target));
    }
  }
}

TEST_CASE("exp_p homomorphism and char_a") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const long p = 5;
    mpq_class a = oracle::random_rational(rng, 100) * 5, b = oracle::random_rational(rng, 100) * 25;
    a.canonicalize();
    b.canonicalize();
    if (a == 0 || b == 0 || oracle::valuation(a, p) < 1)
      continue;
    auto x = q(a, p, 25), y = q(b, p, 25);
    auto lhs = exp_p(x + y, 20);
    auto rhs = exp_p(x, 20) * exp_p(y, 20);
    CHECK(agree(lhs, rhs));
  }
  auto a = q(5, 5, 20);
  CHECK(char_a(a, PadicNumber::exact_zero(5), 10) == PadicNumber::from_integer(1, 5, 10));
  CHECK(char_a(a, q(1, 5, 20), 10) == exp_p(q(5, 5, 20), 10));
  CHECK_THROWS_AS(char_a(q(1, 5, 20), q(1, 5, 20), 10), DomainError);
}

TEST_CASE("polynomial evaluation") {
  auto f = PadicPowerSeries::polynomial(5, rationals({0, 0, 1}), 20);
  CHECK(eval_series(f, q(3, 5, 20)).lift() == 9);
  auto g = PadicPowerSeries::polynomial(5, rationals({4, 3, 2}), 20);
  CHECK(eval_series(g, PadicNumber::exact_zero(5)).lift() == 4);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Rational> cs;
    for (int i = 0; i <= 10; ++i)
      cs.push_back(oracle::random_rational(rng, 30));
    auto h = PadicPowerSeries::polynomial(7, cs, 25);
    const mpq_class x = oracle::random_rational(rng, 30);
    auto value = eval_series(h, q(x, 7, 25));
    CHECK(oracle::congruent(value.lift(), oracle::eval_poly(cs, x), 7, value.absolute_precision()));
  }
}

TEST_CASE("series disk") {
  auto e = PadicPowerSeries::exponential(5, 20, 30);
  CHECK(e.radius_valuation() == 1);
  CHECK(e.radius_consistent());
  CHECK_THROWS_AS(eval_series(e, q(1, 5, 20)), DomainError);
  auto v = eval_series(e, q(5, 5, 20));
  auto t = truncation_valuation(e, q(5, 5, 20));
  REQUIRE(t);
  CHECK(*t >= 15);
  CHECK(congruent(v, exp_p(q(5, 5, 20), 20), std::min<std::int64_t>(*t, 20)));
}

TEST_CASE("derivative and antiderivative") {
  auto c = PadicPowerSeries::polynomial(5, rationals({3}), 20);
  CHECK(derivative(c).is_zero());
  auto x2 = PadicPowerSeries::polynomial(5, rationals({0, 0, 1}), 20);
  auto d = derivative(x2);
  REQUIRE(d.degree() == 1);
  CHECK(d.coefficients()[0].is_zero());
  CHECK(d.coefficients()[1].lift() == 2);

  auto one = PadicPowerSeries::polynomial(5, rationals({1}), 20);
  auto F = antiderivative(one);
  REQUIRE(F.degree() == 1);
  CHECK(F.coefficients()[0].is_exact_zero());
  CHECK(F.coefficients()[1].lift() == 1);
  auto G = antiderivative(PadicPowerSeries::polynomial(5, rationals({0, 2}), 20));
  REQUIRE(G.degree() == 2);
  CHECK(G.coefficients()[2].lift() == 1);

  // Primitive of the truncated exponential is the exponential minus 1.
  auto e = PadicPowerSeries::exponential(5, 30, 40);
  auto E = antiderivative(e);
  auto e_next = PadicPowerSeries::exponential(5, 31, 40);
  REQUIRE(E.degree() == 31);
  CHECK(E.coefficients()[0].is_exact_zero());
  for (std::size_t n = 1; n < E.coefficients().size(); ++n)
    CHECK(agree(E.coefficients()[n], e_next.coefficients()[n]));
  CHECK(E.radius_consistent());

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Rational> cs;
    for (int i = 0; i <= 12; ++i)
      cs.push_back(oracle::random_rational(rng, 40));
    auto f = PadicPowerSeries::polynomial(3, cs, 25);
    auto back = derivative(antiderivative(f));
    REQUIRE(back.degree() == f.degree());
    for (std::size_t n = 0; n < cs.size(); ++n)
      CHECK(agree(back.coefficients()[n], f.coefficients()[n]));
  }
}

TEST_CASE("line integrals") {
  auto one = PadicPowerSeries::polynomial(5, rationals({1}), 20);
  auto b = q(mpq_class(7, 3), 5, 20);
  CHECK(agree(line_integral(one, PadicNumber::exact_zero(5), b), b));

  auto two_x = PadicPowerSeries::polynomial(5, rationals({0, 2}), 20);
  auto a = q(mpq_class(-4, 9), 5, 20);
  CHECK(agree(line_integral(two_x, a, b), b * b - a * a));

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> cs;
    for (int i = 0; i <= 6; ++i)
      cs.push_back(oracle::random_rational(rng, 40));
    auto f = PadicPowerSeries::polynomial(7, cs, 25);
    auto x = q(oracle::random_rational(rng, 40), 7, 25);
    auto y = q(oracle::random_rational(rng, 40), 7, 25);
    auto z = q(oracle::random_rational(rng, 40), 7, 25);
    CHECK(agree(line_integral(f, x, y) + line_integral(f, y, z), line_integral(f, x, z)));
  }

  // The primitive of the exponential series lives on valuation >= 1.
  auto e = PadicPowerSeries::exponential(5, 30, 40);
  CHECK_THROWS_AS(line_integral(e, PadicNumber::exact_zero(5), q(1, 5, 20)), DomainError);
  auto b5 = q(10, 5, 30);
  auto integral = line_integral(e, PadicNumber::exact_zero(5), b5);
  auto expected = exp_p(b5, 30) - PadicNumber::from_integer(1, 5, 30);
  auto bound = truncation_valuation(antiderivative(e), b5);
  REQUIRE(bound);
  CHECK(congruent(integral, expected, std::min({*bound, integral.absolute_precision(),
                                                expected.absolute_precision()})));
}

TEST_CASE("locally analytic functions") {
  std::vector<PadicPowerSeries> pieces;
  for (int a = 0; a < 5; ++a)
    pieces.push_back(PadicPowerSeries::polynomial(5, rationals({a, 1}), 20));
  LocallyAnalyticFunction psi(5, 1, pieces);
  CHECK(psi(q(7, 5, 20)).lift() == 9);
  CHECK_THROWS_AS(psi(q(mpq_class(1, 5), 5, 20)), DomainError);
  CHECK_THROWS_AS(LocallyAnalyticFunction(5, 2, pieces), InvalidArgument);
  auto u = LocallyAnalyticFunction::uniform(pieces[3]);
  CHECK(u(q(2, 5, 20)).lift() == 5);
}
