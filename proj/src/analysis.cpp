#include "padic/analysis.hpp"

#include <algorithm>

namespace padic {

namespace {

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// v_p(n!) by Legendre's formula.
std::int64_t factorial_valuation(std::int64_t n, std::int64_t prime) {
  std::int64_t v = 0;
  for (std::int64_t q = n / prime; q > 0; q /= prime)
    v += q;
  return v;
}

std::int64_t floor_log(std::int64_t n, std::int64_t prime) {
  std::int64_t k = 0;
  for (std::int64_t q = n / prime; q > 0; q /= prime)
    ++k;
  return k;
}

Integer ceil_rational(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

bool whole_line(std::int64_t radius) { return radius <= kWholeLine; }

PadicNumber small_integer(std::int64_t n, std::int64_t prime, std::int64_t precision) {
  return PadicNumber::from_integer(n, prime, std::max<std::int64_t>(precision, 1));
}

// Relative precision to use when scaling a coefficient by a small integer.
std::int64_t scaling_precision(const PadicNumber& c) {
  return c.is_zero() ? 1 : c.precision();
}

} // namespace

std::int64_t DomainE::margin(const PadicNumber& x) {
  if (x.is_exact_zero())
    return kInfiniteValuation;
  return x.valuation() - 1;
}

bool DomainBa::contains(const PadicNumber& x) const { return margin(x) >= 0; }

std::int64_t DomainBa::margin(const PadicNumber& x) const {
  if (x.is_exact_zero() || a.is_exact_zero())
    return kInfiniteValuation;
  return x.valuation() + a.valuation() - 1;
}

// ---------------------------------------------------------------------------
// Exponential

std::int64_t exp_term_count(std::int64_t valuation, std::int64_t prime, std::int64_t target) {
  if (valuation < 1)
    throw DomainError("exponential term count requested outside the convergence disk");
  std::int64_t n = 1;
  while (n * valuation - (n - 1) / (prime - 1) < target)
    ++n;
  return n;
}

PadicNumber exp_p(const PadicNumber& x, std::int64_t target_precision) {
  if (target_precision < 1)
    throw InvalidArgument("exp_p: target precision must be at least 1");
  const std::int64_t p = x.prime();
  if (x.is_exact_zero())
    return PadicNumber::from_integer(1, p, target_precision);
  if (x.valuation() < 1) {
    if (x.is_zero())
      throw DomainError("exp_p: argument is only known modulo p^" +
                        std::to_string(x.valuation()) + ", cannot certify valuation >= 1");
    throw DomainError("exp_p: argument has valuation " + std::to_string(x.valuation()) +
                      " < 1, outside the convergence disk");
  }
  const std::int64_t result_precision = std::min(target_precision, x.absolute_precision());
  if (x.is_zero())
    return PadicNumber::from_integer(1, p, result_precision);

  // sum_{n<M} x^n/n! = (sum_{n<M} x^n (M-1)!/n!) / (M-1)!, computed with
  // integers modulo p^(R + v_p((M-1)!)).
  const std::int64_t terms = exp_term_count(x.valuation(), p, result_precision);
  const std::int64_t fact_val = factorial_valuation(terms - 1, p);
  const Integer modulus = prime_power(p, result_precision + fact_val);
  const Integer lifted = mod(x.unit() * prime_power(p, x.valuation()), modulus);

  Integer acc = 1;
  Integer coeff = 1;
  Integer factorial = 1;
  for (std::int64_t n = terms - 2; n >= 0; --n) {
    coeff *= (n + 1);
    factorial *= (n + 1);
    acc = mod(acc * lifted + coeff, modulus);
  }
  const Integer pe = prime_power(p, fact_val);
  acc /= pe;
  factorial /= pe;
  const Integer result_modulus = prime_power(p, result_precision);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), factorial.get_mpz_t(), result_modulus.get_mpz_t());
  return PadicNumber::from_unit(p, 0, mod(acc * inv, result_modulus), result_precision);
}

PadicNumber char_a(const PadicNumber& a, const PadicNumber& x, std::int64_t target_precision) {
  if (a.prime() != x.prime())
    throw InvalidArgument("char_a: prime mismatch");
  const DomainBa ball{a};
  if (!ball.contains(x))
    throw DomainError("char_a: v(a) + v(x) = " + std::to_string(a.valuation() + x.valuation()) +
                      " < 1, x is outside B^(a)");
  return exp_p(a * x, target_precision);
}

// ---------------------------------------------------------------------------
// Power series

PadicPowerSeries::PadicPowerSeries(std::int64_t prime, std::vector<PadicNumber> coefficients,
                                   PadicNumber center, std::int64_t radius_valuation,
                                   std::optional<TailBound> tail)
    : prime_(prime), coefficients_(std::move(coefficients)), center_(std::move(center)),
      radius_valuation_(radius_valuation), tail_(std::move(tail)) {
  require_odd_prime(prime_);
  if (center_.prime() != prime_)
    throw InvalidArgument("series center has the wrong prime");
  for (const auto& c : coefficients_)
    if (c.prime() != prime_)
      throw InvalidArgument("series coefficient has the wrong prime");
}

PadicPowerSeries PadicPowerSeries::polynomial(std::int64_t prime,
                                              const std::vector<Rational>& coefficients,
                                              std::int64_t precision,
                                              std::int64_t radius_valuation) {
  std::vector<PadicNumber> cs;
  cs.reserve(coefficients.size());
  for (const auto& q : coefficients)
    cs.push_back(PadicNumber::from_rational(q, prime, precision));
  return PadicPowerSeries(prime, std::move(cs), PadicNumber::exact_zero(prime), radius_valuation,
                          TailBound::vanishing());
}

PadicPowerSeries PadicPowerSeries::zero(std::int64_t prime) {
  return PadicPowerSeries(prime, {}, PadicNumber::exact_zero(prime), kWholeLine,
                          TailBound::vanishing());
}

PadicPowerSeries PadicPowerSeries::exponential(std::int64_t prime, std::int64_t degree,
                                               std::int64_t precision) {
  std::vector<PadicNumber> cs;
  Integer factorial = 1;
  for (std::int64_t n = 0; n <= degree; ++n) {
    if (n > 0)
      factorial *= n;
    cs.push_back(PadicNumber::from_rational(Integer(1), factorial, prime, precision));
  }
  // v(1/n!) = -(n - s_p(n))/(p-1) >= -(n-1)/(p-1)
  const Rational inv(Integer(1), Integer(static_cast<long>(prime - 1)));
  return PadicPowerSeries(prime, std::move(cs), PadicNumber::exact_zero(prime), 1,
                          TailBound{-inv, inv, 0, false});
}

bool PadicPowerSeries::is_zero() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(),
                     [](const PadicNumber& c) { return c.is_exact_zero(); });
}

bool PadicPowerSeries::in_disk(const PadicNumber& x) const {
  if (x.prime() != prime_)
    throw InvalidArgument("series evaluated at a point with the wrong prime");
  if (whole_line(radius_valuation_))
    return true;
  return (x - center_).valuation() >= radius_valuation_;
}

bool PadicPowerSeries::radius_consistent() const {
  return radius_consistent(coefficients_, radius_valuation_, tail_, prime_);
}

bool PadicPowerSeries::radius_consistent(const std::vector<PadicNumber>& coefficients,
                                         std::int64_t radius_valuation,
                                         const std::optional<TailBound>& tail,
                                         std::int64_t prime) {
  if (whole_line(radius_valuation))
    return true;
  if (tail && !tail->vanishes && tail->slope + radius_valuation <= 0)
    return false;

  std::vector<std::int64_t> nonzero;
  for (std::size_t n = 0; n < coefficients.size(); ++n)
    if (!coefficients[n].is_zero())
      nonzero.push_back(static_cast<std::int64_t>(n));
  if (nonzero.size() < 2)
    return true;

  const auto weight = [&](std::int64_t n) {
    return coefficients[static_cast<std::size_t>(n)].valuation() + n * radius_valuation;
  };
  const std::int64_t last = nonzero.back();
  std::int64_t window_min = kInfiniteValuation;
  for (auto it = nonzero.rbegin() + 1; it != nonzero.rend(); ++it) {
    if (*it < last - prime && window_min != kInfiniteValuation)
      break;
    window_min = std::min(window_min, weight(*it));
  }
  return weight(last) >= window_min;
}

PadicNumber eval_series(const PadicPowerSeries& f, const PadicNumber& x) {
  if (!f.in_disk(x))
    throw DomainError("point " + x.to_string() + " lies outside the series disk v(x - c) >= " +
                      std::to_string(f.radius_valuation()));
  const auto& cs = f.coefficients();
  if (cs.empty())
    return PadicNumber::exact_zero(f.prime());
  const PadicNumber z = x - f.center();
  PadicNumber acc = cs.back();
  for (auto it = cs.rbegin() + 1; it != cs.rend(); ++it) {
    acc *= z;
    acc += *it;
  }
  return acc;
}

std::optional<std::int64_t> truncation_valuation(const PadicPowerSeries& f, const PadicNumber& x) {
  const auto& tail = f.tail();
  if (!tail)
    return std::nullopt;
  if (tail->vanishes)
    return kInfiniteValuation;
  const PadicNumber z = x - f.center();
  if (z.is_exact_zero())
    return kInfiniteValuation;

  const std::int64_t p = f.prime();
  const Rational slope = tail->slope + z.valuation();
  if (slope <= 0)
    return std::nullopt;
  const std::int64_t loss = tail->log_loss;
  const auto g = [&](std::int64_t n) {
    return Rational(slope * n + tail->offset - loss * floor_log(n, p));
  };

  // g is linear between consecutive powers of p, so the minimum over
  // n > degree is attained at the first index or at a power of p.
  const std::int64_t first = std::max<std::int64_t>(f.degree() + 1, 1);
  Rational best = g(first);
  std::int64_t power = 1;
  while (power <= first)
    power *= p;
  for (;;) {
    const Rational here = g(power);
    best = std::min(best, here);
    const bool rising = slope * (power * (p - 1)) >= loss;
    if (rising && here >= best)
      break;
    power *= p;
  }
  return ceil_rational(best).get_si();
}

PadicPowerSeries derivative(const PadicPowerSeries& f) {
  const std::int64_t p = f.prime();
  std::vector<PadicNumber> cs;
  const auto& src = f.coefficients();
  for (std::size_t n = 1; n < src.size(); ++n)
    cs.push_back(src[n] * small_integer(static_cast<std::int64_t>(n), p, scaling_precision(src[n])));
  std::optional<TailBound> tail = f.tail();
  if (tail && !tail->vanishes)
    tail = TailBound{tail->slope, tail->offset + tail->slope - tail->log_loss, tail->log_loss,
                     false};
  return PadicPowerSeries(p, std::move(cs), f.center(), f.radius_valuation(), tail);
}

PadicPowerSeries antiderivative(const PadicPowerSeries& f) {
  const std::int64_t p = f.prime();
  const auto& src = f.coefficients();
  std::vector<PadicNumber> cs;
  cs.reserve(src.size() + 1);
  cs.push_back(PadicNumber::exact_zero(p));
  for (std::size_t n = 0; n < src.size(); ++n)
    cs.push_back(src[n] /
                 small_integer(static_cast<std::int64_t>(n + 1), p, scaling_precision(src[n])));

  std::optional<TailBound> tail = f.tail();
  if (tail && !tail->vanishes)
    tail = TailBound{tail->slope, tail->offset - tail->slope, tail->log_loss + 1, false};

  std::int64_t radius = f.radius_valuation();
  if (!whole_line(radius)) {
    const std::int64_t limit = radius + 64;
    while (!PadicPowerSeries::radius_consistent(cs, radius, tail, p)) {
      if (++radius > limit)
        throw DomainError("antiderivative: no consistent validity disk found");
    }
  }
  return PadicPowerSeries(p, std::move(cs), f.center(), radius, tail);
}

PadicNumber line_integral(const PadicPowerSeries& f, const PadicNumber& a, const PadicNumber& b) {
  const PadicPowerSeries primitive = antiderivative(f);
  for (const auto* endpoint : {&a, &b})
    if (!primitive.in_disk(*endpoint))
      throw DomainError("line integral endpoint " + endpoint->to_string() +
                        " lies outside the primitive's disk v(x - c) >= " +
                        std::to_string(primitive.radius_valuation()));
  return eval_series(primitive, b) - eval_series(primitive, a);
}

// ---------------------------------------------------------------------------

LocallyAnalyticFunction::LocallyAnalyticFunction(std::int64_t prime, std::int64_t level,
                                                 std::vector<PadicPowerSeries> pieces)
    : prime_(prime), level_(level), pieces_(std::move(pieces)) {
  require_odd_prime(prime_);
  if (level_ < 0 || level_ > 12)
    throw InvalidArgument("cover level must lie in [0, 12]");
  if (Integer(static_cast<long>(pieces_.size())) != prime_power(prime_, level_))
    throw InvalidArgument("a cover of level n needs exactly p^n pieces");
  for (const auto& s : pieces_)
    if (s.prime() != prime_)
      throw InvalidArgument("cover piece has the wrong prime");
}

LocallyAnalyticFunction LocallyAnalyticFunction::uniform(const PadicPowerSeries& series,
                                                         std::int64_t level) {
  const auto count = prime_power(series.prime(), level).get_ui();
  return LocallyAnalyticFunction(series.prime(), level,
                                 std::vector<PadicPowerSeries>(count, series));
}

PadicNumber LocallyAnalyticFunction::operator()(const PadicNumber& x) const {
  if (!x.is_integral())
    throw DomainError("locally analytic function is defined on Z_p only");
  if (x.absolute_precision() < level_)
    throw PrecisionError("point is not known precisely enough to locate its ball");
  std::size_t index = 0;
  if (!x.is_zero()) {
    const Rational lifted = x.lift();
    index = mod(lifted.get_num(), prime_power(prime_, level_)).get_ui();
  }
  return eval_series(pieces_[index], x);
}

} // namespace padic
