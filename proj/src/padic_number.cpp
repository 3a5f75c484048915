#include "padic/padic_number.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace padic {

namespace {

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DivisionByZero("unit is not invertible modulo p^k");
  return r;
}

// Strips factors of p from `n` in place and returns how many were removed.
std::int64_t strip_prime(Integer& n, std::int64_t prime) {
  if (n == 0)
    return kInfiniteValuation;
  const Integer p = prime;
  return static_cast<std::int64_t>(
      mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

std::int64_t saturating_add(std::int64_t a, std::int64_t b) {
  if (a == kInfiniteValuation || b == kInfiniteValuation)
    return kInfiniteValuation;
  return a + b;
}

} // namespace

bool is_odd_prime(std::int64_t n) {
  if (n < 3 || n % 2 == 0)
    return false;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0)
      return false;
  return true;
}

void require_odd_prime(std::int64_t prime) {
  if (!is_odd_prime(prime))
    throw InvalidArgument("prime must be an odd prime, got " + std::to_string(prime));
}

std::int64_t integer_valuation(const Integer& n, std::int64_t prime) {
  Integer copy = n;
  return strip_prime(copy, prime);
}

Integer prime_power(std::int64_t prime, std::int64_t exponent) {
  if (exponent < 0)
    throw InvalidArgument("negative exponent in prime_power");
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(prime),
                static_cast<unsigned long>(exponent));
  return r;
}

Rational rational_prime_power(std::int64_t prime, std::int64_t exponent) {
  if (exponent >= 0)
    return Rational(prime_power(prime, exponent));
  Rational r(Integer(1), prime_power(prime, -exponent));
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// Construction

PadicNumber PadicNumber::from_rational(const Integer& numerator, const Integer& denominator,
                                       std::int64_t prime, std::int64_t precision) {
  require_odd_prime(prime);
  if (denominator == 0)
    throw InvalidArgument("denominator must be nonzero");
  if (precision < 1)
    throw InvalidArgument("precision must be at least 1");
  if (numerator == 0)
    return exact_zero(prime);
  Integer num = numerator;
  Integer den = denominator;
  const std::int64_t v = strip_prime(num, prime) - strip_prime(den, prime);
  const Integer modulus = prime_power(prime, precision);
  Integer unit = mod(num * inverse_mod(mod(den, modulus), modulus), modulus);
  return PadicNumber(prime, v, std::move(unit), precision);
}

PadicNumber PadicNumber::from_rational(const Rational& value, std::int64_t prime,
                                       std::int64_t precision) {
  return from_rational(value.get_num(), value.get_den(), prime, precision);
}

PadicNumber PadicNumber::from_integer(std::int64_t value, std::int64_t prime,
                                      std::int64_t precision) {
  return from_rational(Integer(static_cast<long>(value)), Integer(1), prime, precision);
}

PadicNumber PadicNumber::exact_zero(std::int64_t prime) {
  require_odd_prime(prime);
  return PadicNumber(prime, kInfiniteValuation, Integer(0), 0);
}

PadicNumber PadicNumber::zero_modulo(std::int64_t prime, std::int64_t absolute_precision) {
  require_odd_prime(prime);
  if (absolute_precision == kInfiniteValuation)
    return exact_zero(prime);
  return PadicNumber(prime, absolute_precision, Integer(0), 0);
}

PadicNumber PadicNumber::from_unit(std::int64_t prime, std::int64_t valuation,
                                   const Integer& unit, std::int64_t precision) {
  require_odd_prime(prime);
  if (precision < 1)
    throw InvalidArgument("precision must be at least 1");
  const Integer modulus = prime_power(prime, precision);
  Integer u = mod(unit, modulus);
  if (mpz_divisible_ui_p(u.get_mpz_t(), static_cast<unsigned long>(prime)))
    throw InvalidArgument("unit part must be prime to p");
  return PadicNumber(prime, valuation, std::move(u), precision);
}

PadicNumber PadicNumber::from_digits(std::int64_t prime, std::int64_t valuation,
                                     std::span<const int> digits) {
  require_odd_prime(prime);
  if (digits.empty())
    return zero_modulo(prime, valuation);
  if (digits.front() == 0)
    throw InvalidArgument("leading digit a_0 must be nonzero");
  Integer unit = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (*it < 0 || *it >= prime)
      throw InvalidArgument("digit out of range [0, p)");
    unit = unit * prime + *it;
  }
  return PadicNumber(prime, valuation, std::move(unit),
                     static_cast<std::int64_t>(digits.size()));
}

// ---------------------------------------------------------------------------
// Queries

std::int64_t PadicNumber::absolute_precision() const noexcept {
  return saturating_add(valuation_, precision_);
}

Rational PadicNumber::norm() const {
  if (is_zero())
    return Rational(0);
  return rational_prime_power(prime_, -valuation_);
}

std::vector<int> PadicNumber::digits(std::int64_t count) const {
  if (is_exact_zero())
    throw InvalidArgument("zero has no canonical expansion");
  if (is_zero())
    throw PrecisionError("value is zero at its known precision; no digits are known");
  if (count < 0)
    throw InvalidArgument("digit count must be nonnegative");
  if (count > precision_)
    throw PrecisionError("requested " + std::to_string(count) + " digits but only " +
                         std::to_string(precision_) + " are known");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count));
  Integer rest = unit_;
  Integer digit;
  for (std::int64_t i = 0; i < count; ++i) {
    digit = mod(rest, Integer(static_cast<long>(prime_)));
    out.push_back(static_cast<int>(digit.get_si()));
    rest = (rest - digit) / prime_;
  }
  return out;
}

Rational PadicNumber::lift() const {
  if (is_zero())
    return Rational(0);
  Rational r = rational_prime_power(prime_, valuation_) * Rational(unit_);
  r.canonicalize();
  return r;
}

PadicNumber PadicNumber::reduce(std::int64_t absolute_precision) const {
  if (absolute_precision >= this->absolute_precision())
    return *this;
  if (is_zero() || absolute_precision <= valuation_)
    return zero_modulo(prime_, absolute_precision);
  const std::int64_t k = absolute_precision - valuation_;
  return PadicNumber(prime_, valuation_, mod(unit_, prime_power(prime_, k)), k);
}

// ---------------------------------------------------------------------------
// Arithmetic

void PadicNumber::check_prime(const PadicNumber& other) const {
  if (prime_ != other.prime_)
    throw InvalidArgument("prime mismatch: " + std::to_string(prime_) + " vs " +
                          std::to_string(other.prime_));
}

PadicNumber PadicNumber::operator-() const {
  if (is_zero())
    return *this;
  return PadicNumber(prime_, valuation_, prime_power(prime_, precision_) - unit_, precision_);
}

PadicNumber& PadicNumber::operator+=(const PadicNumber& rhs) {
  check_prime(rhs);
  if (rhs.is_exact_zero())
    return *this;
  if (is_exact_zero())
    return *this = rhs;

  const std::int64_t abs_prec = std::min(absolute_precision(), rhs.absolute_precision());
  const std::int64_t low = std::min(valuation_, rhs.valuation_);
  if (abs_prec <= low)
    return *this = zero_modulo(prime_, abs_prec);

  const Integer modulus = prime_power(prime_, abs_prec - low);
  Integer sum = unit_ * prime_power(prime_, valuation_ - low) +
                rhs.unit_ * prime_power(prime_, rhs.valuation_ - low);
  sum = mod(sum, modulus);
  if (sum == 0)
    return *this = zero_modulo(prime_, abs_prec);
  const std::int64_t shift = strip_prime(sum, prime_);
  valuation_ = low + shift;
  precision_ = abs_prec - valuation_;
  unit_ = std::move(sum);
  return *this;
}

PadicNumber& PadicNumber::operator-=(const PadicNumber& rhs) { return *this += -rhs; }

PadicNumber& PadicNumber::operator*=(const PadicNumber& rhs) {
  check_prime(rhs);
  if (is_exact_zero())
    return *this;
  if (rhs.is_exact_zero())
    return *this = rhs;
  const std::int64_t v = valuation_ + rhs.valuation_;
  if (is_zero() || rhs.is_zero())
    return *this = zero_modulo(prime_, v + std::min(precision_, rhs.precision_));
  precision_ = std::min(precision_, rhs.precision_);
  valuation_ = v;
  unit_ = mod(unit_ * rhs.unit_, prime_power(prime_, precision_));
  return *this;
}

PadicNumber& PadicNumber::operator/=(const PadicNumber& rhs) {
  check_prime(rhs);
  if (rhs.is_zero())
    throw DivisionByZero("division by a value that is zero at its known precision");
  if (is_exact_zero())
    return *this;
  if (is_zero())
    return *this = zero_modulo(prime_, valuation_ - rhs.valuation_);
  precision_ = std::min(precision_, rhs.precision_);
  valuation_ -= rhs.valuation_;
  const Integer modulus = prime_power(prime_, precision_);
  unit_ = mod(unit_ * inverse_mod(rhs.unit_, modulus), modulus);
  return *this;
}

PadicNumber PadicNumber::inverse() const {
  if (is_zero())
    throw DivisionByZero("inverse of a value that is zero at its known precision");
  const Integer modulus = prime_power(prime_, precision_);
  return PadicNumber(prime_, -valuation_, inverse_mod(unit_, modulus), precision_);
}

PadicNumber PadicNumber::pow(unsigned exponent) const {
  PadicNumber result(prime_, 0, Integer(1), std::max<std::int64_t>(precision_, 1));
  if (exponent == 0)
    return result;
  PadicNumber base = *this;
  result = *this;
  --exponent;
  while (exponent > 0) {
    if (exponent & 1U)
      result *= base;
    exponent >>= 1U;
    if (exponent > 0)
      base *= base;
  }
  return result;
}

std::string PadicNumber::to_string() const {
  if (is_exact_zero())
    return "0";
  std::ostringstream os;
  const auto power = [&](std::int64_t e) {
    os << prime_;
    if (e != 1)
      os << '^' << e;
  };
  if (!is_zero()) {
    const auto ds = digits();
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (ds[i] == 0)
        continue;
      const std::int64_t e = valuation_ + static_cast<std::int64_t>(i);
      os << ds[i];
      if (e != 0) {
        os << '*';
        power(e);
      }
      os << " + ";
    }
  }
  os << "O(";
  power(absolute_precision());
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------

bool congruent(const PadicNumber& x, const PadicNumber& y, std::int64_t absolute_precision) {
  if (x.absolute_precision() < absolute_precision || y.absolute_precision() < absolute_precision)
    throw PrecisionError("operands are not known modulo p^" + std::to_string(absolute_precision));
  const PadicNumber d = x - y;
  return d.valuation() >= absolute_precision;
}

bool agree(const PadicNumber& x, const PadicNumber& y) {
  return (x - y).is_zero();
}

Rational fractional_part(const PadicNumber& x) {
  if (x.valuation() >= 0)
    return Rational(0);
  if (x.is_zero())
    throw PrecisionError("value is only known modulo a negative power of p");
  const std::int64_t depth = -x.valuation();
  if (x.precision() < depth)
    throw PrecisionError("fractional part needs " + std::to_string(depth) +
                         " digits but only " + std::to_string(x.precision()) + " are known");
  const Integer denom = prime_power(x.prime(), depth);
  Integer numer = mod(x.unit(), denom);
  Rational r(numer, denom);
  r.canonicalize();
  return r;
}

CharacterPhase operator+(const CharacterPhase& a, const CharacterPhase& b) {
  Rational r = a.phase + b.phase;
  if (r >= 1)
    r -= 1;
  return CharacterPhase{r};
}

std::complex<double> CharacterPhase::approximate() const {
  return std::polar(1.0, 2.0 * std::numbers::pi * phase.get_d());
}

std::string CharacterPhase::to_string() const { return "e(" + phase.get_str() + ")"; }

CharacterPhase complex_character(const PadicNumber& x) { return CharacterPhase{fractional_part(x)}; }

std::optional<Rational> rational_reconstruction(const PadicNumber& x) {
  if (x.is_zero())
    return Rational(0);
  const std::int64_t shift = std::max<std::int64_t>(0, -x.valuation());
  const std::int64_t prime = x.prime();
  const Integer modulus = prime_power(prime, x.absolute_precision() + shift);
  const Integer target = mod(x.unit() * prime_power(prime, x.valuation() + shift), modulus);

  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(modulus / 2).get_mpz_t());

  Integer r0 = modulus, r1 = target, t0 = 0, t1 = 1;
  while (r1 > bound) {
    const Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0 || abs(t1) > bound)
    return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1 || mpz_divisible_ui_p(t1.get_mpz_t(), static_cast<unsigned long>(prime)))
    return std::nullopt;
  Rational r(r1, t1);
  r.canonicalize();
  return r * rational_prime_power(prime, -shift);
}

std::optional<Rational> plausible_rational(const PadicNumber& x) {
  auto r = rational_reconstruction(x);
  if (!r || x.is_zero())
    return r;
  const std::int64_t shift = std::max<std::int64_t>(0, -x.valuation());
  const Integer modulus = prime_power(x.prime(), x.absolute_precision() + shift);
  const Integer num = abs(r->get_num());
  const Integer height = num > r->get_den() ? num : Integer(r->get_den());
  if (height * height * height > modulus)
    return std::nullopt;
  return r;
}

} // namespace padic
