#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "padic/error.hpp"

namespace padic {

using Integer = mpz_class;
using Rational = mpq_class;

/// Valuation carried by an exact zero.
inline constexpr std::int64_t kInfiniteValuation = std::numeric_limits<std::int64_t>::max();

bool is_odd_prime(std::int64_t n);

/// Throws InvalidArgument unless `prime` is an odd prime.
void require_odd_prime(std::int64_t prime);

/// Exponent of the largest power of `prime` dividing the nonzero integer `n`.
std::int64_t integer_valuation(const Integer& n, std::int64_t prime);

Integer prime_power(std::int64_t prime, std::int64_t exponent);

/// p^exponent as an exact rational; negative exponents allowed.
Rational rational_prime_power(std::int64_t prime, std::int64_t exponent);

/// An element of Q_p known to finite precision.
///
/// A nonzero value is p^valuation * unit with the unit prime to p and reduced
/// modulo p^precision, so the value is known modulo p^(valuation + precision).
/// There are two zeros.  The exact zero has infinite valuation and absorbs
/// precision like an exact constant.  A zero known only modulo p^n is stored
/// with valuation n and precision 0; its valuation() is then a lower bound.
///
/// Arithmetic follows the usual capped-relative rules: sums are known to the
/// smaller absolute precision of the operands, products and quotients to the
/// smaller relative precision.
class PadicNumber {
public:
  static PadicNumber from_rational(const Integer& numerator, const Integer& denominator,
                                   std::int64_t prime, std::int64_t precision);
  static PadicNumber from_rational(const Rational& value, std::int64_t prime,
                                   std::int64_t precision);
  static PadicNumber from_integer(std::int64_t value, std::int64_t prime, std::int64_t precision);
  static PadicNumber exact_zero(std::int64_t prime);
  static PadicNumber zero_modulo(std::int64_t prime, std::int64_t absolute_precision);
  /// p^valuation * unit with `unit` prime to p, reduced modulo p^precision.
  static PadicNumber from_unit(std::int64_t prime, std::int64_t valuation, const Integer& unit,
                               std::int64_t precision);
  /// Canonical digits a_0, a_1, ... (little-endian) at the given valuation.
  static PadicNumber from_digits(std::int64_t prime, std::int64_t valuation,
                                 std::span<const int> digits);

  std::int64_t prime() const noexcept { return prime_; }
  std::int64_t valuation() const noexcept { return valuation_; }
  const Integer& unit() const noexcept { return unit_; }
  /// Number of known digits past the leading one (relative precision).
  std::int64_t precision() const noexcept { return precision_; }
  /// Value is known modulo p^absolute_precision().
  std::int64_t absolute_precision() const noexcept;

  bool is_zero() const noexcept { return unit_ == 0; }
  bool is_exact_zero() const noexcept { return valuation_ == kInfiniteValuation; }
  bool is_integral() const noexcept { return valuation_ >= 0; }

  /// |x|_p = p^-valuation, exactly.  Zero (of either kind) has norm 0.
  Rational norm() const;

  /// Leading `count` canonical digits; requires a nonzero value and
  /// count <= precision().
  std::vector<int> digits(std::int64_t count) const;
  std::vector<int> digits() const { return digits(precision_); }

  /// The rational p^valuation * unit, i.e. the canonical representative.
  Rational lift() const;

  /// Forget digits beyond p^absolute_precision.
  PadicNumber reduce(std::int64_t absolute_precision) const;

  PadicNumber operator-() const;
  PadicNumber inverse() const;
  PadicNumber pow(unsigned exponent) const;

  PadicNumber& operator+=(const PadicNumber& rhs);
  PadicNumber& operator-=(const PadicNumber& rhs);
  PadicNumber& operator*=(const PadicNumber& rhs);
  PadicNumber& operator/=(const PadicNumber& rhs);

  friend PadicNumber operator+(PadicNumber lhs, const PadicNumber& rhs) { return lhs += rhs; }
  friend PadicNumber operator-(PadicNumber lhs, const PadicNumber& rhs) { return lhs -= rhs; }
  friend PadicNumber operator*(PadicNumber lhs, const PadicNumber& rhs) { return lhs *= rhs; }
  friend PadicNumber operator/(PadicNumber lhs, const PadicNumber& rhs) { return lhs /= rhs; }

  /// Representation equality (same digits and same precision).
  friend bool operator==(const PadicNumber& a, const PadicNumber& b) {
    return a.prime_ == b.prime_ && a.valuation_ == b.valuation_ &&
           a.precision_ == b.precision_ && a.unit_ == b.unit_;
  }

  std::string to_string() const;

private:
  PadicNumber(std::int64_t prime, std::int64_t valuation, Integer unit, std::int64_t precision)
      : prime_(prime), valuation_(valuation), unit_(std::move(unit)), precision_(precision) {}

  void check_prime(const PadicNumber& other) const;

  std::int64_t prime_ = 3;
  std::int64_t valuation_ = kInfiniteValuation;
  Integer unit_ = 0;
  std::int64_t precision_ = 0;
};

/// x == y modulo p^absolute_precision.  Throws PrecisionError when either
/// operand is not known that far.
bool congruent(const PadicNumber& x, const PadicNumber& y, std::int64_t absolute_precision);

/// x == y modulo the smaller of their absolute precisions.
bool agree(const PadicNumber& x, const PadicNumber& y);

/// {x}: the part of the canonical expansion below p^0, as a rational in [0, 1).
Rational fractional_part(const PadicNumber& x);

/// chi(x) = exp(2 pi i {x}), kept as the exact phase {x}.
struct CharacterPhase {
  Rational phase;

  friend CharacterPhase operator+(const CharacterPhase& a, const CharacterPhase& b);
  friend bool operator==(const CharacterPhase& a, const CharacterPhase& b) {
    return a.phase == b.phase;
  }

  /// Display-only floating rendering of the character value.
  std::complex<double> approximate() const;
  /// "e(r)".
  std::string to_string() const;
};

CharacterPhase complex_character(const PadicNumber& x);

/// Smallest rational r/s (|r|, |s| <= sqrt(M/2)) congruent to x modulo
/// M = p^absolute_precision, if one exists.  Display aid for limits.
std::optional<Rational> rational_reconstruction(const PadicNumber& x);

/// rational_reconstruction, kept only when numerator and denominator are
/// small enough that at most a third of the known digits were spent on them.
/// Used for display, where a spurious fraction is worse than none.
std::optional<Rational> plausible_rational(const PadicNumber& x);

} // namespace padic
