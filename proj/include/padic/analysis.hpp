#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "padic/padic_number.hpp"

namespace padic {

/// Disk of convergence of the exponential: |x|_p < p^(-1/(p-1)).
/// For x in Q_p with p odd this is exactly valuation(x) >= 1.
struct DomainE {
  static bool contains(const PadicNumber& x) { return x.valuation() >= 1; }
  /// valuation(x) - 1; nonnegative iff x is in the disk.
  static std::int64_t margin(const PadicNumber& x);
};

/// Ball on which chi_a(x) = exp_p(a x) is defined: valuation(x) + valuation(a) >= 1.
struct DomainBa {
  PadicNumber a;

  bool contains(const PadicNumber& x) const;
  std::int64_t margin(const PadicNumber& x) const;
};

/// Number of terms of sum x^n/n! needed so that every omitted term has
/// valuation >= target.  Uses v(x^n/n!) >= n*v(x) - floor((n-1)/(p-1)).
std::int64_t exp_term_count(std::int64_t valuation, std::int64_t prime, std::int64_t target);

/// The p-adic exponential, correct modulo p^min(target, absolute precision of x).
PadicNumber exp_p(const PadicNumber& x, std::int64_t target_precision);

/// chi_a(x) = exp_p(a x) on the ball B^(a).
PadicNumber char_a(const PadicNumber& a, const PadicNumber& x, std::int64_t target_precision);

/// Radius marker for series that are valid on all of Q_p (polynomials).
inline constexpr std::int64_t kWholeLine = std::numeric_limits<std::int64_t>::min() / 4;

/// Lower bound v(c_n) >= slope*n + offset - log_loss*floor(log_p n) on the
/// coefficients omitted past the truncation degree.  `vanishes` marks a
/// series with no omitted terms at all.
struct TailBound {
  Rational slope;
  Rational offset;
  std::int64_t log_loss = 0;
  bool vanishes = false;

  static TailBound vanishing() { return TailBound{Rational(0), Rational(0), 0, true}; }
};

/// A power series over Q_p truncated at a declared degree.
///
/// The series is declared valid on the closed disk valuation(x - center) >=
/// radius_valuation.  When the omitted tail is known to obey a linear
/// valuation bound it is kept in `tail`, which lets evaluation report how far
/// the truncated polynomial can be from the full series.
class PadicPowerSeries {
public:
  PadicPowerSeries(std::int64_t prime, std::vector<PadicNumber> coefficients,
                   PadicNumber center, std::int64_t radius_valuation,
                   std::optional<TailBound> tail = std::nullopt);

  /// Polynomial with rational coefficients at the given precision, centered
  /// at 0 and valid everywhere unless a radius is given.
  static PadicPowerSeries polynomial(std::int64_t prime, const std::vector<Rational>& coefficients,
                                     std::int64_t precision,
                                     std::int64_t radius_valuation = kWholeLine);
  static PadicPowerSeries zero(std::int64_t prime);
  /// sum_{n <= degree} x^n / n!, valid on valuation(x) >= 1.
  static PadicPowerSeries exponential(std::int64_t prime, std::int64_t degree,
                                      std::int64_t precision);

  std::int64_t prime() const noexcept { return prime_; }
  const std::vector<PadicNumber>& coefficients() const noexcept { return coefficients_; }
  const PadicNumber& center() const noexcept { return center_; }
  std::int64_t radius_valuation() const noexcept { return radius_valuation_; }
  /// -1 for the empty (zero) series.
  std::int64_t degree() const noexcept {
    return static_cast<std::int64_t>(coefficients_.size()) - 1;
  }
  const std::optional<TailBound>& tail() const noexcept { return tail_; }

  bool is_zero() const;
  bool in_disk(const PadicNumber& x) const;

  /// Necessary condition for the declared radius: v(a_D) + D*r is not below
  /// the smallest v(a_n) + n*r over the preceding p indices, and any recorded
  /// tail bound decays on the disk.
  bool radius_consistent() const;
  static bool radius_consistent(const std::vector<PadicNumber>& coefficients,
                                std::int64_t radius_valuation,
                                const std::optional<TailBound>& tail, std::int64_t prime);

private:
  std::int64_t prime_;
  std::vector<PadicNumber> coefficients_;
  PadicNumber center_;
  std::int64_t radius_valuation_;
  std::optional<TailBound> tail_;
};

/// Horner evaluation of the truncated polynomial at x.
PadicNumber eval_series(const PadicPowerSeries& f, const PadicNumber& x);

/// Lower bound on the valuation of the omitted tail at x, when the series
/// records a decaying tail bound there.
std::optional<std::int64_t> truncation_valuation(const PadicPowerSeries& f, const PadicNumber& x);

PadicPowerSeries derivative(const PadicPowerSeries& f);

/// Term-by-term primitive with zero constant term.  The validity radius is
/// re-derived from the new coefficients rather than copied.
PadicPowerSeries antiderivative(const PadicPowerSeries& f);

/// F(b) - F(a) with F the term-by-term primitive of f.
PadicNumber line_integral(const PadicPowerSeries& f, const PadicNumber& a, const PadicNumber& b);

using PadicFunction = std::function<PadicNumber(const PadicNumber&)>;

/// A function on Z_p given by one power series per ball a + p^level Z_p.
class LocallyAnalyticFunction {
public:
  /// `pieces[a]` is used on a + p^level Z_p; there must be p^level pieces.
  LocallyAnalyticFunction(std::int64_t prime, std::int64_t level,
                          std::vector<PadicPowerSeries> pieces);
  /// The same global series on every ball of the given level.
  static LocallyAnalyticFunction uniform(const PadicPowerSeries& series, std::int64_t level = 0);

  std::int64_t prime() const noexcept { return prime_; }
  std::int64_t level() const noexcept { return level_; }
  const std::vector<PadicPowerSeries>& pieces() const noexcept { return pieces_; }

  PadicNumber operator()(const PadicNumber& x) const;

private:
  std::int64_t prime_;
  std::int64_t level_;
  std::vector<PadicPowerSeries> pieces_;
};

} // namespace padic
