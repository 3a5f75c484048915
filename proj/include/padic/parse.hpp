#pragma once

#include <string_view>
#include <vector>

#include "padic/padic_number.hpp"

namespace padic {

/// "n" or "n/d" with an optional sign.  Throws InvalidArgument.
Rational parse_rational(std::string_view text);

/// Polynomial in x with rational coefficients, e.g. "3*x^2 - 1/2*x + 4".
/// Returns coefficients c_0..c_D with trailing zeros removed.
std::vector<Rational> parse_polynomial(std::string_view text);

} // namespace padic
