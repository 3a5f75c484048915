#include "padic/parse.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace padic {

namespace {

class Scanner {
public:
  explicit Scanner(std::string_view text) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c)))
        text_.push_back(c);
  }

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  bool accept(char c) {
    if (peek() != c)
      return false;
    ++pos_;
    return true;
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("cannot parse '" + text_ + "': " + what + " at offset " +
                          std::to_string(pos_));
  }

  const std::string& text() const { return text_; }

private:
  std::string text_;
  std::size_t pos_ = 0;
};

// Unsigned rational literal "n" or "n/d".
Rational scan_rational(Scanner& in) {
  const std::string num = in.digits();
  if (num.empty())
    in.fail("expected a number");
  Integer n(num);
  Integer d(1);
  if (in.accept('/')) {
    const std::string den = in.digits();
    if (den.empty())
      in.fail("expected a denominator");
    d = Integer(den);
    if (d == 0)
      in.fail("zero denominator");
  }
  Rational q(n, d);
  q.canonicalize();
  return q;
}

} // namespace

Rational parse_rational(std::string_view text) {
  Scanner in(text);
  bool negative = false;
  if (in.accept('-'))
    negative = true;
  else
    in.accept('+');
  Rational q = scan_rational(in);
  if (!in.done())
    in.fail("trailing characters");
  return negative ? Rational(-q) : q;
}

std::vector<Rational> parse_polynomial(std::string_view text) {
  Scanner in(text);
  if (in.done())
    in.fail("empty polynomial");
  std::vector<Rational> coeffs;
  bool first = true;
  while (!in.done()) {
    bool negative = false;
    if (in.accept('-'))
      negative = true;
    else if (!in.accept('+') && !first)
      in.fail("expected '+' or '-'");
    first = false;

    Rational coeff = 1;
    bool has_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(in.peek()))) {
      coeff = scan_rational(in);
      has_coeff = true;
    }
    std::size_t degree = 0;
    if (has_coeff && in.accept('*') && in.peek() != 'x')
      in.fail("expected 'x' after '*'");
    if (in.accept('x')) {
      degree = 1;
      if (in.accept('^')) {
        const std::string e = in.digits();
        if (e.empty())
          in.fail("expected an exponent");
        degree = std::stoul(e);
        if (degree > 4096)
          in.fail("exponent too large");
      }
    } else if (!has_coeff) {
      in.fail("expected a term");
    }
    if (coeffs.size() <= degree)
      coeffs.resize(degree + 1, Rational(0));
    coeffs[degree] += negative ? Rational(-coeff) : coeff;
  }
  while (!coeffs.empty() && coeffs.back() == 0)
    coeffs.pop_back();
  return coeffs;
}

} // namespace padic
