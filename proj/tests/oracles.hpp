// Independent reference computations used by the tests.  They work on exact
// rationals and small integers only and never call into the library's
// p-adic arithmetic.
#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

inline std::int64_t valuation(mpz_class n, long p) {
  if (n == 0)
    return kInf;
  std::int64_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline std::int64_t valuation(const mpq_class& q, long p) {
  if (q == 0)
    return kInf;
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

inline mpq_class power(long p, std::int64_t e) {
  mpz_class r = 1;
  for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i)
    r *= p;
  return e < 0 ? mpq_class(1, r) : mpq_class(r);
}

// Canonical digits of q by repeated division with remainder: a_0 is the
// residue of p^-v q mod p, then subtract and divide by p.
inline std::vector<int> digits(mpq_class q, long p, int count, std::int64_t* v_out = nullptr) {
  const std::int64_t v = valuation(q, p);
  if (v_out)
    *v_out = v;
  q *= power(p, -v);
  q.canonicalize();
  std::vector<int> out;
  for (int i = 0; i < count; ++i) {
    const long num = mpz_class(q.get_num() % p + p).get_si() % p;
    const long den = mpz_class(q.get_den() % p).get_si();
    long inv = 1;
    while ((den * inv) % p != 1)
      ++inv;
    const long a = (num * inv) % p;
    out.push_back(static_cast<int>(a));
    q = (q - a) / p;
    q.canonicalize();
  }
  return out;
}

// x and y agree modulo p^target.
inline bool congruent(const mpq_class& x, const mpq_class& y, long p, std::int64_t target) {
  return valuation(mpq_class(x - y), p) >= target;
}

// sum_{n < terms} x^n/n! as an exact rational.
inline mpq_class exp_partial_sum(const mpq_class& x, int terms) {
  mpq_class sum = 0, term = 1;
  for (int n = 0; n < terms; ++n) {
    if (n > 0) {
      term *= x;
      term /= n;
    }
    sum += term;
  }
  return sum;
}

// sum_{a < p^N} (-1)^a a^k computed directly.
inline mpq_class alternating_moment(long p, int level, int k) {
  mpz_class count = 1;
  for (int i = 0; i < level; ++i)
    count *= p;
  mpq_class sum = 0;
  for (mpz_class a = 0; a < count; ++a) {
    mpz_class t;
    mpz_pow_ui(t.get_mpz_t(), a.get_mpz_t(), k);
    sum += (a % 2 == 0) ? mpq_class(t) : mpq_class(-t);
  }
  return sum;
}

// Volkenborn level averages from the closed forms.
inline mpq_class volkenborn_average(long p, int level, int k) {
  const mpq_class n = power(p, level);
  if (k == 0)
    return 1;
  if (k == 1)
    return (n - 1) / 2;
  return mpq_class((n - 1) * (2 * n - 1)) / 6;
}

inline mpq_class eval_poly(const std::vector<mpq_class>& c, const mpq_class& x) {
  mpq_class r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    r = r * x + *it;
  return r;
}

inline mpq_class random_rational(std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, bound);
  mpq_class q(mpz_class(num(rng)), mpz_class(den(rng)));
  q.canonicalize();
  return q;
}

} // namespace oracle
