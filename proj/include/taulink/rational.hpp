#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace taulink {

// Exact scalar used everywhere. mpq_class keeps values canonical after every
// arithmetic operation; constructors from (num, den) are canonicalized by
// make_rational.
using Rational = mpq_class;
using Integer = mpz_class;

// A caller handed us something outside the operation's domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two independent computations disagreed. Always a bug, never user error.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

// "p/q" in lowest terms, "p" when q == 1, sign on p.
std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

Rational pow(const Rational& base, unsigned exponent);
Integer factorial(unsigned n);

}  // namespace taulink
