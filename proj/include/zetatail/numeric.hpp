#ifndef ZETATAIL_NUMERIC_HPP
#define ZETATAIL_NUMERIC_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace zetatail {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed caller input (bad range, unknown exponent, unparsable number).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

inline int sign(const Integer& v) { return sgn(v); }
inline int sign(const Rational& v) { return sgn(v); }

/// Greatest integer <= v.
Integer floor(const Rational& v);

/// Least integer >= v.
Integer ceil(const Rational& v);

/// 10^e as an exact rational (e may be negative).
Rational pow10(long e);

/// x^e for e >= 0.
Integer ipow(const Integer& x, unsigned long e);
Rational ipow(const Rational& x, unsigned long e);

/// Parses "123", "-17", "3/4", "0.999999999999999999", "1e-40" exactly.
Rational parse_rational(std::string_view text);

/// Parses a decimal integer; rejects anything else.
Integer parse_integer(std::string_view text);

std::string to_string(const Integer& v);

/// "p/q" in lowest terms, or "p" when q == 1.
std::string to_string(const Rational& v);

/// 64-bit FNV-1a digest of `bytes` as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Short decimal approximation for human-readable reports only.
std::string approx_string(const Rational& v, int digits = 12);

}  // namespace zetatail

#endif  // ZETATAIL_NUMERIC_HPP
