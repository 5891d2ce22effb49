#ifndef ZETATAIL_STURM_HPP
#define ZETATAIL_STURM_HPP

#include <variant>
#include <vector>

#include "zetatail/numeric.hpp"
#include "zetatail/polynomial.hpp"

namespace zetatail {

/// Half-open interval (lo, hi]: a root at lo is not counted, a root at hi is.
struct HalfOpenInterval {
  Rational lo;
  Rational hi;
};

/// Closed ray [lo, +inf): a root at lo is counted.
struct Ray {
  Rational lo;
};

using RootRegion = std::variant<HalfOpenInterval, Ray>;

/// Signed remainder sequence p, p', -prem(p, p'), ... with every element made
/// primitive. Scaling is by positive factors only, so the sign pattern at any
/// point is that of the classical Sturm sequence.
class SturmChain {
 public:
  explicit SturmChain(const IntPolynomial& p);

  const std::vector<IntPolynomial>& chain() const { return chain_; }
  const IntPolynomial& polynomial() const { return chain_.front(); }

  /// Number of distinct real roots in the region.
  long count_roots(const RootRegion& region) const;

  /// Sign variations just right of x, V(x+).
  long variations_right_of(const Rational& x) const;
  /// Sign variations just left of x, V(x-).
  long variations_left_of(const Rational& x) const;
  long variations_at_plus_infinity() const;
  long variations_at_minus_infinity() const;

 private:
  long variations_one_sided(const Rational& x, bool right) const;

  std::vector<IntPolynomial> chain_;
};

/// Throws InvalidArgument for the zero polynomial (its root set is not finite).
long count_roots(const IntPolynomial& p, const RootRegion& region);

/// Sign of p(x + eps) (right = true) or p(x - eps) for all small eps > 0.
int one_sided_sign(const IntPolynomial& p, const Rational& x, bool right);

/// Cauchy bound: every real root r satisfies |r| < bound.
Integer cauchy_root_bound(const IntPolynomial& p);

}  // namespace zetatail

#endif  // ZETATAIL_STURM_HPP
