#ifndef ZETATAIL_POLYNOMIAL_HPP
#define ZETATAIL_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zetatail/numeric.hpp"

namespace zetatail {

/// Dense univariate polynomial over an exact scalar (Integer or Rational).
///
/// Coefficients are stored constant term first. Trailing zeros are stripped on
/// construction, so the zero polynomial is the empty coefficient sequence and
/// degree() == -1 for it. Values are immutable once built; all arithmetic
/// returns new polynomials.
template <typename Scalar>
class Polynomial {
 public:
  using scalar_type = Scalar;

  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coefficients) : coeffs_(std::move(coefficients)) { normalize(); }
  Polynomial(std::initializer_list<Scalar> coefficients) : coeffs_(coefficients) { normalize(); }

  /// The polynomial x.
  static Polynomial x() { return Polynomial({Scalar(0), Scalar(1)}); }
  static Polynomial constant(const Scalar& c) { return Polynomial({c}); }
  /// a*x + b
  static Polynomial linear(const Scalar& a, const Scalar& b) { return Polynomial({b, a}); }
  /// Builds from coefficients listed highest degree first, as polynomials are usually written.
  static Polynomial from_descending(std::vector<Scalar> descending) {
    return Polynomial(std::vector<Scalar>(descending.rbegin(), descending.rend()));
  }

  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }

  /// Coefficient of x^i; zero past the degree.
  Scalar operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Scalar(0); }
  const Scalar& leading() const { return coeffs_.back(); }

  template <typename Arg>
  Arg operator()(const Arg& x) const {
    Arg acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc *= x;
      acc += Arg(*it);
    }
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Scalar> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return Polynomial(std::move(d));
  }

  Polynomial operator-() const {
    std::vector<Scalar> c(coeffs_);
    for (auto& v : c) v = -v;
    return Polynomial(std::move(c));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> c(a.size() + b.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Scalar& k, const Polynomial& p) {
    std::vector<Scalar> c(p.coeffs_);
    for (auto& v : c) v *= k;
    return Polynomial(std::move(c));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Scalar> coeffs_;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;

/// Operation selector for poly_arith.
enum class PolyOp { add, sub, mul };

IntPolynomial poly_arith(const IntPolynomial& a, const IntPolynomial& b, PolyOp op);

/// q(t) = p(t + a), computed by an exact Taylor shift.
IntPolynomial poly_shift(const IntPolynomial& p, const Integer& a);

/// q(t) = p(k*t + a).
IntPolynomial poly_compose_affine(const IntPolynomial& p, const Integer& k, const Integer& a);

Rational eval_rational(const IntPolynomial& p, const Rational& x);

/// Sign of p(x) without forming the rational value.
int sign_at(const IntPolynomial& p, const Rational& x);

/// x^e
IntPolynomial power(const IntPolynomial& p, unsigned e);

/// gcd of the coefficients, always nonnegative; 0 for the zero polynomial.
Integer content(const IntPolynomial& p);

/// p / content(p), with the sign of the leading coefficient kept.
IntPolynomial primitive_part(const IntPolynomial& p);

/// Exact quotient p / (a*x + b). Throws if the division leaves a remainder.
IntPolynomial divide_exact_linear(const IntPolynomial& p, const Integer& a, const Integer& b);

/// Pseudo-remainder with a positive multiplier: |lc(b)|^(deg a - deg b + 1) * a mod b.
IntPolynomial positive_pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);

/// Converts to integer coefficients when every coefficient is integral.
std::optional<IntPolynomial> to_integer(const RatPolynomial& p);
RatPolynomial to_rational(const IntPolynomial& p);

/// Unique interpolant of degree < samples.size() through distinct-abscissa points,
/// via Newton divided differences over the rationals.
RatPolynomial interpolate(std::span<const std::pair<Integer, Integer>> samples);

/// Plain-text rendering in `var`, highest degree first, e.g. "324k^4 - 216k^3 + 84k^2 - 16k - 1".
std::string to_string(const IntPolynomial& p, std::string_view var = "x");
std::string to_string(const RatPolynomial& p, std::string_view var = "x");

/// numerator / denominator, kept exactly as constructed (no gcd reduction).
struct RationalFunctionPair {
  IntPolynomial numerator;
  IntPolynomial denominator;

  RationalFunctionPair(IntPolynomial num, IntPolynomial den);

  /// Throws when x is a pole.
  Rational operator()(const Rational& x) const;
};

}  // namespace zetatail

#endif  // ZETATAIL_POLYNOMIAL_HPP
