#include "zetatail/polynomial.hpp"

#include <sstream>

namespace zetatail {

IntPolynomial poly_arith(const IntPolynomial& a, const IntPolynomial& b, PolyOp op) {
  switch (op) {
    case PolyOp::add:
      return a + b;
    case PolyOp::sub:
      return a - b;
    case PolyOp::mul:
      return a * b;
  }
  throw InvalidArgument("unknown polynomial operation");
}

IntPolynomial poly_shift(const IntPolynomial& p, const Integer& a) {
  if (a == 0 || p.degree() < 1) return p;
  std::vector<Integer> c = p.coefficients();
  const std::size_t d = c.size() - 1;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = d - 1;; --j) {
      mpz_addmul(c[j].get_mpz_t(), a.get_mpz_t(), c[j + 1].get_mpz_t());
      if (j == i) break;
    }
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial poly_compose_affine(const IntPolynomial& p, const Integer& k, const Integer& a) {
  // p(k t + a) = (p shifted by a)(k t): scale coefficient i by k^i.
  IntPolynomial shifted = poly_shift(p, a);
  std::vector<Integer> c = shifted.coefficients();
  Integer scale(1);
  for (auto& v : c) {
    v *= scale;
    scale *= k;
  }
  return IntPolynomial(std::move(c));
}

Rational eval_rational(const IntPolynomial& p, const Rational& x) {
  if (p.is_zero()) return Rational(0);
  // Homogeneous Horner over num/den, one division at the end.
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  const auto& c = p.coefficients();
  Integer acc = c.back();
  Integer den_power(1);
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    den_power *= den;
    acc *= num;
    mpz_addmul(acc.get_mpz_t(), c[i].get_mpz_t(), den_power.get_mpz_t());
  }
  Rational r(acc, den_power);
  r.canonicalize();
  return r;
}

int sign_at(const IntPolynomial& p, const Rational& x) {
  if (p.is_zero()) return 0;
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  const auto& c = p.coefficients();
  Integer acc = c.back();
  Integer den_power(1);
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    den_power *= den;
    acc *= num;
    mpz_addmul(acc.get_mpz_t(), c[i].get_mpz_t(), den_power.get_mpz_t());
  }
  return sgn(acc);
}

IntPolynomial power(const IntPolynomial& p, unsigned e) {
  IntPolynomial result = IntPolynomial::constant(Integer(1));
  IntPolynomial base = p;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Integer content(const IntPolynomial& p) {
  Integer g(0);
  for (const auto& c : p.coefficients()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPolynomial primitive_part(const IntPolynomial& p) {
  Integer g = content(p);
  if (g == 0 || g == 1) return p;
  std::vector<Integer> c = p.coefficients();
  for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(c));
}

IntPolynomial divide_exact_linear(const IntPolynomial& p, const Integer& a, const Integer& b) {
  if (a == 0) throw InvalidArgument("divide_exact_linear: zero leading coefficient");
  if (p.is_zero()) return {};
  std::vector<Integer> r = p.coefficients();
  const std::size_t d = r.size() - 1;
  if (d == 0) throw Error("divide_exact_linear: constant is not divisible by a linear factor");
  std::vector<Integer> q(d);
  Integer rem;
  for (std::size_t i = d; i >= 1; --i) {
    mpz_tdiv_qr(q[i - 1].get_mpz_t(), rem.get_mpz_t(), r[i].get_mpz_t(), a.get_mpz_t());
    if (rem != 0) throw Error("divide_exact_linear: inexact division");
    mpz_submul(r[i - 1].get_mpz_t(), b.get_mpz_t(), q[i - 1].get_mpz_t());
  }
  if (r[0] != 0) throw Error("divide_exact_linear: nonzero remainder");
  return IntPolynomial(std::move(q));
}

IntPolynomial positive_pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw InvalidArgument("pseudo-remainder by the zero polynomial");
  if (a.degree() < b.degree()) return a;
  const std::size_t n = static_cast<std::size_t>(b.degree());
  const Integer& lc = b.leading();
  const auto& bc = b.coefficients();
  std::vector<Integer> r = a.coefficients();
  const long delta = a.degree() - b.degree();
  // Each step multiplies by lc(b); steps are always performed so the total
  // multiplier is exactly lc(b)^(delta+1).
  for (long e = a.degree(); e >= static_cast<long>(n); --e) {
    const std::size_t top = static_cast<std::size_t>(e);
    Integer t = r[top];
    for (std::size_t i = 0; i <= top; ++i) r[i] *= lc;
    const std::size_t offset = top - n;
    for (std::size_t j = 0; j <= n; ++j) mpz_submul(r[offset + j].get_mpz_t(), t.get_mpz_t(), bc[j].get_mpz_t());
    r.resize(top);
  }
  IntPolynomial rem(std::move(r));
  if (sgn(lc) < 0 && (delta + 1) % 2 == 1) return -rem;
  return rem;
}

std::optional<IntPolynomial> to_integer(const RatPolynomial& p) {
  std::vector<Integer> c;
  c.reserve(p.size());
  for (const auto& v : p.coefficients()) {
    if (v.get_den() != 1) return std::nullopt;
    c.push_back(v.get_num());
  }
  return IntPolynomial(std::move(c));
}

RatPolynomial to_rational(const IntPolynomial& p) {
  std::vector<Rational> c;
  c.reserve(p.size());
  for (const auto& v : p.coefficients()) c.emplace_back(v);
  return RatPolynomial(std::move(c));
}

RatPolynomial interpolate(std::span<const std::pair<Integer, Integer>> samples) {
  const std::size_t n = samples.size();
  if (n == 0) return {};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (samples[i].first == samples[j].first) throw InvalidArgument("interpolate: repeated abscissa");
    }
  }
  std::vector<Rational> dd(n);
  for (std::size_t i = 0; i < n; ++i) dd[i] = Rational(samples[i].second);
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      Rational span(samples[i].first - samples[i - level].first);
      dd[i] = (dd[i] - dd[i - 1]) / span;
      dd[i].canonicalize();
    }
  }
  RatPolynomial result = RatPolynomial::constant(dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    result = result * RatPolynomial::linear(Rational(1), Rational(-samples[i].first)) + RatPolynomial::constant(dd[i]);
  }
  return result;
}

namespace {

template <typename Scalar>
std::string render(const Polynomial<Scalar>& p, std::string_view var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = p.degree(); i >= 0; --i) {
    Scalar c = p[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const bool negative = sgn(c) < 0;
    Scalar mag = negative ? Scalar(-c) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string digits = to_string(mag);
    const bool unit = mag == 1;
    const bool fraction = digits.find('/') != std::string::npos;
    if (i == 0) {
      os << digits;
      continue;
    }
    if (!unit) os << (fraction ? "(" + digits + ")" : digits);
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

}  // namespace

std::string to_string(const IntPolynomial& p, std::string_view var) { return render(p, var); }
std::string to_string(const RatPolynomial& p, std::string_view var) { return render(p, var); }

RationalFunctionPair::RationalFunctionPair(IntPolynomial num, IntPolynomial den)
    : numerator(std::move(num)), denominator(std::move(den)) {
  if (denominator.is_zero()) throw InvalidArgument("rational function with zero denominator");
}

Rational RationalFunctionPair::operator()(const Rational& x) const {
  Rational d = eval_rational(denominator, x);
  if (d == 0) throw InvalidArgument("rational function evaluated at a pole: " + to_string(x));
  Rational v = eval_rational(numerator, x) / d;
  v.canonicalize();
  return v;
}

}  // namespace zetatail
