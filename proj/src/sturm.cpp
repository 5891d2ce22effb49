#include "zetatail/sturm.hpp"

namespace zetatail {

namespace {

long count_variations(const std::vector<int>& signs) {
  long v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

SturmChain::SturmChain(const IntPolynomial& p) {
  if (p.is_zero()) throw InvalidArgument("Sturm chain of the zero polynomial");
  chain_.push_back(primitive_part(p));
  if (p.degree() == 0) return;
  chain_.push_back(primitive_part(p.derivative()));
  while (chain_.back().degree() > 0) {
    const IntPolynomial& a = chain_[chain_.size() - 2];
    const IntPolynomial& b = chain_.back();
    IntPolynomial r = positive_pseudo_remainder(a, b);
    if (r.is_zero()) break;
    chain_.push_back(primitive_part(-r));
  }
}

long SturmChain::variations_one_sided(const Rational& x, bool right) const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  if (sign_at(chain_.front(), x) != 0) {
    // Away from roots of p the plain signs (zeros dropped) give V(x).
    for (const auto& q : chain_) signs.push_back(sign_at(q, x));
  } else {
    for (const auto& q : chain_) signs.push_back(one_sided_sign(q, x, right));
  }
  return count_variations(signs);
}

long SturmChain::variations_right_of(const Rational& x) const { return variations_one_sided(x, true); }
long SturmChain::variations_left_of(const Rational& x) const { return variations_one_sided(x, false); }

long SturmChain::variations_at_plus_infinity() const {
  std::vector<int> signs;
  for (const auto& q : chain_) signs.push_back(sgn(q.leading()));
  return count_variations(signs);
}

long SturmChain::variations_at_minus_infinity() const {
  std::vector<int> signs;
  for (const auto& q : chain_) signs.push_back(q.degree() % 2 == 0 ? sgn(q.leading()) : -sgn(q.leading()));
  return count_variations(signs);
}

long SturmChain::count_roots(const RootRegion& region) const {
  if (const auto* iv = std::get_if<HalfOpenInterval>(&region)) {
    if (iv->hi <= iv->lo) return 0;
    return variations_right_of(iv->lo) - variations_right_of(iv->hi);
  }
  const auto& ray = std::get<Ray>(region);
  return variations_left_of(ray.lo) - variations_at_plus_infinity();
}

long count_roots(const IntPolynomial& p, const RootRegion& region) {
  if (p.is_zero()) throw InvalidArgument("count_roots: the zero polynomial has infinitely many roots");
  return SturmChain(p).count_roots(region);
}

int one_sided_sign(const IntPolynomial& p, const Rational& x, bool right) {
  if (p.is_zero()) return 0;
  // v^d p((u + t) / v) as a polynomial in t; its lowest nonzero coefficient
  // gives the sign near t = 0.
  const Integer& u = x.get_num();
  const Integer& v = x.get_den();
  const auto& c = p.coefficients();
  const std::size_t d = c.size() - 1;
  std::vector<Integer> homogenized(c.size());
  Integer vp(1);
  for (std::size_t i = d + 1; i-- > 0;) {
    homogenized[i] = c[i] * vp;
    vp *= v;
  }
  IntPolynomial shifted = poly_shift(IntPolynomial(std::move(homogenized)), u);
  const auto& sc = shifted.coefficients();
  for (std::size_t i = 0; i < sc.size(); ++i) {
    if (sc[i] != 0) {
      int s = sgn(sc[i]);
      if (!right && i % 2 == 1) s = -s;
      return s;
    }
  }
  return 0;
}

Integer cauchy_root_bound(const IntPolynomial& p) {
  if (p.degree() < 1) return Integer(1);
  Integer lead = abs(p.leading());
  Integer max_ratio(0);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    Integer q;
    Integer a = abs(p[i]);
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), lead.get_mpz_t());
    if (q > max_ratio) max_ratio = q;
  }
  return max_ratio + 1;
}

}  // namespace zetatail
