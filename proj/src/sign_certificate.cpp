#include "zetatail/sign_certificate.hpp"

#include <deque>

namespace zetatail {

std::string to_string(Sign s) { return s == Sign::positive ? "positive" : "negative"; }

std::string to_string(SignCertificate::Method m) {
  return m == SignCertificate::Method::shifted_coefficients ? "shifted_coefficients" : "sturm_count";
}

BoundaryRootError::BoundaryRootError(Integer x0)
    : Error("polynomial vanishes at the ray start x0 = " + to_string(x0) + "; retry with x0 + 1"),
      x0_(std::move(x0)) {}

std::string coefficient_digest(const IntPolynomial& p) {
  std::string text;
  for (const auto& c : p.coefficients()) {
    if (!text.empty()) text += ',';
    text += c.get_str(10);
  }
  return fnv1a_hex(text);
}

namespace {

long count_wrong(const IntPolynomial& shifted, Sign want) {
  long wrong = 0;
  for (const auto& c : shifted.coefficients()) {
    if (sgn(c) == -to_int(want)) ++wrong;
  }
  return wrong;
}

SignCertificate make_certificate(SignCertificate::Method method, const Integer& x0, Sign want,
                                 const IntPolynomial& p, const IntPolynomial& shifted) {
  SignCertificate cert;
  cert.method = method;
  cert.x0 = x0;
  cert.want = want;
  cert.degree = p.degree();
  cert.shifted_digest = coefficient_digest(shifted);
  cert.wrong_sign_coefficients = count_wrong(shifted, want);
  return cert;
}

// Looks for x > x0 with sign(p(x)) != want, given that p(x0) has the wanted
// sign, the leading coefficient has the wanted sign, and Sturm reports roots on
// the ray. Bisects root-carrying intervals and tests midpoints.
std::optional<Rational> search_interior_witness(const IntPolynomial& p, const SturmChain& chain,
                                                const Integer& x0, Sign want) {
  Rational lo(x0);
  Rational hi(cauchy_root_bound(p));
  if (hi <= lo) return std::nullopt;
  std::deque<HalfOpenInterval> work{{lo, hi}};
  int budget = 4096;
  while (!work.empty() && budget-- > 0) {
    HalfOpenInterval iv = work.front();
    work.pop_front();
    if (sign_at(p, iv.hi) != to_int(want)) return iv.hi;
    if (chain.count_roots(iv) == 0) continue;
    Rational mid = (iv.lo + iv.hi) / 2;
    mid.canonicalize();
    if (sign_at(p, mid) != to_int(want)) return mid;
    work.push_back({iv.lo, mid});
    work.push_back({mid, iv.hi});
  }
  return std::nullopt;
}

}  // namespace

std::optional<SignCertificate> try_shifted_coefficients(const IntPolynomial& p, const Integer& x0, Sign want) {
  if (p.is_zero()) throw InvalidArgument("sign certification of the zero polynomial");
  IntPolynomial shifted = poly_shift(p, x0);
  if (sgn(shifted[0]) == 0) throw BoundaryRootError(x0);
  if (count_wrong(shifted, want) != 0) return std::nullopt;
  return make_certificate(SignCertificate::Method::shifted_coefficients, x0, want, p, shifted);
}

std::optional<SignCertificate> try_sturm_count(const IntPolynomial& p, const Integer& x0, Sign want,
                                               const SturmChain* chain) {
  if (p.is_zero()) throw InvalidArgument("sign certification of the zero polynomial");
  const int at_start = sign_at(p, Rational(x0));
  if (at_start == 0) throw BoundaryRootError(x0);
  if (at_start != to_int(want)) return std::nullopt;
  std::optional<SturmChain> local;
  if (chain == nullptr) chain = &local.emplace(p);
  if (chain->count_roots(Ray{Rational(x0)}) != 0) return std::nullopt;
  return make_certificate(SignCertificate::Method::sturm_count, x0, want, p, poly_shift(p, x0));
}

SignOutcome certify_sign_on_ray(const IntPolynomial& p, const Integer& x0, Sign want, const SturmChain* chain) {
  if (p.is_zero()) throw InvalidArgument("sign certification of the zero polynomial");
  const int at_start = sign_at(p, Rational(x0));
  if (at_start == 0) throw BoundaryRootError(x0);
  if (at_start != to_int(want)) {
    return SignFailure{Rational(x0), "wrong sign at the ray start"};
  }
  if (auto cert = try_shifted_coefficients(p, x0, want)) return *cert;

  std::optional<SturmChain> local;
  if (chain == nullptr) chain = &local.emplace(p);
  if (auto cert = try_sturm_count(p, x0, want, chain)) return *cert;

  if (sgn(p.leading()) != to_int(want)) {
    Integer beyond = cauchy_root_bound(p);
    if (beyond < x0) beyond = x0;
    return SignFailure{Rational(beyond + 1), "leading coefficient has the wrong sign"};
  }
  if (auto w = search_interior_witness(p, *chain, x0, want)) {
    return SignFailure{*w, "sign change on the ray"};
  }
  return SignFailure{std::nullopt, "root on the ray without a located sign change"};
}

}  // namespace zetatail
