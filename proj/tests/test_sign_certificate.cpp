#include "doctest.h"
#include "test_support.hpp"
#include "zetatail/sign_certificate.hpp"

using namespace zetatail;
using zetatail::testing::poly;

TEST_CASE("certify_sign_on_ray examples") {
  SUBCASE("the s = 5 quartic is positive from 2 on") {
    auto outcome = certify_sign_on_ray(testing::s5_p(), Integer(2), Sign::positive);
    REQUIRE(std::holds_alternative<SignCertificate>(outcome));
    const auto& cert = std::get<SignCertificate>(outcome);
    CHECK(cert.x0 == 2);
    CHECK(cert.want == Sign::positive);
    CHECK(cert.degree == 4);
    // Oracle: p(2) = 3759 > 0 and no roots >= 2 by Sturm plus sampling.
    CHECK(eval_rational(testing::s5_p(), Rational(2)) == 3759);
    CHECK(count_roots(testing::s5_p(), Ray{Rational(2)}) == 0);
    for (long k = 2; k < 200; ++k) CHECK(testing::s5_p()(Integer(k)) > 0);
  }
  SUBCASE("negative definite") {
    auto outcome = certify_sign_on_ray(poly({-1, 0, -1}), Integer(0), Sign::negative);
    CHECK(std::holds_alternative<SignCertificate>(outcome));
  }
  SUBCASE("sign change at 10") {
    auto outcome = certify_sign_on_ray(poly({1, -10}), Integer(0), Sign::positive);
    REQUIRE(std::holds_alternative<SignFailure>(outcome));
    const auto& failure = std::get<SignFailure>(outcome);
    REQUIRE(failure.witness.has_value());
    CHECK(*failure.witness >= 0);
    CHECK(*failure.witness < 10);
  }
  SUBCASE("boundary root") {
    CHECK_THROWS_AS(certify_sign_on_ray(poly({1, -10}), Integer(10), Sign::positive), BoundaryRootError);
    try {
      certify_sign_on_ray(poly({1, -10}), Integer(10), Sign::positive);
    } catch (const BoundaryRootError& e) {
      CHECK(e.x0() == 10);
    }
  }
  SUBCASE("zero polynomial") {
    CHECK_THROWS_AS(certify_sign_on_ray(IntPolynomial(), Integer(0), Sign::positive), InvalidArgument);
  }
}

TEST_CASE("Sturm fallback certifies what the fast path cannot") {
  // (x - 1)^2 + 1 = x^2 - 2x + 2: positive everywhere, but shifted by 0 the
  // coefficients are mixed.
  const IntPolynomial p = poly({1, -2, 2});
  CHECK_FALSE(try_shifted_coefficients(p, Integer(0), Sign::positive).has_value());
  auto outcome = certify_sign_on_ray(p, Integer(0), Sign::positive);
  REQUIRE(std::holds_alternative<SignCertificate>(outcome));
  CHECK(std::get<SignCertificate>(outcome).method == SignCertificate::Method::sturm_count);
  CHECK(std::get<SignCertificate>(outcome).wrong_sign_coefficients == 1);
}

TEST_CASE("interior sign change is witnessed") {
  // Positive at 0 and at infinity, negative on (3, 5).
  const IntPolynomial p = poly({1, -8, 15});
  auto outcome = certify_sign_on_ray(p, Integer(0), Sign::positive);
  REQUIRE(std::holds_alternative<SignFailure>(outcome));
  const auto& failure = std::get<SignFailure>(outcome);
  REQUIRE(failure.witness.has_value());
  CHECK(sign_at(p, *failure.witness) <= 0);
  CHECK(*failure.witness >= 0);
}

TEST_CASE("certified polynomials keep their sign on sampled points") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<long> start(-30, 30);
  std::uniform_int_distribution<long> numer(0, 1000000);
  std::uniform_int_distribution<long> denom(1, 1000);
  int certified = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto pp = testing::planted_polynomial(rng);
    Integer x0(start(rng));
    const Sign want = sgn(pp.polynomial.leading()) > 0 ? Sign::positive : Sign::negative;
    if (sign_at(pp.polynomial, Rational(x0)) == 0) continue;
    auto outcome = certify_sign_on_ray(pp.polynomial, x0, want);
    bool violation = false;
    for (const auto& r : pp.roots) violation |= r >= Rational(x0);
    if (auto* cert = std::get_if<SignCertificate>(&outcome)) {
      ++certified;
      CHECK_FALSE(violation);
      for (int i = 0; i < 1000; ++i) {
        Rational x = Rational(x0) + Rational(numer(rng), denom(rng));
        CHECK(sign_at(pp.polynomial, x) == to_int(want));
      }
      (void)cert;
    } else {
      CHECK(violation);
    }
  }
  CHECK(certified > 20);
}

TEST_CASE("fast path and Sturm fallback agree") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<long> start(-20, 20);
  for (int trial = 0; trial < 300; ++trial) {
    auto pp = testing::planted_polynomial(rng);
    Integer x0(start(rng));
    if (sign_at(pp.polynomial, Rational(x0)) == 0) continue;
    for (Sign want : {Sign::positive, Sign::negative}) {
      auto fast = try_shifted_coefficients(pp.polynomial, x0, want);
      auto sturm = try_sturm_count(pp.polynomial, x0, want);
      // A fast-path success is a sufficient condition, so Sturm must agree.
      if (fast) CHECK(sturm.has_value());
      if (fast && sturm) CHECK(fast->shifted_digest == sturm->shifted_digest);
    }
  }
}
