#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "zetatail/telescope.hpp"

using namespace zetatail;
using zetatail::testing::poly;

namespace {

TelescopeCandidate s5_candidate(long b, IntPolynomial p, Rational c, long k0) { return {5, 3, b, std::move(p), c, k0}; }

TelescopeCandidate s5_class1() { return s5_candidate(0, testing::s5_p(), Rational(9, 10), 2); }
TelescopeCandidate s5_class2() { return s5_candidate(1, testing::s5_q(), Rational(99, 100), 1); }
TelescopeCandidate s5_class3() { return s5_candidate(2, testing::s5_r(), Rational(9, 10), 1); }

Certificate require_certificate(const CertificationOutcome& o) {
  if (auto* f = std::get_if<CertificationFailure>(&o)) {
    FAIL("certification failed at " << to_string(f->stage) << ": " << f->detail);
  }
  return std::get<Certificate>(o);
}

Rational c18() { return Rational(1) - pow10(-18); }

}  // namespace

TEST_CASE("s = 5 endpoint values appear in the comparison functions") {
  struct Row {
    TelescopeCandidate cand;
    long at;
    long now;
    long next;
  };
  for (const Row& row : {Row{s5_class1(), 2, 3759, 21119}, Row{s5_class2(), 1, 639, 7279}, Row{s5_class3(), 1, 1706, 12842}}) {
    ComparisonFunction g = build_g_numerator(row.cand);
    CHECK(g.current(Integer(row.at)) == row.now);
    CHECK(g.next(Integer(row.at)) == row.next);
    CHECK(g.scale == 1);
    CHECK(g.value.denominator(Integer(row.at)) % (Integer(row.now) * row.next) == 0);
    ComparisonFunction h = build_h_numerator(row.cand);
    const Rational c = row.cand.c;
    CHECK(Rational(h.current(Integer(row.at)), h.scale) == row.now + c);
    CHECK(Rational(h.next(Integer(row.at)), h.scale) == row.next + c);
  }
}

TEST_CASE("s = 5 g and h values at the first k") {
  const Rational x2(2), x1(1);
  Rational g1 = build_g_numerator(s5_class1()).value(x2);
  Rational expected = Rational(1, 7776) + Rational(1, 16807) + Rational(1, 32768) - Rational(1, 3759) +
                      Rational(1, 21119);
  CHECK(g1 == expected);
  CHECK(g1 < Rational(-5, 100000000));
  CHECK(g1 > Rational(-7, 100000000));
  Rational h1 = build_h_numerator(s5_class1()).value(x2);
  CHECK(h1 > 0);
  CHECK(h1 < Rational(1, 100000000));

  Rational g2 = build_g_numerator(s5_class2()).value(x1);
  CHECK(g2 < Rational(-2, 1000000));
  CHECK(g2 > Rational(-3, 1000000));
  CHECK(build_h_numerator(s5_class2()).value(x1) > 0);

  Rational g3 = build_g_numerator(s5_class3()).value(x1);
  CHECK(g3 < 0);
  CHECK(g3 > Rational(-1, 1000000));
  Rational h3 = build_h_numerator(s5_class3()).value(x1);
  CHECK(h3 > 0);
  CHECK(h3 < Rational(1, 1000000));
}

TEST_CASE("rational function equals the defining expression") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(1, 400), den(1, 17);
  auto six = expand_to_residue_classes(6, 48)[5];
  six.k0 = 18;
  for (const TelescopeCandidate& cand : {s5_class1(), s5_class2(), s5_class3(), make_candidate(six)}) {
    ComparisonFunction g = build_g_numerator(cand);
    ComparisonFunction h = build_h_numerator(cand);
    CHECK(g.value.numerator.degree() < g.value.denominator.degree());
    CHECK(h.value.numerator.degree() < h.value.denominator.degree());
    for (int i = 0; i < 10; ++i) {
      Rational x(num(rng), den(rng));
      x.canonicalize();
      CHECK(g.value(x) == g.defining_expression(x));
      CHECK(h.value(x) == h.defining_expression(x));
      // Independent of the stored factors: block from scratch, p and c directly.
      Rational block(0);
      for (long j = 0; j < cand.modulus; ++j) {
        block += 1 / ipow(Rational(cand.modulus) * x + cand.residue + j, cand.s);
      }
      const Rational p0 = eval_rational(cand.p, x), p1 = eval_rational(cand.p, x + 1);
      CHECK(g.value(x) == block - 1 / p0 + 1 / p1);
      CHECK(h.value(x) == block - 1 / (p0 + cand.c) + 1 / (p1 + cand.c));
    }
  }
}

TEST_CASE("s = 5 classes certify with their constants") {
  for (const TelescopeCandidate& cand : {s5_class1(), s5_class2(), s5_class3()}) {
    Certificate cert = require_certificate(certify(cand));
    CHECK(cert.candidate.k0 == cand.k0);
    CHECK(cert.g_sign.want == Sign::negative);
    CHECK(cert.h_sign.want == Sign::positive);
    CHECK(cert.p_positivity.want == Sign::positive);
    CHECK(cert.g_sign.x0 == cand.k0);
    CHECK(!cert.g_sign.shifted_digest.empty());
  }
}

TEST_CASE("tampered leading coefficient is rejected") {
  TelescopeCandidate bad = s5_class1();
  bad.p = poly({325, -216, 84, -16, -1});
  auto outcome = certify(bad);
  REQUIRE(std::holds_alternative<CertificationFailure>(outcome));
  const auto& failure = std::get<CertificationFailure>(outcome);
  CHECK(failure.stage == CertificationFailure::Stage::g_numerator);
  REQUIRE(failure.witness);
  CHECK(*failure.witness >= 2);
  // The oracle disagrees too, and the gap grows with m.
  for (long m : {10L, 50L}) CHECK(reciprocal_floor({5, 3 * m}) != bad.p(Integer(m)));
  CHECK(std::holds_alternative<CertificationFailure>(search_certificate(5, 3, 0, bad.p, 1)));
}

TEST_CASE("candidate validation and degenerate inputs") {
  TelescopeCandidate c = s5_class1();
  c.c = Rational(1);
  CHECK(std::get<CertificationFailure>(certify(c)).stage == CertificationFailure::Stage::candidate);
  c = s5_class1();
  c.p = poly({1, 2, 3});
  CHECK_THROWS_AS(build_g_numerator(c), InvalidArgument);
  c = s5_class1();
  c.residue = 3;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("identically zero numerator counts as failure") {
  // An exact telescope: numerator of 1/x - 1/x + 1/(x+1) - 1/(x+1).
  IntPolynomial x = IntPolynomial::x();
  IntPolynomial x1 = poly_shift(x, Integer(1));
  IntPolynomial exact = x1 * x - x * x1;
  REQUIRE(exact.is_zero());
  auto outcome = certify_stage(CertificationFailure::Stage::g_numerator, exact, 1, Sign::negative);
  REQUIRE(std::holds_alternative<CertificationFailure>(outcome));
  CHECK(std::get<CertificationFailure>(outcome).detail.find("zero") != std::string::npos);
}

TEST_CASE("boundary root advises the next k0") {
  TelescopeCandidate cand{2, 1, 0, poly({1, -1}), Rational(9, 10), 1};
  auto outcome = certify(cand);
  REQUIRE(std::holds_alternative<CertificationFailure>(outcome));
  const auto& f = std::get<CertificationFailure>(outcome);
  CHECK(f.stage == CertificationFailure::Stage::p_positivity);
  REQUIRE(f.advised_k0);
  CHECK(*f.advised_k0 == 2);
  cand.k0 = 2;
  require_certificate(certify(cand));

  auto searched = search_certificate(2, 1, 0, poly({1, -1}), 1);
  CHECK(require_certificate(searched).candidate.k0 == 2);
}

TEST_CASE("c ladder reproduces the s = 5 constants") {
  Certificate q = require_certificate(search_certificate(5, 3, 1, testing::s5_q(), 1));
  CHECK(q.candidate.c == Rational(99, 100));
  CHECK(q.candidate.k0 == 1);
  Certificate r = require_certificate(search_certificate(5, 3, 2, testing::s5_r(), 1));
  CHECK(r.candidate.c == Rational(9, 10));
  CHECK(r.candidate.k0 == 1);
  Certificate p = require_certificate(search_certificate(5, 3, 0, testing::s5_p(), 1));
  CHECK(p.candidate.k0 == 2);
  SearchOptions none;
  none.c_ladder.clear();
  CHECK_THROWS_AS(search_certificate(5, 3, 0, testing::s5_p(), 1, none), InvalidArgument);
}

TEST_CASE("s = 3 is not certifiable with any c below 1") {
  auto outcome = search_certificate(3, 1, 0, poly({2, -2, 0}), 1);
  REQUIRE(std::holds_alternative<CertificationFailure>(outcome));
  CHECK(std::get<CertificationFailure>(outcome).stage == CertificationFailure::Stage::h_numerator);
}

TEST_CASE("certify_all_classes for s = 5") {
  auto classes = expand_to_residue_classes(5, 3);
  classes[0].k0 = 2;
  classes[1].k0 = 1;
  classes[2].k0 = 1;
  std::vector<ResidueClassFormula> shuffled{classes[2], classes[0], classes[1]};
  auto results = certify_all_classes(5, 3, shuffled, 2);
  REQUIRE(results.size() == 3);
  for (long b = 0; b < 3; ++b) {
    CHECK(results[static_cast<std::size_t>(b)].residue == b);
    Certificate cert = require_certificate(results[static_cast<std::size_t>(b)].outcome);
    for (long m = cert.candidate.k0; m < cert.candidate.k0 + 20; ++m) {
      CHECK(reciprocal_floor({5, 3 * m + b}) == cert.candidate.p(Integer(m)));
    }
    for (long m : {cert.candidate.k0, 7L, 40L, 200L, 1000L}) CHECK(sandwich_holds(cert.candidate, m));
  }
  CHECK_THROWS_AS(certify_all_classes(5, 3, {}), InvalidArgument);
  CHECK_THROWS_AS(certify_all_classes(5, 3, {classes[0], classes[0], classes[1]}), InvalidArgument);
  CHECK_THROWS_AS(certify_all_classes(5, 4, classes), InvalidArgument);
}

TEST_CASE("s = 6 proof cases certify at k0 = 18") {
  auto classes = expand_to_residue_classes(6, 48);
  for (long b : {1L, 2L, 13L, 47L}) {
    TelescopeCandidate cand = make_candidate(classes[static_cast<std::size_t>(b)]);
    cand.k0 = 18;
    CHECK(cand.c == c18());
    Certificate cert = require_certificate(certify(cand));
    CHECK(cert.g_sign.degree < 298);
    for (long m : {18L, 19L, 25L, 60L, 300L}) CHECK(sandwich_holds(cand, m));
    for (long m = 18; m < 38; ++m) CHECK(reciprocal_floor({6, 48 * m + b}) == cand.p(Integer(m)));
  }
}

TEST_CASE("s = 4 printed class n = 4m + 1 is refuted, its successor certified") {
  auto classes = expand_to_residue_classes(4, 4);
  auto printed = search_certificate(4, 4, 1, classes[1].polynomial, 1);
  REQUIRE(std::holds_alternative<CertificationFailure>(printed));
  IntPolynomial corrected = classes[1].polynomial + IntPolynomial::constant(Integer(1));
  CHECK(require_certificate(search_certificate(4, 4, 1, corrected, 1)).candidate.k0 == 1);
  for (long b : {0L, 2L, 3L}) {
    CHECK(std::holds_alternative<Certificate>(search_certificate(4, 4, b, classes[static_cast<std::size_t>(b)].polynomial, 1)));
  }
}
