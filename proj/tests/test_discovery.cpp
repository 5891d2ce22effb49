#include <atomic>
#include <map>
#include <mutex>

#include "doctest.h"
#include "test_support.hpp"
#include "zetatail/discovery.hpp"

using namespace zetatail;
using zetatail::testing::poly;

namespace {

std::vector<FloorSample> samples_of(const IntPolynomial& p, long from, long to) {
  std::vector<FloorSample> out;
  for (long m = from; m <= to; ++m) out.emplace_back(m, p(Integer(m)));
  return out;
}

DiscoveryConfig config(long s, long l_max) {
  DiscoveryConfig cfg;
  cfg.s = s;
  cfg.l_max = l_max;
  return cfg;
}

}  // namespace

TEST_CASE("sample_floors") {
  auto s5 = sample_floors(5, 3, 0, 2, 4);
  REQUIRE(s5.size() == 3);
  CHECK(s5[0] == FloorSample{2, Integer(3759)});
  CHECK(s5[1] == FloorSample{3, Integer(21119)});
  CHECK(s5[2] == FloorSample{4, Integer(324 * 256 - 216 * 64 + 84 * 16 - 16 * 4 - 1)});
  CHECK(s5[2].second == 70399);

  auto s2 = sample_floors(2, 1, 0, 5, 7);
  CHECK(s2 == std::vector<FloorSample>{{5, Integer(4)}, {6, Integer(5)}, {7, Integer(6)}});
  CHECK(sample_floors(5, 3, 0, 4, 3).empty());
  CHECK_THROWS_AS(sample_floors(5, 3, 3, 1, 2), InvalidArgument);
}

TEST_CASE("fit_polynomial") {
  CHECK(fit_polynomial(samples_of(testing::s5_q(), 1, 5)) == testing::s5_q());
  CHECK(fit_polynomial({{1, Integer(7)}, {2, Integer(7)}, {3, Integer(7)}}) == poly({7}));
  CHECK(fit_polynomial(samples_of(testing::s5_p(), 3, 12), 4) == testing::s5_p());

  auto parity = sample_floors(4, 2, 0, 1, 8);
  CHECK_THROWS_AS(fit_polynomial(parity), NotPolynomialOnClass);
  CHECK_THROWS_AS(fit_polynomial(parity, 3), NotPolynomialOnClass);

  CHECK_THROWS_AS(fit_polynomial(samples_of(poly({1, 0, 0, 0}), 1, 6), 2), NotPolynomialOnClass);
  CHECK_THROWS_AS(fit_polynomial({{1, Integer(1)}}), InvalidArgument);
  CHECK_THROWS_AS(fit_polynomial({{1, Integer(1)}, {1, Integer(2)}}), InvalidArgument);
}

TEST_CASE("discover s = 5 recovers the three quartics") {
  DiscoveryResult r = discover(config(5, 4));
  CHECK(r.modulus == 3);
  REQUIRE(r.complete());
  REQUIRE(r.classes.size() == 3);
  CHECK(r.classes[0].formula.polynomial == testing::s5_p());
  CHECK(r.classes[1].formula.polynomial == testing::s5_q());
  CHECK(r.classes[2].formula.polynomial == testing::s5_r());
  CHECK(r.classes[1].formula.c == Rational(99, 100));
  CHECK(r.verified_from_n == 4);
  CHECK(r.spot_checks_run == 100);
  CHECK(r.attempts.size() == 1);
}

TEST_CASE("discover s = 4 finds M = 4") {
  DiscoveryResult r = discover(config(4, 4));
  CHECK(r.modulus == 4);
  REQUIRE(r.complete());
  REQUIRE(r.attempts.size() == 2);
  CHECK(!r.attempts[0].fitted);
  CHECK(r.attempts[0].modulus == 2);
  auto printed = expand_to_residue_classes(4, 4);
  for (long b : {0L, 2L, 3L}) {
    CHECK(r.classes[static_cast<std::size_t>(b)].formula.polynomial == printed[static_cast<std::size_t>(b)].polynomial);
  }
  // The certified n = 4m + 1 class sits one above the printed parity formula.
  CHECK(r.classes[1].formula.polynomial == printed[1].polynomial + IntPolynomial::constant(Integer(1)));
  CHECK(r.classes[1].formula.polynomial == poly({192, 72, 15, 1}));
  for (long n = r.verified_from_n; n < 400; ++n) CHECK(r.evaluate(n) == reciprocal_floor({4, n}));
}

TEST_CASE("discover s = 2 is n - 1") {
  DiscoveryResult r = discover(config(2, 3));
  CHECK(r.modulus == 1);
  REQUIRE(r.complete());
  CHECK(r.classes[0].formula.polynomial == poly({1, -1}));
  CHECK(r.verified_from_n == 1);
}

TEST_CASE("discover s = 7 is deterministic and certified") {
  DiscoveryConfig cfg = config(7, 4);
  DiscoveryResult a = discover(cfg);
  cfg.threads = 3;
  DiscoveryResult b = discover(cfg);
  REQUIRE(a.complete());
  CHECK(a.modulus % 5 == 0);
  CHECK(a.modulus == b.modulus);
  CHECK(a.spot_checks_run == 100);
  CHECK(a.spot_check_failures.empty());
  CHECK(a.certified_from_n == b.certified_from_n);
  CHECK(a.verified_from_n == b.verified_from_n);
  REQUIRE(a.classes.size() == b.classes.size());
  for (std::size_t i = 0; i < a.classes.size(); ++i) {
    const auto& fa = a.classes[i].formula;
    CHECK(fa.polynomial == b.classes[i].formula.polynomial);
    CHECK(fa.k0 == b.classes[i].formula.k0);
    CHECK(fa.c == b.classes[i].formula.c);
    CHECK(a.classes[i].certificate.g_sign.shifted_digest == b.classes[i].certificate.g_sign.shifted_digest);
    CHECK(fa.polynomial.leading() == 6 * ipow(Integer(a.modulus), 6));
    for (long m : {fa.k0, fa.k0 + 7}) CHECK(sandwich_holds(a.classes[i].certificate.candidate, m));
  }
}

TEST_CASE("refinement of a discovered modulus fits and certifies") {
  DiscoveryResult r = discover(config(5, 1));
  std::vector<ResidueClassFormula> coarse;
  for (const auto& c : r.classes) coarse.push_back(c.formula);
  auto fine = refine_modulus(coarse, 2);
  REQUIRE(fine.size() == 6);
  for (const auto& f : fine) {
    auto samples = sample_floors(5, 6, f.residue, 20, 29);
    CHECK(fit_polynomial(samples, 4) == f.polynomial);
    CHECK(std::holds_alternative<Certificate>(search_certificate(5, 6, f.residue, f.polynomial, 1)));
  }
}

TEST_CASE("no modulus found is reported with diagnostics") {
  try {
    discover(config(6, 2));
    FAIL("expected NoModulusFound");
  } catch (const NoModulusFound& e) {
    REQUIRE(e.attempts().size() == 2);
    CHECK(e.attempts()[0].modulus == 4);
    CHECK(e.attempts()[1].modulus == 8);
    for (const auto& a : e.attempts()) {
      CHECK(!a.fitted);
      CHECK(a.residue);
      CHECK(!a.detail.empty());
    }
  }
}

TEST_CASE("fits that do not certify stay visible") {
  DiscoveryResult r = discover(config(3, 2));
  CHECK(!r.complete());
  CHECK(r.modulus == 2);
  CHECK(r.failures.size() == 2);
  REQUIRE(r.attempts.size() == 2);
  CHECK(r.attempts[0].fitted);
  CHECK(!r.attempts[0].certified);
  for (const auto& f : r.failures) CHECK(f.failure.stage == CertificationFailure::Stage::h_numerator);
}

TEST_CASE("injected oracle and config validation") {
  std::mutex lock;
  std::map<std::pair<long, long>, Integer> memo;
  std::atomic<long> misses{0};
  DiscoveryConfig cfg = config(5, 1);
  cfg.oracle = [&](long s, long n) {
    {
      std::lock_guard guard(lock);
      auto it = memo.find({s, n});
      if (it != memo.end()) return it->second;
    }
    ++misses;
    Integer v = reciprocal_floor({s, n});
    std::lock_guard guard(lock);
    memo[{s, n}] = v;
    return v;
  };
  DiscoveryResult first = discover(cfg);
  const long after_first = misses;
  DiscoveryResult second = discover(cfg);
  CHECK(misses == after_first);
  CHECK(first.classes[0].formula.polynomial == second.classes[0].formula.polynomial);

  DiscoveryConfig bad = config(5, 1);
  bad.m_samples = 6;
  CHECK_THROWS_AS(discover(bad), InvalidArgument);
  bad = config(1, 1);
  CHECK_THROWS_AS(discover(bad), InvalidArgument);
  DiscoveryConfig any = config(6, 1);
  any.any_modulus = true;
  CHECK(any.modulus_step() == 1);
}
