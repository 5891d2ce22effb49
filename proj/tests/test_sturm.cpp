#include "doctest.h"
#include "test_support.hpp"
#include "zetatail/sign_certificate.hpp"
#include "zetatail/sturm.hpp"

using namespace zetatail;
using zetatail::testing::poly;

namespace {

long planted_in(const testing::PlantedPolynomial& pp, const RootRegion& region) {
  long count = 0;
  for (const auto& r : pp.roots) {
    if (const auto* iv = std::get_if<HalfOpenInterval>(&region)) {
      if (iv->lo < r && r <= iv->hi) ++count;
    } else if (std::get<Ray>(region).lo <= r) {
      ++count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("Sturm chain shape") {
  SturmChain chain(testing::s5_p());
  REQUIRE(chain.chain().size() >= 2);
  CHECK(chain.chain()[0] == testing::s5_p());
  CHECK(chain.chain()[1] == primitive_part(testing::s5_p().derivative()));
  for (std::size_t i = 1; i < chain.chain().size(); ++i) {
    CHECK(chain.chain()[i].degree() < chain.chain()[i - 1].degree());
  }
}

TEST_CASE("count_roots examples") {
  CHECK(count_roots(poly({1, 0, -2}), HalfOpenInterval{Rational(1), Rational(2)}) == 1);
  CHECK(count_roots(poly({1, 0, -2}), Ray{Rational(2)}) == 0);
  CHECK(count_roots(poly({1, -8, 15}), Ray{Rational(0)}) == 2);
  CHECK_THROWS_AS(count_roots(IntPolynomial(), Ray{Rational(0)}), InvalidArgument);
}

TEST_CASE("count_roots endpoint convention") {
  const IntPolynomial p = poly({1, -8, 15});  // roots 3 and 5
  // (lo, hi]: root at lo excluded, root at hi included.
  CHECK(count_roots(p, HalfOpenInterval{Rational(3), Rational(4)}) == 0);
  CHECK(count_roots(p, HalfOpenInterval{Rational(4), Rational(5)}) == 1);
  CHECK(count_roots(p, HalfOpenInterval{Rational(3), Rational(5)}) == 1);
  CHECK(count_roots(p, HalfOpenInterval{Rational(2), Rational(3)}) == 1);
  // [lo, +inf): root at lo included.
  CHECK(count_roots(p, Ray{Rational(5)}) == 1);
  CHECK(count_roots(p, Ray{Rational(3)}) == 2);
  CHECK(count_roots(p, Ray{Rational(11, 2)}) == 0);
  // Multiple roots are counted once.
  const IntPolynomial double_root = poly({1, -3}) * poly({1, -3}) * poly({1, 1});
  CHECK(count_roots(double_root, Ray{Rational(0)}) == 1);
  CHECK(count_roots(double_root, Ray{Rational(3)}) == 1);
  CHECK(count_roots(double_root, HalfOpenInterval{Rational(-2), Rational(3)}) == 2);
  // Constants have no roots.
  CHECK(count_roots(poly({7}), Ray{Rational(-100)}) == 0);
}

TEST_CASE("count_roots is exact on planted roots") {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> endpoint(-45, 45);
  std::uniform_int_distribution<long> den(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    auto pp = testing::planted_polynomial(rng);
    Rational a(endpoint(rng), den(rng));
    Rational b(endpoint(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    if (b < a) std::swap(a, b);
    SturmChain chain(pp.polynomial);
    HalfOpenInterval iv{a, b};
    CHECK(chain.count_roots(iv) == planted_in(pp, iv));
    CHECK(chain.count_roots(Ray{a}) == planted_in(pp, Ray{a}));
    // Endpoints landing exactly on roots.
    if (!pp.roots.empty()) {
      Ray at_root{pp.roots.front()};
      CHECK(chain.count_roots(at_root) == planted_in(pp, at_root));
      HalfOpenInterval from_root{pp.roots.front(), pp.roots.front() + 50};
      CHECK(chain.count_roots(from_root) == planted_in(pp, from_root));
    }
  }
}

TEST_CASE("one-sided signs at a root") {
  const IntPolynomial p = poly({1, -3}) * poly({1, -3});  // (x-3)^2
  CHECK(one_sided_sign(p, Rational(3), true) == 1);
  CHECK(one_sided_sign(p, Rational(3), false) == 1);
  const IntPolynomial q = poly({2, -1});  // 2x - 1
  CHECK(one_sided_sign(q, Rational(1, 2), true) == 1);
  CHECK(one_sided_sign(q, Rational(1, 2), false) == -1);
}

TEST_CASE("cauchy bound exceeds every root") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    auto pp = testing::planted_polynomial(rng);
    Integer bound = cauchy_root_bound(pp.polynomial);
    for (const auto& r : pp.roots) CHECK(abs(r) < Rational(bound));
  }
}
