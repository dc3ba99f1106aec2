#include <random>

#include "doctest.h"

#include "bnint/schubert.hpp"

using namespace bnint;

namespace {

std::int64_t catalan(int m) {
  std::int64_t c = 1;
  for (int i = 0; i < m; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

SchubertCycle random_cycle(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> coef(-3, 3);
  SchubertCycle c(n);
  for (int a = 0; a <= n - 1; ++a)
    for (int b = 0; b <= a; ++b)
      if (rng() % 3 == 0) c.add_term({a, b}, coef(rng));
  return c;
}

}  // namespace

TEST_SUITE("schubert") {
  TEST_CASE("degree of the Grassmannian is a Catalan number") {
    for (int n = 2; n <= 8; ++n) {
      const auto top = power(SchubertCycle::sigma(n, 1), 2 * (n - 1));
      CHECK(top_degree(top) == catalan(n - 1));
    }
    CHECK(top_degree(power(SchubertCycle::sigma(3, 1), 4)) == 2);
    CHECK(top_degree(power(SchubertCycle::sigma(4, 1), 6)) == 5);
    CHECK(top_degree(power(SchubertCycle::sigma(5, 1), 8)) == 14);
  }

  TEST_CASE("Pieri examples") {
    const auto s1 = SchubertCycle::sigma(4, 1);
    const auto s2 = SchubertCycle::sigma(4, 2);
    CHECK(to_string(multiply(s1, s1)) == "s[2,0] + s[1,1]");
    CHECK(to_string(multiply(s2, s1)) == "s[3,0] + s[2,1]");
    CHECK(to_string(multiply(s2, s2)) == "s[3,1] + s[2,2]");
    CHECK(to_string(power(s2, 3)) == "s[3,3]");
    CHECK(top_degree(power(s2, 3)) == 1);
    CHECK(to_string(pieri(3, 2, SchubertCycle::sigma(3, 2))) == "s[2,2]");
    CHECK(pieri(3, 2, SchubertCycle::sigma(3, 2, 1)).is_zero());
    CHECK_THROWS_AS(pieri(4, 0, s1), SchubertError);
    CHECK_THROWS_AS(pieri(4, 4, s1), SchubertError);
  }

  TEST_CASE("ring axioms on random classes") {
    std::mt19937 rng(99);
    for (int n = 2; n <= 6; ++n) {
      for (int i = 0; i < 20; ++i) {
        const auto a = random_cycle(rng, n);
        const auto b = random_cycle(rng, n);
        const auto c = random_cycle(rng, n);
        REQUIRE(multiply(a, b) == multiply(b, a));
        REQUIRE(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
        auto bc = b;
        bc += c;
        auto ab_ac = multiply(a, b);
        ab_ac += multiply(a, c);
        REQUIRE(multiply(a, bc) == ab_ac);
        REQUIRE(multiply(a, SchubertCycle::identity(n)) == a);
      }
    }
  }

  TEST_CASE("products are homogeneous") {
    for (int n = 2; n <= 6; ++n)
      for (int a1 = 0; a1 <= n - 1; ++a1)
        for (int b1 = 0; b1 <= a1; ++b1)
          for (int a2 = 0; a2 <= n - 1; ++a2)
            for (int b2 = 0; b2 <= a2; ++b2) {
              const auto p = multiply(SchubertCycle::sigma(n, a1, b1), SchubertCycle::sigma(n, a2, b2));
              for (const auto& [part, coef] : p.terms()) {
                REQUIRE(part.size() == a1 + b1 + a2 + b2);
                REQUIRE(coef > 0);
              }
            }
  }

  TEST_CASE("Poincare duality") {
    for (int n = 2; n <= 6; ++n)
      for (int a = 0; a <= n - 1; ++a)
        for (int b = 0; b <= a; ++b)
          for (int c = 0; c <= n - 1; ++c)
            for (int e = 0; e <= c; ++e) {
              if (a + b + c + e != 2 * (n - 1)) continue;
              const auto p = multiply(SchubertCycle::sigma(n, a, b), SchubertCycle::sigma(n, c, e));
              const bool dual = (c == n - 1 - b) && (e == n - 1 - a);
              REQUIRE(top_degree(p) == (dual ? 1 : 0));
            }
  }

  TEST_CASE("parsing") {
    CHECK(parse_schubert(4, "s2^3") == power(SchubertCycle::sigma(4, 2), 3));
    CHECK(parse_schubert(4, "s[3,1]*s1") == multiply(SchubertCycle::sigma(4, 3, 1), SchubertCycle::sigma(4, 1)));
    CHECK(parse_schubert(4, " s1 * s1 ") == multiply(SchubertCycle::sigma(4, 1), SchubertCycle::sigma(4, 1)));
    CHECK(to_string(SchubertCycle(4)) == "0");
    CHECK_THROWS_AS(parse_schubert(4, "s5"), SchubertError);
    CHECK_THROWS_AS(parse_schubert(4, "t2"), SchubertError);
    CHECK_THROWS_AS(parse_schubert(4, "s[1,2]"), SchubertError);
    CHECK_THROWS_AS(parse_schubert(4, "s2^"), SchubertError);
    CHECK_THROWS_AS(parse_schubert(4, ""), SchubertError);
    CHECK_THROWS_AS(SchubertCycle::sigma(0, 0), SchubertError);
  }
}
