#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "minram/errors.hpp"
#include "minram/poly.hpp"

using namespace minram;

namespace {

// Discriminant of x^3 + a x^2 + b x + c.
Int cubic_disc(long a, long b, long c) {
  Int A = a, B = b, C = c;
  return A * A * B * B - 4 * B * B * B - 4 * A * A * A * C - 27 * C * C + 18 * A * B * C;
}

}  // namespace

TEST_CASE("discriminant matches the closed forms") {
  CHECK(poly_discriminant(ZPoly::from_ints({1, 0, 1})) == -4);
  CHECK(poly_discriminant(ZPoly::from_ints({-5, 0, 1})) == 20);
  CHECK(poly_discriminant(ZPoly::from_ints({1, 1, 1})) == -3);
  CHECK(poly_discriminant(ZPoly::from_ints({-1, -2, 1, 1})) == 49);
  for (long a = -4; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b)
      for (long c = -4; c <= 4; ++c) {
        Int d = cubic_disc(a, b, c);
        ZPoly f = ZPoly::from_ints({c, b, a, 1});
        if (d == 0)
          REQUIRE_THROWS_AS(poly_discriminant(f), DomainError);
        else
          REQUIRE(poly_discriminant(f) == d);
      }
}

TEST_CASE("resultant is multiplicative in the first argument") {
  ZPoly f = ZPoly::from_ints({1, 2, 0, 1});
  ZPoly g = ZPoly::from_ints({-3, 1});
  ZPoly h = ZPoly::from_ints({5, 0, 1});
  CHECK(resultant(f * g, h) == resultant(f, h) * resultant(g, h));
  // Res(f, x - 3) = (-1)^deg f * f(3) up to sign convention; compare absolute values.
  CHECK(abs(resultant(f, g)) == abs(f.eval(Int(3))));
}

TEST_CASE("ZPoly arithmetic") {
  ZPoly a = ZPoly::from_ints({1, 1});
  ZPoly b = ZPoly::from_ints({-1, 1});
  CHECK(a * b == ZPoly::from_ints({-1, 0, 1}));
  CHECK((a - a).is_zero());
  CHECK(ZPoly::from_ints({3, 2, 1}).derivative() == ZPoly::from_ints({2, 2}));
  CHECK(ZPoly::from_ints({6, 4, 2}).content() == 2);
}

TEST_CASE("factor_mod_p recovers the polynomial") {
  std::mt19937_64 rng(12345);
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 101ULL, 65537ULL}) {
    for (int trial = 0; trial < 40; ++trial) {
      int deg = 1 + static_cast<int>(rng() % 8);
      std::vector<std::uint64_t> c(deg + 1);
      for (auto& x : c) x = rng() % p;
      c.back() = 1;
      FpPoly f(p, c);
      auto fac = factor_mod_p(f);
      FpPoly prod = FpPoly::constant(p, 1);
      unsigned total = 0;
      for (const auto& [g, m] : fac) {
        REQUIRE(g.lead() == 1);
        for (unsigned k = 0; k < m; ++k) prod = prod * g;
        total += m * static_cast<unsigned>(g.degree());
        // An irreducible of degree n divides x^(p^n) - x and has no root when n > 1.
        if (g.degree() > 1)
          for (std::uint64_t r = 0; r < std::min<std::uint64_t>(p, 200); ++r) {
            std::uint64_t v = 0;
            for (auto it = g.c.rbegin(); it != g.c.rend(); ++it) v = (mulmod(v, r, p) + *it) % p;
            REQUIRE(v != 0);
          }
      }
      REQUIRE(prod == f);
      REQUIRE(total == static_cast<unsigned>(deg));
    }
  }
}

TEST_CASE("root counts agree with brute force") {
  for (std::uint64_t p : {7ULL, 13ULL, 31ULL}) {
    ZPoly f = ZPoly::from_ints({-1, -2, 1, 1});
    FpPoly fp = FpPoly::reduce(f, p);
    unsigned roots = 0;
    for (std::uint64_t r = 0; r < p; ++r) roots += f.eval(Int(static_cast<unsigned long>(r))) % Int(static_cast<unsigned long>(p)) == 0;
    unsigned linear = 0;
    for (const auto& [g, m] : factor_mod_p(fp))
      if (g.degree() == 1) linear += 1;
    CHECK(roots == linear);
  }
}

TEST_CASE("factor_degrees for the cubic of conductor 7") {
  ZPoly f = ZPoly::from_ints({-1, -2, 1, 1});
  CHECK(factor_degrees(FpPoly::reduce(f, 13)) == std::vector<unsigned>{1, 1, 1});
  CHECK(factor_degrees(FpPoly::reduce(f, 2)) == std::vector<unsigned>{3});
  CHECK(factor_degrees(FpPoly::reduce(f, 7)) == std::vector<unsigned>{1, 1, 1});
  auto at7 = factor_mod_p(FpPoly::reduce(f, 7));
  REQUIRE(at7.size() == 1);
  CHECK(at7[0].multiplicity == 3);
}

TEST_CASE("FpPoly gcd and divmod") {
  FpPoly a(7, {6, 0, 1});  // x^2 - 1
  FpPoly b(7, {1, 1});     // x + 1
  CHECK(gcd(a, b) == b);
  auto [q, r] = divmod(a, b);
  CHECK(r.is_zero());
  CHECK(q == FpPoly(7, {6, 1}));
  FpPoly x = FpPoly::x(7);
  // x^7 = x mod (x^2 - 1) gives x since 7 is odd.
  CHECK(powmod(x, Int(7), a) == x);
}
