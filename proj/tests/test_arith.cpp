#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "minram/arith.hpp"
#include "minram/errors.hpp"

using namespace minram;

namespace {

std::vector<bool> sieve(std::size_t n) {
  std::vector<bool> p(n + 1, true);
  p[0] = p[1] = false;
  for (std::size_t i = 2; i * i <= n; ++i)
    if (p[i])
      for (std::size_t j = i * i; j <= n; j += i) p[j] = false;
  return p;
}

}  // namespace

TEST_CASE("is_prime agrees with a sieve below 200000") {
  auto p = sieve(200000);
  for (std::uint64_t n = 0; n <= 200000; ++n) REQUIRE(is_prime(n) == p[n]);
  CHECK(is_prime(Int(7)));
  CHECK_FALSE(is_prime(Int(1)));
  CHECK_FALSE(is_prime(Int(1023)));
}

TEST_CASE("is_prime on large inputs") {
  CHECK(is_prime(std::uint64_t{18446744073709551557ULL}));  // largest prime below 2^64
  CHECK_FALSE(is_prime(std::uint64_t{3215031751ULL}));      // strong pseudoprime to bases 2, 3, 5, 7
  CHECK_FALSE(is_prime(std::uint64_t{3825123056546413051ULL}));
  Int m127 = (Int(1) << 127) - 1;
  CHECK(is_prime(m127));
  CHECK_FALSE(is_prime(Int(m127 * 3)));
}

TEST_CASE("factorize") {
  CHECK(factorize(Int(49)) == std::vector<Int>{7, 7});
  CHECK(factorize(Int(360)) == std::vector<Int>{2, 2, 2, 3, 3, 5});
  CHECK(factorize(Int(1)).empty());
  Int big = Int(1000003) * Int(1000033) * Int(998244353);
  CHECK(factorize(big) == std::vector<Int>{1000003, 1000033, 998244353});
  CHECK(prime_divisors(Int(-20)) == std::vector<Int>{2, 5});
}

TEST_CASE("factorize is inverse to multiplication up to 10^5") {
  auto p = sieve(100000);
  for (long n = 1; n <= 100000; ++n) {
    auto f = factorize(Int(n));
    Int prod = 1;
    for (const auto& x : f) {
      REQUIRE(p[x.get_ui()]);
      prod *= x;
    }
    REQUIRE(prod == n);
    REQUIRE(std::is_sorted(f.begin(), f.end()));
  }
}

TEST_CASE("valuation and squarefree") {
  CHECK(valuation(Int(20), Int(2)) == 2);
  CHECK(valuation(Int(49), Int(7)) == 2);
  CHECK(valuation(Int(5), Int(3)) == 0);
  CHECK(is_squarefree(Int(30)));
  CHECK_FALSE(is_squarefree(Int(12)));
}

TEST_CASE("power_residue examples") {
  CHECK(power_residue(Int(2), Int(3), Int(31)));
  CHECK_FALSE(power_residue(Int(2), Int(5), Int(31)));
  CHECK(power_residue(Int(1), Int(6), Int(31)));
  CHECK(power_residue(Int(-1), Int(3), Int(31)));
  CHECK_THROWS_AS(power_residue(Int(2), Int(4), Int(31)), DomainError);
  CHECK_THROWS_AS(power_residue(Int(31), Int(3), Int(31)), DomainError);
  CHECK_THROWS_AS(power_residue(Int(2), Int(3), Int(33)), DomainError);
}

TEST_CASE("power_residue matches exhaustive m-th powers for q < 200") {
  for (long q = 3; q < 200; ++q) {
    if (!is_prime(Int(q))) continue;
    for (long m = 1; m < q; ++m) {
      if ((q - 1) % m) continue;
      std::set<long> powers;
      for (long x = 1; x < q; ++x) {
        long y = 1;
        for (long k = 0; k < m; ++k) y = y * x % q;
        powers.insert(y);
      }
      for (long a = 1; a < q; ++a) {
        REQUIRE(power_residue(Int(a), Int(m), Int(q)) == (powers.count(a) == 1));
        REQUIRE(power_residue_u64(a, m, q) == (powers.count(a) == 1));
      }
    }
  }
}

TEST_CASE("m-th powers nest") {
  for (long q : {31, 61, 73, 181}) {
    for (long m1 = 1; m1 < q; ++m1)
      for (long m2 = 1; m1 * m2 < q; ++m2) {
        if ((q - 1) % (m1 * m2)) continue;
        for (long a = 1; a < q; ++a)
          if (power_residue(Int(a), Int(m1 * m2), Int(q))) REQUIRE(power_residue(Int(a), Int(m1), Int(q)));
      }
  }
}

TEST_CASE("primitive_root is the least generator") {
  CHECK(primitive_root(Int(7)) == 3);
  CHECK(primitive_root(Int(3)) == 2);
  CHECK(primitive_root(Int(31)) == 3);
  for (long q = 3; q < 400; ++q) {
    if (!is_prime(Int(q))) continue;
    long g = 0;
    for (long c = 2; c < q && !g; ++c) {
      long y = 1, ord = 0;
      do {
        y = y * c % q;
        ++ord;
      } while (y != 1);
      if (ord == q - 1) g = c;
    }
    REQUIRE(primitive_root(Int(q)) == g);
  }
}

TEST_CASE("multiplicative_order") {
  CHECK(multiplicative_order(Int(2), Int(7)) == 3);
  CHECK(multiplicative_order(Int(3), Int(7)) == 6);
  CHECK(multiplicative_order(Int(10), Int(9)) == 1);
  CHECK_THROWS_AS(multiplicative_order(Int(3), Int(9)), DomainError);
}

TEST_CASE("crt") {
  std::vector<Congruence> a{{1, 9}, {1, 5}};
  CHECK(crt(a) == Congruence{1, 45});
  std::vector<Congruence> b{{2, 3}, {3, 5}};
  Congruence r = crt(b);
  CHECK(r == Congruence{8, 15});
  for (long x = 0; x < 15; ++x)
    if (x % 3 == 2 && x % 5 == 3) CHECK(r.residue == x);
  std::vector<Congruence> bad{{0, 2}, {1, 2}};
  CHECK_THROWS_AS(crt(bad), DomainError);
  std::vector<Congruence> overlap{{1, 6}, {3, 4}};
  CHECK(crt(overlap) == Congruence{7, 12});
}

TEST_CASE("PrimePower") {
  PrimePower p(Int(3), 4);
  CHECK(p.value() == 81);
  CHECK_THROWS_AS(PrimePower(Int(9), 2), DomainError);
}

TEST_CASE("sqrt_mod and legendre") {
  for (std::uint64_t p : {3ULL, 5ULL, 13ULL, 17ULL, 41ULL, 10007ULL})
    for (std::uint64_t a = 1; a < std::min<std::uint64_t>(p, 300); ++a) {
      bool qr = false;
      for (std::uint64_t x = 1; x < p && !qr; ++x) qr = x * x % p == a;
      REQUIRE((legendre(Int(static_cast<unsigned long>(a)), Int(static_cast<unsigned long>(p))) == 1) == qr);
      if (qr) {
        std::uint64_t s = sqrt_mod(a, p);
        REQUIRE(s * s % p == a);
      }
    }
  CHECK(legendre(Int(-23), Int(59)) == 1);
  CHECK(legendre(Int(0), Int(7)) == 0);
}

TEST_CASE("parse_int and mod") {
  CHECK(parse_int("-123") == -123);
  CHECK_THROWS_AS(parse_int("12a"), ParseError);
  CHECK(mod(Int(-7), Int(3)) == 2);
  CHECK(mod_u64(Int(-1), 31) == 30);
}
