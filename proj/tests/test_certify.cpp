#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minram/certify.hpp"
#include "minram/errors.hpp"

using namespace minram;

namespace {

std::vector<Int> I(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

bool is_square(const Int& n) {
  if (n < 0) return false;
  Int r = sqrt(n);
  return r * r == n;
}

}  // namespace

TEST_CASE("ramified primes of small fields") {
  CHECK(ramified_primes(ZPoly::from_ints({1, 0, 1})) == I({2}));
  CHECK(ramified_primes(ZPoly::from_ints({-5, 0, 1})) == I({5}));
  CHECK(ramified_primes(ZPoly::from_ints({1, 1, 1})) == I({3}));
  CHECK(ramified_primes(ZPoly::from_ints({-1, -2, 1, 1})) == I({7}));
  CHECK(ramified_primes(ZPoly::from_ints({-2, 0, 0, 1})) == I({2, 3}));
  CHECK(ramified_primes(ZPoly::from_ints({-1, -1, 0, 1})) == I({23}));
}

TEST_CASE("a common index divisor is not mistaken for ramification") {
  // x^3 + x^2 - 2x + 8: 2 divides every index yet splits completely.
  ZPoly f = ZPoly::from_ints({8, -2, 1, 1});
  Int d = poly_discriminant(f);
  CHECK(d == -2012);
  PrimeVerdict v = dedekind_test(f, Int(2), d);
  CHECK(v.index_degree > 0);
  CHECK(v.status == PrimeStatus::Unramified);
  CHECK(ramified_primes(f) == I({503}));
}

TEST_CASE("Dedekind verdicts") {
  ZPoly f = ZPoly::from_ints({-5, 0, 1});
  Int d = poly_discriminant(f);
  PrimeVerdict two = dedekind_test(f, Int(2), d);
  CHECK(two.repeated_factor);
  CHECK(two.index_degree == 1);
  CHECK(two.status == PrimeStatus::Unramified);
  PrimeVerdict five = dedekind_test(f, Int(5), d);
  CHECK(five.index_degree == 0);
  CHECK(five.status == PrimeStatus::Ramified);
  PrimeVerdict three = dedekind_test(f, Int(3), d);
  CHECK(three.status == PrimeStatus::Unramified);
  CHECK(std::string(to_string(PrimeStatus::Inconclusive)) == "inconclusive");
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible(ZPoly::from_ints({-1, -2, 1, 1})));
  CHECK(is_irreducible(ZPoly::from_ints({-2, 0, 0, 1})));
  CHECK_FALSE(is_irreducible(ZPoly::from_ints({-1, 0, 1})));
  CHECK_FALSE(is_irreducible(ZPoly::from_ints({1, 0, 2, 0, 1})));
  CHECK_THROWS_AS(ramified_primes(ZPoly::from_ints({-1, 0, 1})), DomainError);
  CHECK_THROWS_AS(ramified_primes(ZPoly::from_ints({1, 0, 2})), DomainError);
  for (auto [q, b] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{7, 3}, {19, 9}, {31, 5}, {37, 4}, {41, 8}})
    CHECK(is_irreducible(gaussian_period_poly(q, b)));
}

TEST_CASE("built fields carry the conductor-discriminant") {
  struct Case {
    std::uint64_t q, b;
    long disc;
  };
  for (const auto& c : {Case{3, 2, -3}, Case{5, 2, 5}, Case{5, 4, 125}, Case{7, 3, 49}, Case{7, 6, -16807},
                        Case{13, 4, 2197}}) {
    CAPTURE(c.q);
    CAPTURE(c.b);
    FieldReport r = analyze_field(gaussian_period_poly(c.q, c.b), std::make_pair(c.q, c.b));
    REQUIRE(r.field_disc.has_value());
    CHECK(*r.field_disc == c.disc);
    CHECK(r.ramified == I({static_cast<long>(c.q)}));
    CHECK(r.inconclusive.empty());
    CHECK(r.poly_disc % *r.field_disc == 0);
    Int ratio = r.poly_disc / *r.field_disc;
    CHECK(is_square(ratio));
  }
}

TEST_CASE("Frobenius statistics of the cyclic cubic and nonic") {
  auto f7 = frobenius_statistics(cyclic_field(7, 3), 500);
  CHECK(f7.mismatches.empty());
  CHECK(f7.primes_tested > 80);
  CHECK(std::abs(f7.split_fraction - 1.0 / 3) < 0.15);
  CHECK(f7.cycle_types.count("1^3"));
  CHECK(f7.cycle_types.count("3"));
  auto f19 = frobenius_statistics(cyclic_field(19, 9), 500);
  CHECK(f19.mismatches.empty());
  CHECK(std::abs(f19.split_fraction - 1.0 / 9) < 0.15);
  for (auto p : f19.skipped) CHECK((p == 19 || poly_discriminant(gaussian_period_poly(19, 9)) % Int(static_cast<unsigned long>(p)) == 0));
  CHECK_THROWS_AS(frobenius_statistics(cyclic_field(7, 3), 99), DomainError);
}

TEST_CASE("realizations verify") {
  auto real = realize_abelian({Int(3), Int(9)});
  RamificationReport r = verify_realization(real);
  CHECK(r.verdict);
  CHECK(r.problems.empty());
  CHECK(r.ramified_primes == I({7, 19}));
  CHECK(r.expected == I({7, 19}));
  for (const auto& orders : std::vector<std::vector<Int>>{{3, 3, 3}, {5}, {4, 2}, {25}})
    CHECK(verify_realization(realize_abelian(orders)).verdict);
}

TEST_CASE("a wrong claim is rejected") {
  auto real = realize_abelian({Int(3), Int(9)});
  real.ramified_primes = {7, 37};
  CHECK_FALSE(verify_realization(real).verdict);
}

TEST_CASE("external polynomials") {
  auto ok = certify_polynomials({ZPoly::from_ints({-1, -2, 1, 1})}, I({7}));
  CHECK(ok.verdict);
  auto bad = certify_polynomials({ZPoly::from_ints({-1, -2, 1, 1})}, I({5}));
  CHECK_FALSE(bad.verdict);
  CHECK_FALSE(bad.problems.empty());
  auto two = certify_polynomials({ZPoly::from_ints({1, 0, 1}), ZPoly::from_ints({-5, 0, 1})}, I({2, 5}));
  CHECK(two.verdict);
  CHECK(two.ramified_primes == I({2, 5}));
}
