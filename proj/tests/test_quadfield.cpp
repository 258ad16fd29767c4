#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "minram/errors.hpp"
#include "minram/field_data.hpp"
#include "minram/quadfield.hpp"

using namespace minram;

namespace {

// Independent count of reduced forms: |b| <= a <= c, b >= 0 when |b| = a or a = c.
long brute_class_number(long d) {
  long h = 0;
  for (long a = 1; 3 * a * a <= -d; ++a)
    for (long b = -a + 1; b <= a; ++b) {
      long num = b * b - d;
      if (num % (4 * a)) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++h;
    }
  return h;
}

bool brute_fundamental(long d) {
  if (d >= 0 || d == -0) return false;
  long m = -d;
  auto squarefree = [](long n) {
    for (long p = 2; p * p <= n; ++p)
      if (n % (p * p) == 0) return false;
    return true;
  };
  if (((d % 4) + 4) % 4 == 1) return squarefree(m);
  if (m % 4) return false;
  long k = m / 4;
  long dk = -k;
  long r = ((dk % 4) + 4) % 4;
  return (r == 2 || r == 3) && squarefree(k);
}

}  // namespace

TEST_CASE("fundamental discriminants") {
  for (long d = -1; d >= -3000; --d) REQUIRE(is_fundamental_discriminant(Int(d)) == brute_fundamental(d));
  CHECK_THROWS_AS(class_group(Int(-12)), DomainError);
  CHECK_THROWS_AS(class_group(Int(5)), DomainError);
}

TEST_CASE("class numbers agree with a direct form count") {
  for (long d = -3; d >= -3000; --d) {
    if (!brute_fundamental(d)) continue;
    auto cl = class_group(Int(d));
    REQUIRE(cl.h == brute_class_number(d));
    REQUIRE(cl.forms.size() == cl.h.get_ui());
    Int prod = 1;
    for (const auto& f : cl.structure) prod *= f;
    REQUIRE(prod == cl.h);
    REQUIRE(cl.forms[0] == principal_form(Int(d)));
  }
}

TEST_CASE("class number one exactly at the nine known discriminants") {
  std::set<long> ones;
  for (long d = -3; d >= -2000; --d)
    if (brute_fundamental(d) && class_group(Int(d)).h == 1) ones.insert(d);
  CHECK(ones == std::set<long>{-163, -67, -43, -19, -11, -8, -7, -4, -3});
}

TEST_CASE("class group of -23") {
  auto cl = class_group(Int(-23));
  CHECK(cl.h == 3);
  REQUIRE(cl.forms.size() == 3);
  CHECK(cl.forms[0] == QuadForm{1, 1, 6});
  CHECK(cl.forms[1] == QuadForm{2, 1, 3});
  CHECK(cl.forms[2] == QuadForm{2, -1, 3});
  CHECK(cl.structure == std::vector<Int>{3});
  CHECK(cl.l_rank(3) == 1);
  CHECK(cl.l_rank(2) == 0);
  CHECK(compose(cl.forms[1], cl.forms[1]) == cl.forms[2]);
  CHECK(form_inverse(cl.forms[1]) == cl.forms[2]);
  CHECK(form_power(cl.forms[1], Int(3)) == cl.forms[0]);
}

TEST_CASE("class group structures") {
  CHECK(class_group(Int(-31)).structure == std::vector<Int>{3});
  CHECK(class_group(Int(-199)).structure == std::vector<Int>{9});
  CHECK(class_group(Int(-3299)).structure == std::vector<Int>{3, 9});
  CHECK(class_group(Int(-4027)).structure == std::vector<Int>{3, 3});
  CHECK(class_group(Int(-84)).structure == std::vector<Int>{2, 2});
  auto c = class_group(Int(-3299));
  CHECK(c.has_order(Int(9)));
  CHECK_FALSE(c.has_order(Int(27)));
  CHECK(c.l_rank(3) == 2);
  CHECK(c.l_torsion_basis(3).size() == 2);
  auto f = FieldData::imaginary_quadratic(Int(-199));
  CHECK(f.has_l_squared_class(3));
  CHECK_FALSE(FieldData::imaginary_quadratic(Int(-23)).has_l_squared_class(3));
}

TEST_CASE("composition is associative and orders divide h") {
  std::mt19937 rng(7);
  for (long d = -3; d >= -2000; --d) {
    if (!brute_fundamental(d)) continue;
    auto cl = class_group(Int(d));
    const auto& fs = cl.forms;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      REQUIRE(is_reduced(fs[i]));
      REQUIRE(cl.h % cl.orders[i] == 0);
      REQUIRE(compose(fs[i], form_inverse(fs[i])) == fs[0]);
      REQUIRE(compose(fs[i], fs[0]) == fs[i]);
    }
    for (int t = 0; t < 20; ++t) {
      const auto& a = fs[rng() % fs.size()];
      const auto& b = fs[rng() % fs.size()];
      const auto& c = fs[rng() % fs.size()];
      REQUIRE(compose(compose(a, b), c) == compose(a, compose(b, c)));
      REQUIRE(compose(a, b) == compose(b, a));
    }
  }
}

TEST_CASE("reduction preserves the discriminant") {
  QuadForm f{10, 23, 14};
  QuadForm r = reduce(f);
  CHECK(r.disc() == f.disc());
  CHECK(is_reduced(r));
}

TEST_CASE("field arithmetic in Q(sqrt -23)") {
  QuadField k(Int(-23));
  CHECK(k.trace_w() == 1);
  CHECK(k.norm_w() == 6);
  CHECK(k.torsion() == 2);
  QuadElem w{0, 1};
  CHECK(k.mul(w, w) == QuadElem{-6, 1});
  CHECK(k.norm(QuadElem{1, 1}) == 8);
  CHECK(k.w_roots(59) == std::vector<std::uint64_t>{27, 33});
  CHECK(k.w_roots(5).empty());
  CHECK(k.splits(2));
  CHECK(QuadField(Int(-3)).torsion() == 6);
  CHECK(QuadField(Int(-4)).torsion() == 4);
}

TEST_CASE("norm is multiplicative") {
  std::mt19937 rng(3);
  for (long d : {-23L, -31L, -4L, -3L, -3299L}) {
    QuadField k{Int(d)};
    for (int t = 0; t < 200; ++t) {
      QuadElem u{Int(static_cast<long>(rng() % 41) - 20), Int(static_cast<long>(rng() % 41) - 20)};
      QuadElem v{Int(static_cast<long>(rng() % 41) - 20), Int(static_cast<long>(rng() % 41) - 20)};
      REQUIRE(k.norm(k.mul(u, v)) == k.norm(u) * k.norm(v));
      REQUIRE(k.norm(k.conj(u)) == k.norm(u));
    }
  }
}

TEST_CASE("ideals and classes") {
  QuadField k(Int(-23));
  auto cl = class_group(Int(-23));
  QuadIdeal p2 = k.prime_ideal(2, k.w_roots(2)[0]);
  CHECK(p2.norm() == 2);
  QuadIdeal cube = k.ideal_pow(p2, 3);
  CHECK(cube.norm() == 8);
  auto g = k.principal_generator(cube);
  REQUIRE(g.has_value());
  CHECK(k.norm(*g) == 8);
  CHECK_FALSE(k.principal_generator(p2).has_value());
  CHECK(k.form_of(k.ideal_mul(p2, k.conj(p2))) == cl.forms[0]);
  for (const auto& f : cl.forms) CHECK(k.form_of(k.ideal_from_form(f)) == f);
}

TEST_CASE("ideal power generators") {
  {
    QuadField k(Int(-23));
    auto cl = class_group(Int(-23));
    auto ig = ideal_power_generator(k, cl, cl.forms[1], 3);
    CHECK(ig.generator == QuadElem{1, 1});
    CHECK(k.norm(ig.generator) == 8);
    CHECK_THROWS_AS(ideal_power_generator(k, cl, cl.forms[0], 3), DomainError);
  }
  {
    QuadField k(Int(-31));
    auto cl = class_group(Int(-31));
    auto ig = ideal_power_generator(k, cl, cl.forms[1], 3);
    CHECK(ig.generator == QuadElem{-1, 1});
    CHECK(k.norm(ig.generator) == ig.ideal.norm() * ig.ideal.norm() * ig.ideal.norm());
  }
}

TEST_CASE("residue map is a ring homomorphism") {
  std::mt19937 rng(11);
  QuadField k(Int(-23));
  for (std::uint64_t q : {59ULL, 101ULL, 13ULL, 151ULL}) {
    for (std::uint64_t r : k.w_roots(q)) {
      for (int t = 0; t < 200; ++t) {
        QuadElem u{Int(static_cast<long>(rng() % 1000)), Int(static_cast<long>(rng() % 1000))};
        QuadElem v{Int(static_cast<long>(rng() % 1000)), Int(static_cast<long>(rng() % 1000))};
        QuadElem uv = k.mul(u, v);
        std::uint64_t ru, rv, ruv;
        try {
          ru = residue_class(k, u, q, r);
          rv = residue_class(k, v, q, r);
          ruv = residue_class(k, uv, q, r);
        } catch (const DomainError&) {
          continue;
        }
        REQUIRE(ruv == ru * rv % q);
      }
    }
  }
  CHECK_THROWS_AS(residue_class(k, QuadElem{1, 1}, 5, 1), DomainError);
  CHECK(residue_class(k, QuadElem{1, 1}, 13, 5) == 6);
}
