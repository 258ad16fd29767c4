#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "minram/errors.hpp"
#include "minram/field_data.hpp"
#include "minram/group.hpp"
#include "support.hpp"

using namespace minram;
using minram::test::ints;
using minram::test::load_group;
using minram::test::load_pc;

namespace {

struct Expected {
  const char* name;
  std::vector<Int> lcs;
  unsigned cls;
  unsigned d;
  long exponent;
  long center;
};

// Values from a brute-force closure computation on the multiplication tables.
const std::vector<Expected> kFixtures = {
    {"Z27", ints({27, 1}), 1, 1, 27, 27},
    {"Z9xZ3", ints({27, 1}), 1, 2, 9, 27},
    {"Z3x3x3", ints({27, 1}), 1, 3, 3, 27},
    {"Z3x3x3x3", ints({81, 1}), 1, 4, 3, 81},
    {"Z9xZ9", ints({81, 1}), 1, 2, 9, 81},
    {"H27", ints({27, 3, 1}), 2, 2, 3, 3},
    {"M27", ints({27, 3, 1}), 2, 2, 9, 3},
    {"Z3wrZ3", ints({81, 9, 3, 1}), 3, 2, 9, 3},
    {"UT4_F3", ints({729, 27, 3, 1}), 3, 3, 9, 3},
    {"H27xZ9", ints({243, 3, 1}), 2, 3, 9, 27},
    {"H27xZ3", ints({81, 3, 1}), 2, 3, 3, 9},
    {"Free2_rank3", ints({729, 27, 1}), 2, 3, 3, 27},
};

}  // namespace

TEST_CASE("series data of the fixture groups") {
  for (const auto& e : kFixtures) {
    CAPTURE(e.name);
    PcGroup g = load_pc(e.name);
    SeriesReport r = series_report(g);
    CHECK(r.lcs_orders == e.lcs);
    CHECK(r.nilpotency_class == e.cls);
    CHECK(r.d == e.d);
    CHECK(generator_rank(g) == e.d);
    CHECK(r.exponent == e.exponent);
    CHECK(center_order(g) == e.center);
    CHECK(g.order() == e.lcs.front());
  }
}

TEST_CASE("series data agrees with the abelian constructors") {
  CHECK(series_report(PcGroup::cyclic(3, 3)).lcs_orders == ints({27, 1}));
  CHECK(series_report(PcGroup::abelian(3, {1, 2})).exponent == 9);
  CHECK(series_report(PcGroup::abelian(5, {1, 1, 1})).d == 3);
  SeriesReport t = series_report(PcGroup::trivial(3));
  CHECK(t.nilpotency_class == 0);
  CHECK(t.d == 0);
}

TEST_CASE("H27 collection: xy and yx differ by the central generator") {
  PcGroup g = load_pc("H27");
  Exponents x = g.generator(0), y = g.generator(1), z = g.generator(2);
  Exponents xy = g.mul(x, y), yx = g.mul(y, x);
  CHECK(xy != yx);
  CHECK(g.mul(xy, g.commutator(y, x)) == yx);
  CHECK(g.commutator(y, x) == z);
  CHECK(g.commutator(x, y) == g.inverse(z));
  CHECK(g.collect({{1, 1}, {0, 1}}) == Exponents{1, 1, 1});
  CHECK(g.element_order(x) == 3);
  CHECK(g.is_identity(g.pow(xy, 3)));
  CHECK(g.commutator(z, x) == g.identity());
}

TEST_CASE("group axioms hold on H27 and M27") {
  for (const char* name : {"H27", "M27"}) {
    PcGroup g = load_pc(name);
    auto el = g.elements();
    REQUIRE(el.size() == 27);
    for (const auto& a : el) {
      CHECK(g.is_identity(g.mul(a, g.inverse(a))));
      for (const auto& b : el)
        for (const auto& c : {el[3], el[10], el[26]}) REQUIRE(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
    }
  }
}

TEST_CASE("the five groups of order 27 are pairwise distinguished") {
  std::set<std::tuple<unsigned, unsigned, long>> keys;
  for (const char* name : {"Z27", "Z9xZ3", "Z3x3x3", "H27", "M27"}) {
    SeriesReport r = series_report(load_pc(name));
    keys.insert({r.nilpotency_class, r.d, r.exponent.get_si()});
  }
  CHECK(keys.size() == 5);
}

TEST_CASE("bad presentations are rejected") {
  CHECK_THROWS_AS(PcGroup(2, 2, {{}, {}}, {}), PreconditionError);
  CHECK_THROWS_AS(PcGroup(4, 1, {{}}, {}), PresentationError);
  CHECK_THROWS_AS(PcGroup(3, 2, {{}}, {}), PresentationError);
  // Power relation pointing backwards.
  CHECK_THROWS_AS(PcGroup(3, 2, {{}, {{0, 1}}}, {}), PresentationError);
  // Commutator with j < i.
  std::map<std::pair<unsigned, unsigned>, Word> bad;
  bad[{0, 1}] = {{2, 1}};
  CHECK_THROWS_AS(PcGroup(3, 3, {{}, {}, {}}, bad), PresentationError);
  // [g2, g1] = g3 with g1^3 = g2 is inconsistent: g2 commutes with g1 as a power of it.
  std::map<std::pair<unsigned, unsigned>, Word> inc;
  inc[{1, 0}] = {{2, 1}};
  CHECK_THROWS_AS(PcGroup(3, 3, {{{1, 1}}, {}, {}}, inc), PresentationError);
}

TEST_CASE("tower plans") {
  auto h = central_tower_plan(load_pc("H27"));
  REQUIRE(h.steps.size() == 2);
  CHECK(h.steps[0].kind == StepKind::Split);
  CHECK(h.steps[0].kernel_cyclic_orders == ints({3, 3}));
  CHECK(h.steps[1].kind == StepKind::Frattini);
  CHECK(h.steps[1].kernel_cyclic_orders == ints({3}));
  CHECK_FALSE(h.steps[1].costs_extra_prime);
  CHECK(h.predicted_prime_count == 2);

  auto w = central_tower_plan(load_pc("Z3wrZ3"));
  REQUIRE(w.steps.size() == 3);
  CHECK(w.steps[1].costs_extra_prime);
  CHECK_FALSE(w.steps[2].costs_extra_prime);
  CHECK(w.predicted_prime_count == 2 + w.steps[1].kernel_cyclic_orders.size());

  auto u = central_tower_plan(load_pc("UT4_F3"));
  CHECK(u.predicted_prime_count == 5);
}

TEST_CASE("bounds over Q") {
  FieldData q = FieldData::rationals();
  struct B {
    const char* name;
    unsigned ram, boston;
  };
  for (const auto& b : {B{"H27", 2, 2}, B{"M27", 2, 2}, B{"Z3wrZ3", 3, 2}, B{"UT4_F3", 5, 3}, B{"Free2_rank3", 3, 3},
                        B{"H27xZ5", 2, 2}, B{"Z3x3x3", 3, 3}, B{"Z27", 1, 1}}) {
    CAPTURE(b.name);
    NilpotentGroup g = load_group(b.name);
    CHECK(paper_bound(g, q) == b.ram);
    CHECK(boston_bound(g) == b.boston);
    CHECK(paper_bound(g, q) >= g.d());
  }
  NilpotentGroup t = load_group("trivial");
  CHECK(paper_bound(t, q) == 0);
  CHECK(boston_bound(t) == 1);
}

TEST_CASE("bounds over other fields") {
  NilpotentGroup h = load_group("H27");
  CHECK(paper_bound(h, FieldData::imaginary_quadratic(Int(-23))) == 3);
  CHECK(paper_bound(h, FieldData::imaginary_quadratic(Int(-4))) == 2);
  CHECK_THROWS_AS(paper_bound(h, FieldData::imaginary_quadratic(Int(-3))), PreconditionError);
  FieldData c = FieldData::custom(2, {{3, 1}}, Int(3), 2, {3});
  BoundReport r = paper_bound_report(h, c);
  CHECK(r.fallback);
  CHECK(r.value == 3 + 1 + 2);
  FieldData plain = FieldData::custom(2, {{3, 1}}, Int(3));
  CHECK(paper_bound(h, plain) == 2 + 1 + 2);
  // Abelian groups ignore the field.
  CHECK(paper_bound(load_group("Z3x3x3"), FieldData::imaginary_quadratic(Int(-3))) == 3);
}

TEST_CASE("nilpotent products") {
  NilpotentGroup g = load_group("H27xZ5");
  CHECK(g.order() == 135);
  CHECK(g.primes() == std::vector<unsigned>{3, 5});
  CHECK(g.radical() == 15);
  CHECK(g.exponent() == 15);
  CHECK(g.scholz_exponent() == 1);
  CHECK(g.d() == 2);
  CHECK(g.nilpotency_class() == 2);
  CHECK_FALSE(g.is_abelian());
  auto plan = central_tower_plan(g);
  CHECK(plan.steps[0].kernel_cyclic_orders == ints({3, 15}));
  CHECK(load_group("M27").scholz_exponent() == 2);
  CHECK(load_group("Z27").scholz_exponent() == 3);
}

TEST_CASE("d of a coprime product is the max of the factors") {
  std::vector<std::pair<PcGroup, PcGroup>> pairs = {
      {PcGroup::abelian(3, {1, 1}), PcGroup::abelian(5, {1})},
      {PcGroup::abelian(3, {1}), PcGroup::abelian(5, {1, 1, 1})},
      {load_pc("H27"), PcGroup::abelian(7, {1, 2})},
      {load_pc("UT4_F3"), PcGroup::abelian(5, {2})},
  };
  for (auto& [a, b] : pairs) {
    unsigned da = generator_rank(a), db = generator_rank(b);
    NilpotentGroup g({a, b});
    CHECK(g.d() == std::max(da, db));
  }
}

TEST_CASE("merge_invariant_factors") {
  CHECK(merge_invariant_factors({ints({3, 3}), ints({5})}) == ints({3, 15}));
  CHECK(merge_invariant_factors({ints({9}), ints({5, 25})}) == ints({5, 225}));
}

TEST_CASE("relatively free class-2 groups") {
  auto f1 = sgl3_family(1, 3);
  CHECK(f1.center_order == 1);
  CHECK(f1.group.order() == 3);
  auto f2 = sgl3_family(2, 3);
  CHECK(f2.center_order == 3);
  CHECK(series_report(f2.group).lcs_orders == series_report(load_pc("H27")).lcs_orders);
  CHECK(center_order(f2.group) == 3);
  auto f3 = sgl3_family(3, 3);
  CHECK(f3.center_order == 27);
  CHECK(center_order(f3.group) == 27);
  CHECK(f3.expected_ram == 3);
  CHECK(paper_bound(NilpotentGroup({f3.group}), FieldData::rationals()) == 3);
  for (unsigned n = 1; n <= 3; ++n) {
    auto f = sgl3_family(n, 5);
    SeriesReport r = series_report(f.group);
    CHECK(r.d == n);
    CHECK(r.exponent == 5);
    // The recorded order is that of [G,G], which equals Z(G) once n >= 2.
    CHECK(r.lcs_orders.size() >= 2);
    CHECK(r.lcs_orders[1] == f.center_order);
    if (n >= 2) CHECK(center_order(f.group) == f.center_order);
  }
  CHECK_THROWS_AS(sgl3_family(0, 3), DomainError);
}

TEST_CASE("subgroups") {
  PcGroup g = load_pc("H27");
  Subgroup s = Subgroup::generated(g, {g.generator(0)});
  CHECK(s.order() == 3);
  Subgroup n = Subgroup::normal_closure(g, {g.generator(0)});
  CHECK(n.order() == 9);
  CHECK(n.contains(g.generator(2)));
  CHECK_FALSE(n.contains(g.generator(1)));
  CHECK(Subgroup::whole(g).order() == 27);
  CHECK(abelian_invariants(g, Subgroup::whole(g), n) == ints({3}));
}

TEST_CASE("enumeration cap") { CHECK_THROWS_AS(PcGroup::abelian(3, std::vector<unsigned>(13, 1)).elements(), DomainError); }
