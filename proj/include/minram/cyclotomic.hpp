#pragma once

// Cyclic fields of prime conductor inside Q(zeta_q) and abelian fields
// built as their composita.

#include <cstdint>
#include <set>
#include <unordered_map>
#include <vector>

#include "minram/arith.hpp"
#include "minram/poly.hpp"
#include "minram/search.hpp"

namespace minram {

// A character of (Z/q)^x of exact order b: chi(g^k) = zeta_b^k for the
// least primitive root g.
class DirichletCharacter {
 public:
  DirichletCharacter(std::uint64_t q, std::uint64_t b);

  std::uint64_t conductor() const { return q_; }
  std::uint64_t order() const { return b_; }
  std::uint64_t generator() const { return g_; }
  // k with n = g^k mod q (baby-step giant-step).
  std::uint64_t discrete_index(const Int& n) const;
  // k mod b with chi(n) = zeta_b^k. Throws DomainError when q | n.
  std::uint64_t value(const Int& n) const;
  // Order of chi(n) in mu_b.
  std::uint64_t value_order(const Int& n) const;

 private:
  std::uint64_t q_, b_, g_;
  std::uint64_t step_;                                   // giant-step size
  std::uint64_t giant_;                                  // g^-step
  std::unordered_map<std::uint64_t, std::uint64_t> baby_;  // g^j -> j
};

std::uint64_t character_value(const DirichletCharacter& chi, const Int& n);

// Minimal polynomial of the Gaussian period of the index-b subgroup of
// (Z/q)^x, computed with exact integer arithmetic.
ZPoly gaussian_period_poly(std::uint64_t q, std::uint64_t b);

struct CyclicFieldSpec {
  std::uint64_t conductor;
  std::uint64_t degree;
  DirichletCharacter character;
  ZPoly defining_poly;
};

CyclicFieldSpec cyclic_field(std::uint64_t q, std::uint64_t b);

struct AbelianRealization {
  std::vector<Int> factors;  // invariant factors, ascending
  std::vector<CyclicFieldSpec> specs;
  std::vector<std::uint64_t> ramified_primes;
};

// Invariant factors (ascending, all > 1) of the product of cyclic groups of
// the given orders.
std::vector<Int> invariant_factors(const std::vector<Int>& orders);

// Least prime q not in avoid with q = 1 mod b and mod every extra modulus.
std::uint64_t find_conductor(std::uint64_t b, const std::set<std::uint64_t>& avoid = {},
                             const std::vector<std::uint64_t>& extra = {}, const ScanOptions& opts = default_scan_options());

// One least-prime conductor per invariant factor, pairwise distinct.
AbelianRealization realize_abelian(const std::vector<Int>& orders, const ScanOptions& opts = default_scan_options());
AbelianRealization realize_with_conductors(const std::vector<Int>& factors, const std::vector<std::uint64_t>& conductors);

}  // namespace minram
