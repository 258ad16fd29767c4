#pragma once

// Integer and modular arithmetic used by every search and certificate check.
// All public entry points take arbitrary-precision integers; the u64
// overloads exist for the inner loops of prime scans.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace minram {

using Int = mpz_class;

std::string to_string(const Int& n);
Int parse_int(const std::string& text);

// Non-negative residue of a modulo m (m > 0).
Int mod(const Int& a, const Int& m);
std::uint64_t mod_u64(const Int& a, std::uint64_t m);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
Int powmod(const Int& base, const Int& exp, const Int& m);

// Deterministic for n < 2^64. Above that, GMP's BPSW plus 25 Miller-Rabin
// rounds; the probability of a composite passing is below 4^-25.
bool is_prime(std::uint64_t n);
bool is_prime(const Int& n);

// Prime factors with multiplicity, ascending.
std::vector<Int> factorize(const Int& n);
// Distinct prime factors, ascending.
std::vector<Int> prime_divisors(const Int& n);

unsigned valuation(Int n, const Int& p);
bool is_squarefree(const Int& n);

// True iff a is an m-th power modulo the prime q, i.e. a^((q-1)/m) = 1.
// Throws DomainError unless q is prime, q does not divide a and m | q - 1.
bool power_residue(const Int& a, const Int& m, const Int& q);
// Unchecked fast path: a already reduced mod q, m | q - 1.
bool power_residue_u64(std::uint64_t a, std::uint64_t m, std::uint64_t q);

// Least generator of (Z/q)^x for an odd prime q.
Int primitive_root(const Int& q);

// Multiplicative order of a modulo m (gcd(a, m) = 1).
Int multiplicative_order(const Int& a, const Int& m);

struct Congruence {
  Int residue;
  Int modulus;
  bool operator==(const Congruence&) const = default;
};

// Solves x = r_i (mod m_i). Non-coprime moduli are accepted when the
// residues agree on the overlaps; the result is modulo the lcm.
Congruence crt(std::span<const Congruence> system);

// A prime power l^e, with l verified prime.
class PrimePower {
 public:
  PrimePower(Int l, unsigned e);
  const Int& prime() const { return l_; }
  unsigned exponent() const { return e_; }
  Int value() const;

 private:
  Int l_;
  unsigned e_;
};

// Square root of a modulo an odd prime p; a must be a quadratic residue.
std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p);
// Kronecker-style symbol (a/p) for an odd prime p: 0, 1 or -1.
int legendre(const Int& a, const Int& p);

}  // namespace minram
