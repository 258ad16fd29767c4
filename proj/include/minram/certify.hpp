#pragma once

// Ramification of explicit number fields given by monic integer
// polynomials: discriminants, Dedekind's index test, irreducibility proofs
// from factorization patterns, and Frobenius statistics against the
// Dirichlet characters of the cyclic fields built by the realizer.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minram/arith.hpp"
#include "minram/cyclotomic.hpp"
#include "minram/poly.hpp"

namespace minram {

enum class PrimeStatus { Unramified, Ramified, Inconclusive };

const char* to_string(PrimeStatus s);

struct PrimeVerdict {
  Int p;
  unsigned disc_valuation = 0;
  bool repeated_factor = false;  // f mod p is not squarefree
  unsigned index_degree = 0;     // deg gcd(F, g, h); p divides the index iff > 0
  PrimeStatus status = PrimeStatus::Inconclusive;
  std::string method;  // dedekind | conductor-discriminant
};

// Dedekind's criterion at p for monic f with discriminant disc. When p
// divides the index of Z[x]/f the verdict relies on v_p(disc) - 2 deg U.
PrimeVerdict dedekind_test(const ZPoly& f, const Int& p, const Int& disc);

// True when factorization patterns modulo small primes prove f
// irreducible; false means "not proven".
bool is_irreducible(const ZPoly& f);

// Ramified primes of Q[x]/f by Dedekind's test alone. Throws DomainError
// unless f is monic and proven irreducible, and Error when some prime is
// inconclusive.
std::vector<Int> ramified_primes(const ZPoly& f);

struct FieldReport {
  ZPoly polynomial;
  Int poly_disc;
  std::optional<Int> field_disc;           // conductor-discriminant, built fields only
  std::optional<std::uint64_t> conductor;
  bool irreducible = false;
  std::vector<PrimeVerdict> primes;        // one per prime divisor of poly_disc
  std::vector<Int> ramified;
  std::vector<Int> inconclusive;
};

// Dedekind analysis; a conductor (q, b) adds the conductor-discriminant
// +-q^(b-1) to settle inconclusive primes and cross-check the others.
FieldReport analyze_field(const ZPoly& f, std::optional<std::pair<std::uint64_t, std::uint64_t>> conductor = {});

struct FrobeniusReport {
  std::uint64_t conductor = 0;
  std::uint64_t degree = 0;
  std::uint64_t bound = 0;
  std::size_t primes_tested = 0;
  std::vector<std::uint64_t> skipped;     // p = q or p | disc
  std::vector<std::uint64_t> mismatches;  // factor degrees differ from ord chi(p)
  std::size_t split_count = 0;
  double split_fraction = 0.0;
  std::map<std::string, std::size_t> cycle_types;  // "1^3", "3", ...
};

// Throws DomainError when bound < 100.
FrobeniusReport frobenius_statistics(const CyclicFieldSpec& spec, std::uint64_t bound);

struct RamificationReport {
  std::vector<FieldReport> fields;
  std::vector<Int> ramified_primes;  // union over the fields, ascending
  std::vector<Int> expected;
  bool verdict = false;
  std::vector<std::string> problems;
  std::vector<FrobeniusReport> frobenius;
};

// Checks that factor i ramifies exactly at its conductor q_i, that
// q_i^(b_i - 1) divides the polynomial discriminant, and that the union
// equals the claimed ramified set of size d.
RamificationReport verify_realization(const AbelianRealization& real);

// External polynomials: Dedekind-only analysis against an expected set.
RamificationReport certify_polynomials(const std::vector<ZPoly>& polys, const std::vector<Int>& expected);

}  // namespace minram
