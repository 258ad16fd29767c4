#pragma once

// Dense univariate polynomials: over Z (arbitrary precision) and over F_p
// (p < 2^63). Coefficients are stored constant term first.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "minram/arith.hpp"

namespace minram {

struct ZPoly {
  std::vector<Int> c;

  ZPoly() = default;
  explicit ZPoly(std::vector<Int> coeffs);
  static ZPoly from_ints(std::initializer_list<long> coeffs);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Int& lead() const { return c.back(); }
  bool is_monic() const { return !c.empty() && c.back() == 1; }
  void trim();
  ZPoly derivative() const;
  Int content() const;
  Int eval(const Int& x) const;
  std::string to_string() const;

  bool operator==(const ZPoly&) const = default;
};

ZPoly operator+(const ZPoly& a, const ZPoly& b);
ZPoly operator-(const ZPoly& a, const ZPoly& b);
ZPoly operator*(const ZPoly& a, const ZPoly& b);
ZPoly operator*(const Int& k, const ZPoly& a);

// Resultant via the subresultant PRS (exact over Z).
Int resultant(const ZPoly& a, const ZPoly& b);
// Discriminant of a nonconstant polynomial; throws DomainError when zero
// (f not squarefree).
Int poly_discriminant(const ZPoly& f);

// Polynomial over F_p.
struct FpPoly {
  std::uint64_t p = 2;
  std::vector<std::uint64_t> c;

  FpPoly() = default;
  FpPoly(std::uint64_t modulus, std::vector<std::uint64_t> coeffs);
  static FpPoly reduce(const ZPoly& f, std::uint64_t p);
  static FpPoly x(std::uint64_t p);
  static FpPoly constant(std::uint64_t p, std::uint64_t v);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_one() const { return c.size() == 1 && c[0] == 1; }
  std::uint64_t lead() const { return c.back(); }
  void trim();
  FpPoly monic() const;
  FpPoly derivative() const;
  // Lift with coefficients in [0, p).
  ZPoly lift() const;

  bool operator==(const FpPoly&) const = default;
  bool operator<(const FpPoly& o) const;
};

FpPoly operator+(const FpPoly& a, const FpPoly& b);
FpPoly operator-(const FpPoly& a, const FpPoly& b);
FpPoly operator*(const FpPoly& a, const FpPoly& b);
std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
FpPoly operator/(const FpPoly& a, const FpPoly& b);
FpPoly operator%(const FpPoly& a, const FpPoly& b);
FpPoly gcd(FpPoly a, FpPoly b);
// base^e mod m.
FpPoly powmod(const FpPoly& base, const Int& e, const FpPoly& m);

struct FpFactor {
  FpPoly factor;  // monic irreducible
  unsigned multiplicity;
};

// Complete factorization of a nonzero polynomial into monic irreducibles,
// sorted by (degree, coefficients). The leading coefficient is dropped.
// Equal-degree splitting uses a fixed seed, so results are reproducible.
std::vector<FpFactor> factor_mod_p(const FpPoly& f);

// Degrees of the irreducible factors (with multiplicity), ascending.
std::vector<unsigned> factor_degrees(const FpPoly& f);

}  // namespace minram
