#pragma once

// Imaginary quadratic fields: reduced binary quadratic forms, the class
// group, ideals of O_K in Hermite normal form and the generators a with
// (a) = A^l used by the governing-field conditions.
//
// O_K = Z[w] with w = (1 + sqrt D)/2 for D = 1 mod 4 and w = sqrt(D/4)
// otherwise, so w^2 = t w - n with t = Tr(w), n = N(w).

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "minram/arith.hpp"

namespace minram {

bool is_fundamental_discriminant(const Int& d);

struct QuadForm {
  Int a, b, c;
  Int disc() const { return b * b - 4 * a * c; }
  bool operator==(const QuadForm&) const = default;
  // Order used for listings: by a, then |b|, positive b before negative.
  bool operator<(const QuadForm& o) const;
};

QuadForm reduce(QuadForm f);
bool is_reduced(const QuadForm& f);
QuadForm principal_form(const Int& d);
// Composition followed by reduction.
QuadForm compose(const QuadForm& f, const QuadForm& g);
QuadForm form_power(const QuadForm& f, const Int& n);
QuadForm form_inverse(const QuadForm& f);
// All reduced primitive forms of discriminant d < 0, in listing order.
std::vector<QuadForm> reduced_forms(const Int& d);

struct QuadClassGroup {
  Int disc;
  std::vector<QuadForm> forms;   // forms[0] is the principal form
  Int h;
  std::vector<Int> structure;    // invariant factors, ascending
  std::vector<Int> orders;       // order of forms[i]

  std::size_t index_of(const QuadForm& f) const;
  unsigned l_rank(unsigned l) const;
  bool has_order(const Int& n) const;
  // Basis of Cl[l] chosen greedily in listing order.
  std::vector<QuadForm> l_torsion_basis(unsigned l) const;

 private:
  std::map<QuadForm, std::size_t> index_;
  friend QuadClassGroup class_group(const Int& d);
};

// |d| <= 10^6; throws DomainError unless d < 0 is fundamental.
QuadClassGroup class_group(const Int& d);

// Element x + y w of O_K.
struct QuadElem {
  Int x, y;
  bool operator==(const QuadElem&) const = default;
};

// Z-lattice with basis a and b + c w (a, c > 0, 0 <= b < a).
struct QuadIdeal {
  Int a, b, c;
  Int norm() const { return a * c; }
  bool operator==(const QuadIdeal&) const = default;
};

class QuadField {
 public:
  explicit QuadField(Int d);

  const Int& disc() const { return d_; }
  const Int& trace_w() const { return t_; }
  const Int& norm_w() const { return n_; }
  unsigned torsion() const { return torsion_; }
  // Generator of the roots of unity.
  QuadElem torsion_generator() const;

  QuadElem mul(const QuadElem& u, const QuadElem& v) const;
  QuadElem conj(const QuadElem& u) const;
  Int norm(const QuadElem& u) const;

  QuadIdeal ideal(const std::vector<QuadElem>& gens) const;
  QuadIdeal ideal_mul(const QuadIdeal& i, const QuadIdeal& j) const;
  QuadIdeal ideal_pow(const QuadIdeal& i, unsigned long n) const;
  QuadIdeal conj(const QuadIdeal& i) const;
  bool contains(const QuadIdeal& i, const QuadElem& u) const;
  QuadIdeal ideal_from_form(const QuadForm& f) const;
  // Reduced form of the class of i.
  QuadForm form_of(const QuadIdeal& i) const;
  // Generator of minimal norm when i is principal; normalized over units
  // (least y >= 0, then least x).
  std::optional<QuadElem> principal_generator(const QuadIdeal& i) const;
  QuadElem normalize(const QuadElem& u) const;

  // Roots of x^2 - t x + n mod q, ascending. Empty when q is inert.
  std::vector<std::uint64_t> w_roots(std::uint64_t q) const;
  bool splits(std::uint64_t q) const;
  // The degree-one prime (q, w - r).
  QuadIdeal prime_ideal(std::uint64_t q, std::uint64_t root) const;

 private:
  Int d_, t_, n_;
  unsigned torsion_;
};

struct IdealPowerGenerator {
  std::size_t class_index;
  QuadForm form;
  QuadIdeal ideal;
  unsigned l;
  QuadElem generator;  // (generator) = ideal^l
};

// Throws DomainError unless the class of f has order exactly l.
IdealPowerGenerator ideal_power_generator(const QuadField& k, const QuadClassGroup& cl, const QuadForm& f, unsigned l);

// Image of u in O_K/(q, w - root) = Z/q. Throws DomainError when root is
// not a root of the minimal polynomial of w, when q is inert, or when the
// residue is zero.
std::uint64_t residue_class(const QuadField& k, const QuadElem& u, std::uint64_t q, std::uint64_t root);

}  // namespace minram
