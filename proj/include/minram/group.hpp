#pragma once

// Finite l-groups given by consistent power-commutator presentations, and
// nilpotent groups as direct products of their Sylow subgroups.
//
// Generators are 0-based internally and 1-based in JSON. Commutators follow
// [a, b] = a^-1 b^-1 a b, so g_j g_i = g_i g_j [g_j, g_i].

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minram/arith.hpp"

namespace minram {

struct FieldData;

struct Letter {
  unsigned gen;
  long exp;
  bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;

// Normal form g_1^e_1 ... g_m^e_m, 0 <= e_i < l.
using Exponents = std::vector<unsigned>;

class PcGroup {
 public:
  // powers[i] is the word for g_i^l (generators > i only); comms maps
  // (j, i), j > i, to the word for [g_j, g_i] (generators > j only).
  // Missing commutators are trivial. Throws PresentationError if the
  // relations are malformed or inconsistent.
  PcGroup(unsigned l, unsigned m, std::vector<Word> powers, std::map<std::pair<unsigned, unsigned>, Word> comms);

  static PcGroup trivial(unsigned l);
  static PcGroup cyclic(unsigned l, unsigned e);
  // Abelian group with the given invariant exponents (Z/l^e1 x Z/l^e2 ...).
  static PcGroup abelian(unsigned l, const std::vector<unsigned>& exps);

  unsigned prime() const { return l_; }
  unsigned num_gens() const { return m_; }
  Int order() const;
  const std::vector<Word>& powers() const { return powers_; }
  const std::map<std::pair<unsigned, unsigned>, Word>& commutators() const { return comms_; }

  Exponents identity() const { return Exponents(m_, 0); }
  Exponents generator(unsigned i) const;
  Exponents collect(const Word& w) const;
  Exponents mul(const Exponents& a, const Exponents& b) const;
  Exponents inverse(const Exponents& a) const;
  Exponents pow(const Exponents& a, long n) const;
  Exponents commutator(const Exponents& a, const Exponents& b) const;
  Exponents conjugate(const Exponents& a, const Exponents& by) const;
  bool is_identity(const Exponents& a) const;
  // Order of an element, a power of l.
  Int element_order(const Exponents& a) const;

  // All l^m normal forms in lexicographic order. Throws DomainError when
  // l^m exceeds the enumeration cap (2^20).
  std::vector<Exponents> elements() const;

  // Right-regular action check (orders up to 3^8) and standard
  // consistency test words (always). Called by the constructor.
  void verify_consistency() const;

 private:
  void mul_gen(Exponents& e, unsigned k) const;
  void mul_word(Exponents& e, const Word& w) const;

  unsigned l_;
  unsigned m_;
  std::vector<Word> powers_;
  std::map<std::pair<unsigned, unsigned>, Word> comms_;
  std::vector<std::vector<Word>> comm_table_;  // [j][i], j > i
  std::vector<Exponents> gen_inverse_;
};

// A subgroup described by an induced polycyclic sequence: elements with
// pairwise distinct depths and leading exponent 1.
class Subgroup {
 public:
  explicit Subgroup(const PcGroup& g) : g_(&g) {}
  static Subgroup generated(const PcGroup& g, const std::vector<Exponents>& gens);
  static Subgroup normal_closure(const PcGroup& g, const std::vector<Exponents>& gens);
  static Subgroup whole(const PcGroup& g);

  unsigned log_order() const { return static_cast<unsigned>(seq_.size()); }
  Int order() const;
  bool contains(const Exponents& x) const;
  std::vector<Exponents> generators() const;

 private:
  Exponents sift(Exponents x) const;
  bool insert(const Exponents& x);
  void close(bool normal);

  const PcGroup* g_;
  std::map<unsigned, Exponents> seq_;  // depth -> element
};

// Invariant factors (powers of l, ascending) of H/K for K <= H normal with
// abelian quotient.
std::vector<Int> abelian_invariants(const PcGroup& g, const Subgroup& h, const Subgroup& k);

struct SeriesReport {
  std::vector<Int> lcs_orders;                    // |G_1|, ..., |G_{c+1}| = 1
  std::vector<unsigned> quotient_ranks;           // d(G_i/G_{i+1}), i = 1..c
  std::vector<std::vector<Int>> quotient_factors; // invariant factors, ascending
  unsigned nilpotency_class = 0;
  unsigned d = 0;
  Int exponent = 1;
};

SeriesReport series_report(const PcGroup& g);
// Generator rank from the Frattini quotient.
unsigned generator_rank(const PcGroup& g);
Int center_order(const PcGroup& g);

enum class StepKind { Split, Frattini };

struct TowerLayer {
  unsigned layer;
  StepKind kind;
  std::vector<Int> kernel_cyclic_orders;
  bool costs_extra_prime;
};

struct CentralTowerPlan {
  std::vector<TowerLayer> steps;
  unsigned predicted_prime_count = 0;
};

CentralTowerPlan central_tower_plan(const PcGroup& g);

class NilpotentGroup {
 public:
  NilpotentGroup() = default;
  explicit NilpotentGroup(std::vector<PcGroup> sylows);

  const std::map<unsigned, PcGroup>& sylows() const { return sylows_; }
  std::vector<unsigned> primes() const;
  Int order() const;
  // Product of the primes dividing |G|.
  Int radical() const;
  // Least N with exp(G) | radical^N.
  unsigned scholz_exponent() const;
  bool is_abelian() const;
  bool is_trivial() const { return sylows_.empty(); }

  unsigned d() const;
  unsigned nilpotency_class() const;
  const SeriesReport& report(unsigned l) const { return reports_.at(l); }
  Int exponent() const;

 private:
  std::map<unsigned, PcGroup> sylows_;
  std::map<unsigned, SeriesReport> reports_;
};

// Tower plan of a nilpotent group: layer i merges the Sylow layers, the
// cyclic kernels are the invariant factors of the product quotient.
CentralTowerPlan central_tower_plan(const NilpotentGroup& g);

// Invariant factors of a product of abelian groups given per prime.
std::vector<Int> merge_invariant_factors(const std::vector<std::vector<Int>>& per_prime);

struct BoundReport {
  unsigned value = 0;
  bool fallback = false;  // some l | |G| has an ideal class of order l^2
};

BoundReport paper_bound_report(const NilpotentGroup& g, const FieldData& field);
unsigned paper_bound(const NilpotentGroup& g, const FieldData& field);
unsigned boston_bound(const NilpotentGroup& g);

struct Sgl3Family {
  unsigned expected_ram;
  Int center_order;
  std::string multiplicator_claim;
  PcGroup group;
};

// The relatively free group of exponent l and class 2 on n generators.
PcGroup free_class2_exponent_l(unsigned n, unsigned l);
Sgl3Family sgl3_family(unsigned n, unsigned l);

}  // namespace minram
