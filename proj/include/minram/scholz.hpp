#pragma once

// Prime-system searches for minimal ramification: governing-field data,
// exceptional sets, Scholz conditions on abelian layers, repair primes for
// the central Frattini layers, and replayable certificates.
//
// Every condition is a congruence or a power-residue test at a degree-one
// prime (q, w - root) of K; over Q there is no root. Conditions carry the
// Sylow prime l they belong to (0 when they concern the base field only),
// so a certificate restricts to any single l by filtering.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "minram/cyclotomic.hpp"
#include "minram/field_data.hpp"
#include "minram/group.hpp"
#include "minram/quadfield.hpp"
#include "minram/search.hpp"

namespace minram {

struct Condition {
  std::string kind;  // congruence | power_residue | non_power_residue
  unsigned l = 0;
  std::string role;
  // congruence: [value, residue, modulus]
  // power residue over Q: [a, m, q]; over K: [x, y, m, q, root] for x + y w
  std::vector<Int> args;
  bool holds = false;
  bool operator==(const Condition&) const = default;
};

// Evaluates a condition from its operands alone. Malformed operands
// (non-prime modulus, m not dividing q - 1, root not a root of the minimal
// polynomial of w, zero residue) evaluate to false.
bool replay_condition(const Condition& c, const FieldData& field);

struct PrimeChoice {
  std::uint64_t q = 0;
  std::optional<std::uint64_t> root;  // imaginary quadratic K only
  bool operator==(const PrimeChoice&) const = default;
};

struct KummerGenerator {
  unsigned l;
  unsigned index;  // 1-based j
  QuadForm form;
  QuadElem element;  // a_j with (a_j) = A_j^l
  unsigned exponent;
};

struct GoverningFieldDescription {
  unsigned l = 0;
  unsigned N = 0;
  Int base_level;  // l^N
  std::vector<KummerGenerator> generators;
};

// Empty over Q. Throws PreconditionError when l divides |mu_K| and
// DomainError for custom fields.
GoverningFieldDescription governing_field(const FieldData& field, unsigned l, unsigned N);

struct NamedElem {
  std::string name;
  QuadElem elem;
};

// Search context shared by all steps: S_0, generators of the S_0-units,
// Kummer generators and the S-generators of further primes.
class ScholzContext {
 public:
  ScholzContext(const FieldData& field, std::vector<unsigned> group_primes, unsigned N);

  const FieldData& field() const { return field_; }
  bool over_q() const { return !k_.has_value(); }
  const QuadField& quad() const { return *k_; }
  const std::vector<unsigned>& group_primes() const { return primes_; }
  unsigned N() const { return n_; }
  Int level(unsigned l) const;  // l^N
  const std::vector<std::uint64_t>& s0() const { return s0_; }
  const std::vector<NamedElem>& s0_units() const { return units_; }
  const std::vector<KummerGenerator>& kummer(unsigned l) const;
  unsigned max_rank() const;

  // Generator of q * s with s an S_0-ideal in the inverse class of q; over
  // Q this is q itself.
  QuadElem s_generator(const PrimeChoice& p) const;
  std::string prime_name(const PrimeChoice& p) const;
  // Residue of u at the prime; throws DomainError when undefined.
  std::uint64_t residue(const QuadElem& u, const PrimeChoice& p) const;
  // Roots to try at q, ascending; {nullopt} over Q, empty when q is inert.
  std::vector<std::optional<std::uint64_t>> places_above(std::uint64_t q) const;

 private:
  FieldData field_;
  std::optional<QuadField> k_;
  std::optional<QuadClassGroup> cl_;
  std::vector<unsigned> primes_;
  unsigned n_;
  std::vector<std::uint64_t> s0_;
  std::vector<NamedElem> units_;
  std::map<unsigned, std::vector<KummerGenerator>> kummer_;
  // Class-group generators of S_0 and the class -> S_0-ideal table.
  std::vector<QuadIdeal> s0_ideals_;
  std::vector<std::vector<long>> class_path_;
};

struct ExceptionalMember {
  unsigned index;  // 1-based
  PrimeChoice prime;
  std::vector<Condition> conditions;
};

struct ExceptionalSet {
  std::vector<unsigned> primes;
  unsigned N = 0;
  std::vector<ExceptionalMember> members;
};

// Over Q the set is empty. Over imaginary quadratic K it has one member per
// index j <= max_l r_l.
ExceptionalSet find_exceptional_set(const ScholzContext& ctx, const std::set<std::uint64_t>& avoid = {},
                                    const ScanOptions& opts = default_scan_options());
ExceptionalSet find_exceptional_set(const FieldData& field, const std::vector<unsigned>& primes, unsigned N,
                                    const std::set<std::uint64_t>& avoid = {},
                                    const ScanOptions& opts = default_scan_options());
std::vector<Condition> exceptional_conditions(const ScholzContext& ctx, unsigned index, const PrimeChoice& p);

struct ScholzConstraints {
  unsigned l;
  unsigned N;
  std::vector<std::uint64_t> s0;  // l and the other prime divisors of |G|
};

struct ConditionReport {
  std::vector<Condition> conditions;
  bool pass() const;
};

// Scholz conditions of an abelian l-extension of Q realized by prime
// conductors.
ConditionReport check_scholz_abelian(const AbelianRealization& real, const ScholzConstraints& c);

struct ScholzAbelianResult {
  AbelianRealization realization;
  ConditionReport report;
  std::vector<std::vector<Condition>> step_conditions;
};

// Conductors chosen in order of the ascending invariant factors, each the
// least prime meeting the Scholz conditions against the earlier ones.
ScholzAbelianResult find_scholz_abelian(const std::vector<Int>& factors, const ScholzConstraints& c,
                                        const ScanOptions& opts = default_scan_options());

// Conditions for the layer-one conductor of factor i given earlier ones.
std::vector<Condition> split_conditions(const ScholzContext& ctx, const std::vector<Int>& factors, std::size_t i,
                                        const std::vector<PrimeChoice>& conductors, const std::vector<PrimeChoice>& t);

struct RepairInput {
  Int kernel;                            // merged cyclic kernel order
  std::vector<Int> layer1_factors;       // with their conductors
  std::vector<PrimeChoice> layer1;
  std::vector<PrimeChoice> ramified;     // every prime ramified so far
  std::vector<PrimeChoice> t;
};

std::vector<Condition> repair_conditions(const ScholzContext& ctx, const RepairInput& in, const PrimeChoice& p);

struct RepairResult {
  PrimeChoice prime;
  std::vector<Condition> conditions;
};

RepairResult frattini_step_prime(const ScholzContext& ctx, const RepairInput& in,
                                 const ScanOptions& opts = default_scan_options());

struct CertificateStep {
  unsigned id = 0;
  unsigned layer = 0;
  unsigned substep = 0;
  std::string justification;  // SplitCase | Existence+RemRam | ScholzRepair | FinalRemRam
  Int kernel;
  std::optional<PrimeChoice> prime;
  std::vector<Condition> conditions;
  bool operator==(const CertificateStep&) const = default;
};

struct ScholzCertificate {
  NilpotentGroup group;
  FieldData field;
  CentralTowerPlan plan;
  unsigned N = 0;
  std::vector<std::uint64_t> s0;
  ExceptionalSet t;
  std::vector<CertificateStep> steps;
  std::vector<std::uint64_t> total_ramified;
  unsigned bound = 0;
  bool fallback = false;
  bool bound_ok = false;
};

ScholzCertificate build_certificate(const NilpotentGroup& g, const FieldData& field,
                                    const ScanOptions& opts = default_scan_options());

// Rebuilds the step list and conditions required by (group, field, chosen
// primes) for comparison against a stored certificate.
std::vector<CertificateStep> required_steps(const ScholzContext& ctx, const CentralTowerPlan& plan,
                                            const std::vector<PrimeChoice>& t,
                                            const std::vector<PrimeChoice>& chosen);

struct VerifyReport {
  bool valid = true;
  std::size_t conditions_replayed = 0;
  std::vector<std::string> problems;
};

VerifyReport verify_certificate(const ScholzCertificate& cert);

struct Restriction {
  unsigned l;
  std::size_t conditions = 0;
  bool conditions_pass = true;
  ConditionReport abelian_report;  // Scholz conditions of the l-part of layer one
  bool pass() const { return conditions_pass && abelian_report.pass(); }
};

Restriction restrict_to_prime(const ScholzCertificate& cert, unsigned l);

}  // namespace minram
