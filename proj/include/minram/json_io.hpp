#pragma once

// JSON forms of the library types. Integers are JSON numbers when they fit
// in 64 bits and decimal strings otherwise; both are accepted on input.
// Generators are 1-based. Malformed input raises ParseError.

#include <json.hpp>

#include "minram/certify.hpp"
#include "minram/cyclotomic.hpp"
#include "minram/field_data.hpp"
#include "minram/group.hpp"
#include "minram/scholz.hpp"

namespace minram {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "minram/1";

Json int_to_json(const Int& n);
Int int_from_json(const Json& j);

// Words are lists of [generator, exponent] pairs.
Json word_to_json(const Word& w);
Word word_from_json(const Json& j);

// {"prime", "gens", "powers", "commutators": [[j, i, word], ...]}
Json group_to_json(const PcGroup& g);
PcGroup group_from_json(const Json& j);
// A single pc-group or {"sylows": [pc-group, ...]}.
Json nilpotent_to_json(const NilpotentGroup& g);
NilpotentGroup nilpotent_from_json(const Json& j);

// {"field": "Q" | {"quad_disc": D} | {"custom": {"s", "r", "h", "mu", "l2"}}};
// the bare inner value is accepted as well.
Json field_to_json(const FieldData& f);
FieldData field_from_json(const Json& j);

Json series_to_json(const SeriesReport& r);
Json plan_to_json(const CentralTowerPlan& p);
CentralTowerPlan plan_from_json(const Json& j);

Json poly_to_json(const ZPoly& f);  // coefficients, constant term first
ZPoly poly_from_json(const Json& j);

Json realization_to_json(const AbelianRealization& r);
Json field_report_to_json(const FieldReport& r);
Json frobenius_to_json(const FrobeniusReport& r);
Json ramification_to_json(const RamificationReport& r);

Json condition_to_json(const Condition& c);
Condition condition_from_json(const Json& j);
Json condition_report_to_json(const ConditionReport& r);
Json prime_to_json(const PrimeChoice& p);
PrimeChoice prime_from_json(const Json& j);
Json exceptional_to_json(const ExceptionalSet& t);
ExceptionalSet exceptional_from_json(const Json& j);

Json certificate_to_json(const ScholzCertificate& c);
ScholzCertificate certificate_from_json(const Json& j);
Json verify_to_json(const VerifyReport& r);
Json restriction_to_json(const Restriction& r);

}  // namespace minram
