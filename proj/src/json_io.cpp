#include "minram/json_io.hpp"

#include <limits>

#include "minram/errors.hpp"

namespace minram {

namespace {

const Json& at(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T get(const Json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError("bad value for " + what + ": " + j.dump());
  }
}

unsigned get_unsigned(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0 || j.get<long long>() > std::numeric_limits<unsigned>::max())
    throw ParseError("expected a non-negative integer for " + what + ", got " + j.dump());
  return j.get<unsigned>();
}

std::uint64_t get_u64(const Json& j, const std::string& what) {
  Int v = int_from_json(j);
  if (v < 0 || !v.fits_ulong_p()) throw ParseError("value out of range for " + what);
  return v.get_ui();
}

const Json& array(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError("expected an array for " + what);
  return j;
}

Json ints(const std::vector<Int>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(int_to_json(x));
  return a;
}

std::vector<Int> ints_from(const Json& j, const std::string& what) {
  std::vector<Int> v;
  for (const auto& x : array(j, what)) v.push_back(int_from_json(x));
  return v;
}

Json u64s(const std::vector<std::uint64_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

std::vector<std::uint64_t> u64s_from(const Json& j, const std::string& what) {
  std::vector<std::uint64_t> v;
  for (const auto& x : array(j, what)) v.push_back(get_u64(x, what));
  return v;
}

const char* kind_name(StepKind k) { return k == StepKind::Split ? "split" : "frattini"; }

}  // namespace

Json int_to_json(const Int& n) {
  if (n.fits_slong_p()) return Json(static_cast<long long>(n.get_si()));
  if (n > 0 && n.fits_ulong_p()) return Json(static_cast<unsigned long long>(n.get_ui()));
  return Json(to_string(n));
}

Int int_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Int(static_cast<unsigned long>(j.get<unsigned long long>()));
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      return parse_int(j.get<std::string>());
    } catch (const Error&) {
      throw ParseError("bad integer string " + j.dump());
    }
  }
  throw ParseError("expected an integer, got " + j.dump());
}

Json word_to_json(const Word& w) {
  Json a = Json::array();
  for (const auto& x : w) a.push_back(Json::array({x.gen + 1, x.exp}));
  return a;
}

Word word_from_json(const Json& j) {
  Word w;
  for (const auto& x : array(j, "word")) {
    if (!x.is_array() || x.size() != 2) throw ParseError("word letters are [generator, exponent] pairs");
    unsigned g = get_unsigned(x[0], "generator");
    if (g == 0) throw ParseError("generators are numbered from 1");
    w.push_back({g - 1, get<long>(x[1], "exponent")});
  }
  return w;
}

Json group_to_json(const PcGroup& g) {
  Json j;
  j["prime"] = g.prime();
  j["gens"] = g.num_gens();
  Json pw = Json::array();
  for (const auto& w : g.powers()) pw.push_back(word_to_json(w));
  j["powers"] = pw;
  Json cm = Json::array();
  for (const auto& [ji, w] : g.commutators())
    if (!w.empty()) cm.push_back(Json::array({ji.first + 1, ji.second + 1, word_to_json(w)}));
  j["commutators"] = cm;
  return j;
}

PcGroup group_from_json(const Json& j) {
  unsigned l = get_unsigned(at(j, "prime"), "prime");
  unsigned m = get_unsigned(at(j, "gens"), "gens");
  std::vector<Word> powers(m);
  if (j.contains("powers")) {
    const Json& p = array(j.at("powers"), "powers");
    if (!p.empty() && p.size() != m) throw ParseError("\"powers\" must list one word per generator");
    for (std::size_t i = 0; i < p.size(); ++i) powers[i] = word_from_json(p[i]);
  }
  std::map<std::pair<unsigned, unsigned>, Word> comms;
  if (j.contains("commutators"))
    for (const auto& c : array(j.at("commutators"), "commutators")) {
      if (!c.is_array() || c.size() != 3) throw ParseError("commutators are [j, i, word] triples");
      unsigned a = get_unsigned(c[0], "commutator index"), b = get_unsigned(c[1], "commutator index");
      if (a == 0 || b == 0) throw ParseError("generators are numbered from 1");
      if (!comms.emplace(std::make_pair(a - 1, b - 1), word_from_json(c[2])).second)
        throw ParseError("duplicate commutator relation");
    }
  return PcGroup(l, m, std::move(powers), std::move(comms));
}

Json nilpotent_to_json(const NilpotentGroup& g) {
  Json s = Json::array();
  for (const auto& [l, p] : g.sylows()) s.push_back(group_to_json(p));
  Json j;
  j["sylows"] = s;
  return j;
}

NilpotentGroup nilpotent_from_json(const Json& j) {
  if (j.is_object() && j.contains("sylows")) {
    std::vector<PcGroup> s;
    for (const auto& x : array(j.at("sylows"), "sylows")) s.push_back(group_from_json(x));
    return NilpotentGroup(std::move(s));
  }
  PcGroup g = group_from_json(j);
  if (g.num_gens() == 0) return NilpotentGroup(std::vector<PcGroup>{});
  return NilpotentGroup(std::vector<PcGroup>{g});
}

Json field_to_json(const FieldData& f) {
  Json inner;
  switch (f.kind) {
    case FieldData::Kind::Rational: inner = "Q"; break;
    case FieldData::Kind::ImaginaryQuadratic: inner = Json{{"quad_disc", int_to_json(f.disc)}}; break;
    case FieldData::Kind::Custom: {
      Json r = Json::object();
      for (const auto& [l, v] : f.l_ranks) r[std::to_string(l)] = v;
      Json c;
      c["s"] = f.unit_rank;
      c["r"] = r;
      c["h"] = int_to_json(f.class_number);
      c["mu"] = f.torsion;
      Json l2 = Json::array();
      for (unsigned l : f.l_squared) l2.push_back(l);
      c["l2"] = l2;
      inner = Json{{"custom", c}};
      break;
    }
  }
  return Json{{"field", inner}};
}

FieldData field_from_json(const Json& j) {
  const Json& v = j.is_object() && j.contains("field") ? j.at("field") : j;
  if (v.is_string()) {
    if (v.get<std::string>() == "Q") return FieldData::rationals();
    throw ParseError("unknown field " + v.dump());
  }
  if (v.is_object() && v.contains("quad_disc")) return FieldData::imaginary_quadratic(int_from_json(v.at("quad_disc")));
  if (v.is_object() && v.contains("custom")) {
    const Json& c = v.at("custom");
    unsigned s = get_unsigned(at(c, "s"), "s");
    std::map<unsigned, unsigned> r;
    if (c.contains("r")) {
      if (!c.at("r").is_object()) throw ParseError("\"r\" maps primes to ranks");
      for (const auto& [k, x] : c.at("r").items()) {
        unsigned l;
        try {
          l = static_cast<unsigned>(std::stoul(k));
        } catch (const std::exception&) {
          throw ParseError("bad prime key " + k);
        }
        r[l] = get_unsigned(x, "rank");
      }
    }
    Int h = int_from_json(at(c, "h"));
    unsigned mu = c.contains("mu") ? get_unsigned(c.at("mu"), "mu") : 2;
    std::set<unsigned> l2;
    if (c.contains("l2"))
      for (const auto& x : array(c.at("l2"), "l2")) l2.insert(get_unsigned(x, "l2"));
    return FieldData::custom(s, std::move(r), h, mu, std::move(l2));
  }
  throw ParseError("field must be \"Q\", {\"quad_disc\": D} or {\"custom\": {...}}");
}

Json series_to_json(const SeriesReport& r) {
  Json j;
  j["lcs_orders"] = ints(r.lcs_orders);
  j["quotient_ranks"] = r.quotient_ranks;
  Json qf = Json::array();
  for (const auto& f : r.quotient_factors) qf.push_back(ints(f));
  j["quotient_factors"] = qf;
  j["class"] = r.nilpotency_class;
  j["d"] = r.d;
  j["exponent"] = int_to_json(r.exponent);
  return j;
}

Json plan_to_json(const CentralTowerPlan& p) {
  Json steps = Json::array();
  for (const auto& s : p.steps) {
    Json x;
    x["layer"] = s.layer;
    x["kind"] = kind_name(s.kind);
    x["kernel_cyclic_orders"] = ints(s.kernel_cyclic_orders);
    x["costs_extra_prime"] = s.costs_extra_prime;
    steps.push_back(x);
  }
  Json j;
  j["steps"] = steps;
  j["predicted_prime_count"] = p.predicted_prime_count;
  return j;
}

CentralTowerPlan plan_from_json(const Json& j) {
  CentralTowerPlan p;
  for (const auto& x : array(at(j, "steps"), "steps")) {
    TowerLayer t;
    t.layer = get_unsigned(at(x, "layer"), "layer");
    std::string k = get<std::string>(at(x, "kind"), "kind");
    if (k == "split") t.kind = StepKind::Split;
    else if (k == "frattini") t.kind = StepKind::Frattini;
    else throw ParseError("unknown step kind " + k);
    t.kernel_cyclic_orders = ints_from(at(x, "kernel_cyclic_orders"), "kernel_cyclic_orders");
    t.costs_extra_prime = get<bool>(at(x, "costs_extra_prime"), "costs_extra_prime");
    p.steps.push_back(std::move(t));
  }
  p.predicted_prime_count = get_unsigned(at(j, "predicted_prime_count"), "predicted_prime_count");
  return p;
}

Json poly_to_json(const ZPoly& f) { return ints(f.c); }

ZPoly poly_from_json(const Json& j) {
  ZPoly f(ints_from(j, "polynomial"));
  f.trim();
  return f;
}

Json realization_to_json(const AbelianRealization& r) {
  Json fields = Json::array();
  for (const auto& s : r.specs) {
    Json x;
    x["conductor"] = s.conductor;
    x["degree"] = s.degree;
    x["generator"] = s.character.generator();
    x["defining_poly"] = poly_to_json(s.defining_poly);
    fields.push_back(x);
  }
  Json j;
  j["factors"] = ints(r.factors);
  j["fields"] = fields;
  j["ramified_primes"] = u64s(r.ramified_primes);
  return j;
}

Json field_report_to_json(const FieldReport& r) {
  Json j;
  j["polynomial"] = poly_to_json(r.polynomial);
  j["poly_disc"] = int_to_json(r.poly_disc);
  j["field_disc"] = r.field_disc ? int_to_json(*r.field_disc) : Json(nullptr);
  j["irreducible"] = r.irreducible;
  Json ps = Json::array();
  for (const auto& v : r.primes) {
    Json x;
    x["p"] = int_to_json(v.p);
    x["disc_valuation"] = v.disc_valuation;
    x["repeated_factor"] = v.repeated_factor;
    x["index_degree"] = v.index_degree;
    x["status"] = to_string(v.status);
    x["method"] = v.method;
    ps.push_back(x);
  }
  j["primes"] = ps;
  j["ramified_primes"] = ints(r.ramified);
  j["inconclusive"] = ints(r.inconclusive);
  return j;
}

Json frobenius_to_json(const FrobeniusReport& r) {
  Json j;
  j["conductor"] = r.conductor;
  j["degree"] = r.degree;
  j["bound"] = r.bound;
  j["primes_tested"] = r.primes_tested;
  j["skipped"] = u64s(r.skipped);
  j["mismatches"] = u64s(r.mismatches);
  j["split_count"] = r.split_count;
  j["split_fraction"] = r.split_fraction;
  Json ct = Json::object();
  for (const auto& [k, v] : r.cycle_types) ct[k] = v;
  j["cycle_types"] = ct;
  return j;
}

Json ramification_to_json(const RamificationReport& r) {
  Json j;
  j["schema"] = kSchema;
  Json fs = Json::array();
  for (const auto& f : r.fields) fs.push_back(field_report_to_json(f));
  j["fields"] = fs;
  j["ramified_primes"] = ints(r.ramified_primes);
  j["expected"] = ints(r.expected);
  j["verdict"] = r.verdict;
  j["problems"] = r.problems;
  if (!r.frobenius.empty()) {
    Json fr = Json::array();
    for (const auto& x : r.frobenius) fr.push_back(frobenius_to_json(x));
    j["frobenius_sample"] = fr;
  }
  return j;
}

Json condition_to_json(const Condition& c) {
  Json j;
  j["kind"] = c.kind;
  j["l"] = c.l;
  j["role"] = c.role;
  j["args"] = ints(c.args);
  j["holds"] = c.holds;
  return j;
}

Condition condition_from_json(const Json& j) {
  Condition c;
  c.kind = get<std::string>(at(j, "kind"), "kind");
  c.l = get_unsigned(at(j, "l"), "l");
  c.role = get<std::string>(at(j, "role"), "role");
  c.args = ints_from(at(j, "args"), "args");
  c.holds = get<bool>(at(j, "holds"), "holds");
  return c;
}

Json condition_report_to_json(const ConditionReport& r) {
  Json cs = Json::array();
  for (const auto& c : r.conditions) cs.push_back(condition_to_json(c));
  Json j;
  j["conditions"] = cs;
  j["pass"] = r.pass();
  return j;
}

Json prime_to_json(const PrimeChoice& p) {
  Json j;
  j["q"] = p.q;
  j["root"] = p.root ? Json(*p.root) : Json(nullptr);
  return j;
}

PrimeChoice prime_from_json(const Json& j) {
  PrimeChoice p;
  p.q = get_u64(at(j, "q"), "q");
  if (j.contains("root") && !j.at("root").is_null()) p.root = get_u64(j.at("root"), "root");
  return p;
}

namespace {

Json conditions_json(const std::vector<Condition>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) a.push_back(condition_to_json(c));
  return a;
}

std::vector<Condition> conditions_from(const Json& j) {
  std::vector<Condition> v;
  for (const auto& c : array(j, "conditions")) v.push_back(condition_from_json(c));
  return v;
}

}  // namespace

Json exceptional_to_json(const ExceptionalSet& t) {
  Json j;
  j["primes"] = t.primes;
  j["N"] = t.N;
  Json ms = Json::array();
  for (const auto& m : t.members) {
    Json x;
    x["index"] = m.index;
    x["prime"] = prime_to_json(m.prime);
    x["conditions"] = conditions_json(m.conditions);
    ms.push_back(x);
  }
  j["members"] = ms;
  return j;
}

ExceptionalSet exceptional_from_json(const Json& j) {
  ExceptionalSet t;
  for (const auto& x : array(at(j, "primes"), "primes")) t.primes.push_back(get_unsigned(x, "prime"));
  t.N = get_unsigned(at(j, "N"), "N");
  for (const auto& x : array(at(j, "members"), "members"))
    t.members.push_back({get_unsigned(at(x, "index"), "index"), prime_from_json(at(x, "prime")),
                         conditions_from(at(x, "conditions"))});
  return t;
}

Json certificate_to_json(const ScholzCertificate& c) {
  Json j;
  j["schema"] = kSchema;
  j["group"] = nilpotent_to_json(c.group);
  j["field"] = field_to_json(c.field).at("field");
  j["plan"] = plan_to_json(c.plan);
  j["N"] = c.N;
  j["S0"] = u64s(c.s0);
  j["T"] = exceptional_to_json(c.t);
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    Json x;
    x["id"] = s.id;
    x["layer"] = s.layer;
    x["substep"] = s.substep;
    x["justification"] = s.justification;
    x["kernel"] = int_to_json(s.kernel);
    x["prime"] = s.prime ? prime_to_json(*s.prime) : Json(nullptr);
    x["conditions"] = conditions_json(s.conditions);
    steps.push_back(x);
  }
  j["steps"] = steps;
  j["total_ramified"] = u64s(c.total_ramified);
  j["bound"] = c.bound;
  j["fallback"] = c.fallback;
  j["bound_ok"] = c.bound_ok;
  return j;
}

ScholzCertificate certificate_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("schema") || j.at("schema") != kSchema)
    throw ParseError(std::string("certificate schema must be \"") + kSchema + "\"");
  ScholzCertificate c;
  c.group = nilpotent_from_json(at(j, "group"));
  c.field = field_from_json(at(j, "field"));
  c.plan = plan_from_json(at(j, "plan"));
  c.N = get_unsigned(at(j, "N"), "N");
  c.s0 = u64s_from(at(j, "S0"), "S0");
  c.t = exceptional_from_json(at(j, "T"));
  for (const auto& x : array(at(j, "steps"), "steps")) {
    CertificateStep s;
    s.id = get_unsigned(at(x, "id"), "id");
    s.layer = get_unsigned(at(x, "layer"), "layer");
    s.substep = get_unsigned(at(x, "substep"), "substep");
    s.justification = get<std::string>(at(x, "justification"), "justification");
    s.kernel = int_from_json(at(x, "kernel"));
    if (!at(x, "prime").is_null()) s.prime = prime_from_json(x.at("prime"));
    s.conditions = conditions_from(at(x, "conditions"));
    c.steps.push_back(std::move(s));
  }
  c.total_ramified = u64s_from(at(j, "total_ramified"), "total_ramified");
  c.bound = get_unsigned(at(j, "bound"), "bound");
  c.fallback = get<bool>(at(j, "fallback"), "fallback");
  c.bound_ok = get<bool>(at(j, "bound_ok"), "bound_ok");
  return c;
}

Json verify_to_json(const VerifyReport& r) {
  Json j;
  j["valid"] = r.valid;
  j["conditions_replayed"] = r.conditions_replayed;
  j["problems"] = r.problems;
  return j;
}

Json restriction_to_json(const Restriction& r) {
  Json j;
  j["l"] = r.l;
  j["conditions"] = r.conditions;
  j["conditions_pass"] = r.conditions_pass;
  j["abelian_report"] = condition_report_to_json(r.abelian_report);
  j["pass"] = r.pass();
  return j;
}

}  // namespace minram
