#include "minram/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "minram/certify.hpp"
#include "minram/errors.hpp"
#include "minram/json_io.hpp"
#include "minram/scholz.hpp"

namespace minram {

namespace {

struct UsageError : Error {
  using Error::Error;
};

Json read_json_file(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    buf << in.rdbuf();
  }
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

FieldData parse_field(const std::string& s) {
  if (s.empty() || s == "Q") return FieldData::rationals();
  if (s[0] == '@') return field_from_json(read_json_file(s.substr(1)));
  if (s[0] == '{' || s[0] == '"') {
    try {
      return field_from_json(Json::parse(s));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("--field: ") + e.what());
    }
  }
  try {
    return FieldData::imaginary_quadratic(parse_int(s));
  } catch (const DomainError&) {
    throw;
  } catch (const Error&) {
    throw UsageError("--field expects Q, a negative discriminant, JSON or @file");
  }
}

std::vector<Int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) throw UsageError(what + ": empty entry in \"" + s + "\"");
    try {
      out.push_back(parse_int(item));
    } catch (const Error&) {
      throw UsageError(what + ": bad integer \"" + item + "\"");
    }
  }
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

std::vector<unsigned> to_unsigned(const std::vector<Int>& v, const std::string& what) {
  std::vector<unsigned> out;
  for (const auto& x : v) {
    if (x < 1 || !x.fits_uint_p()) throw UsageError(what + ": entries must be positive");
    out.push_back(static_cast<unsigned>(x.get_ui()));
  }
  return out;
}

std::vector<std::uint64_t> to_u64(const std::vector<Int>& v, const std::string& what) {
  std::vector<std::uint64_t> out;
  for (const auto& x : v) {
    if (x < 1 || !x.fits_ulong_p()) throw UsageError(what + ": entries must be positive");
    out.push_back(x.get_ui());
  }
  return out;
}

Json group_summary(const NilpotentGroup& g) {
  Json j;
  j["order"] = int_to_json(g.order());
  j["primes"] = g.primes();
  j["d"] = g.d();
  j["class"] = g.nilpotency_class();
  j["exponent"] = int_to_json(g.exponent());
  j["N"] = g.is_trivial() ? 0u : g.scholz_exponent();
  j["abelian"] = g.is_abelian();
  return j;
}

Json scholz_json(const ScholzAbelianResult& r, const ScholzConstraints& c) {
  Json j;
  j["l"] = c.l;
  j["N"] = c.N;
  j["s0"] = c.s0;
  j["conductors"] = r.realization.ramified_primes;
  Json steps = Json::array();
  for (const auto& cs : r.step_conditions) {
    ConditionReport rep{cs};
    steps.push_back(condition_report_to_json(rep));
  }
  j["step_conditions"] = steps;
  j["report"] = condition_report_to_json(r.report);
  return j;
}

struct Options {
  std::uint64_t limit = 0;
  unsigned jobs = 1;
  std::string field = "Q";
  std::string group_file;
  std::string factors;
  std::vector<unsigned> scholz;  // l N
  std::string s0;
  std::string primes;
  unsigned n = 1;
  unsigned l = 0;
  std::vector<std::string> polys;
  std::vector<std::string> cyclic;
  std::string expected;
  std::string realization_file;
  std::uint64_t frobenius = 0;
  std::string cert_file;
};

int cmd_bound(const Options& o, Json& inputs, Json& payload) {
  inputs["group"] = o.group_file;
  inputs["field"] = o.field;
  NilpotentGroup g = nilpotent_from_json(read_json_file(o.group_file));
  FieldData f = parse_field(o.field);
  payload["group"] = group_summary(g);
  payload["field"] = field_to_json(f).at("field");
  try {
    BoundReport br = paper_bound_report(g, f);
    payload["paper_bound"] = br.value;
    payload["fallback"] = br.fallback;
  } catch (const PreconditionError& e) {
    payload["paper_bound"] = nullptr;
    payload["hypotheses"] = e.what();
  }
  payload["boston_bound"] = boston_bound(g);
  payload["plan"] = plan_to_json(central_tower_plan(g));
  Json series = Json::object();
  for (unsigned l : g.primes()) series[std::to_string(l)] = series_to_json(g.report(l));
  payload["series"] = series;
  return kExitOk;
}

int cmd_realize(const Options& o, const ScanOptions& scan, Json& inputs, Json& payload) {
  inputs["factors"] = o.factors;
  std::vector<Int> orders = parse_int_list(o.factors, "factors");
  AbelianRealization real;
  bool ok = true;
  if (!o.scholz.empty()) {
    if (o.scholz.size() != 2) throw UsageError("--scholz takes l and N");
    ScholzConstraints c{o.scholz[0], o.scholz[1], {}};
    if (!o.s0.empty()) c.s0 = to_u64(parse_int_list(o.s0, "--s0"), "--s0");
    inputs["scholz"] = o.scholz;
    inputs["s0"] = c.s0;
    auto r = find_scholz_abelian(invariant_factors(orders), c, scan);
    real = r.realization;
    payload["scholz"] = scholz_json(r, c);
    ok = r.report.pass();
  } else {
    real = realize_abelian(orders, scan);
  }
  RamificationReport rep = verify_realization(real);
  payload["realization"] = realization_to_json(real);
  payload["ramification"] = ramification_to_json(rep);
  return ok && rep.verdict ? kExitOk : kExitNegative;
}

int cmd_certificate(const Options& o, const ScanOptions& scan, Json& inputs, Json& payload) {
  inputs["group"] = o.group_file;
  inputs["field"] = o.field;
  NilpotentGroup g = nilpotent_from_json(read_json_file(o.group_file));
  FieldData f = parse_field(o.field);
  ScholzCertificate cert = build_certificate(g, f, scan);
  payload = certificate_to_json(cert);
  return cert.bound_ok ? kExitOk : kExitNegative;
}

int cmd_exceptional(const Options& o, const ScanOptions& scan, Json& inputs, Json& payload) {
  inputs["field"] = o.field;
  inputs["primes"] = o.primes;
  inputs["N"] = o.n;
  FieldData f = parse_field(o.field);
  auto primes = to_unsigned(parse_int_list(o.primes, "--primes"), "--primes");
  payload = exceptional_to_json(find_exceptional_set(f, primes, o.n, {}, scan));
  return kExitOk;
}

int cmd_scholz(const Options& o, const ScanOptions& scan, Json& inputs, Json& payload) {
  inputs["factors"] = o.factors;
  inputs["l"] = o.l;
  inputs["N"] = o.n;
  ScholzConstraints c{o.l, o.n, {}};
  if (!o.s0.empty()) c.s0 = to_u64(parse_int_list(o.s0, "--s0"), "--s0");
  inputs["s0"] = c.s0;
  auto r = find_scholz_abelian(parse_int_list(o.factors, "factors"), c, scan);
  payload = scholz_json(r, c);
  return r.report.pass() ? kExitOk : kExitNegative;
}

ZPoly parse_poly(const std::string& s) {
  std::string t = s;
  if (!t.empty() && t.front() == '[') {
    try {
      return poly_from_json(Json::parse(t));
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError(std::string("--poly: ") + e.what());
    }
  }
  ZPoly f(parse_int_list(t, "--poly"));
  f.trim();
  return f;
}

int cmd_certify(const Options& o, Json& inputs, Json& payload) {
  RamificationReport rep;
  std::vector<CyclicFieldSpec> specs;
  if (!o.polys.empty()) {
    if (!o.cyclic.empty() || !o.realization_file.empty())
      throw UsageError("certify takes either --poly or built fields, not both");
    inputs["polys"] = o.polys;
    inputs["expected"] = o.expected;
    std::vector<ZPoly> polys;
    for (const auto& p : o.polys) polys.push_back(parse_poly(p));
    std::vector<Int> expected = o.expected.empty() ? std::vector<Int>{} : parse_int_list(o.expected, "--expected");
    rep = certify_polynomials(polys, expected);
  } else {
    std::vector<Int> factors;
    std::vector<std::uint64_t> conductors;
    std::optional<std::vector<std::uint64_t>> claimed;
    std::vector<Json> stored_polys;
    if (!o.realization_file.empty()) {
      inputs["realization"] = o.realization_file;
      Json j = read_json_file(o.realization_file);
      if (j.contains("payload")) j = j.at("payload");
      if (j.contains("realization")) j = j.at("realization");
      for (const auto& b : j.at("factors")) factors.push_back(int_from_json(b));
      for (const auto& fl : j.at("fields")) {
        conductors.push_back(int_from_json(fl.at("conductor")).get_ui());
        stored_polys.push_back(fl.contains("defining_poly") ? fl.at("defining_poly") : Json(nullptr));
      }
      if (j.contains("ramified_primes")) {
        claimed.emplace();
        for (const auto& q : j.at("ramified_primes")) claimed->push_back(int_from_json(q).get_ui());
      }
    }
    for (const auto& c : o.cyclic) {
      auto pos = c.find(':');
      if (pos == std::string::npos) throw UsageError("--cyclic expects q:b");
      conductors.push_back(to_u64(parse_int_list(c.substr(0, pos), "--cyclic"), "--cyclic")[0]);
      factors.push_back(parse_int_list(c.substr(pos + 1), "--cyclic")[0]);
      stored_polys.push_back(nullptr);
    }
    if (!o.cyclic.empty()) inputs["cyclic"] = o.cyclic;
    if (factors.empty()) throw UsageError("certify needs --poly, --cyclic or a realization file");
    AbelianRealization real = realize_with_conductors(factors, conductors);
    if (claimed) real.ramified_primes = *claimed;
    rep = verify_realization(real);
    for (std::size_t i = 0; i < stored_polys.size(); ++i)
      if (!stored_polys[i].is_null() && poly_from_json(stored_polys[i]) != real.specs[i].defining_poly) {
        rep.problems.push_back("stored polynomial of conductor " + std::to_string(conductors[i]) +
                               " differs from the period polynomial");
        rep.verdict = false;
      }
    specs = real.specs;
  }
  if (o.frobenius) {
    inputs["frobenius"] = o.frobenius;
    if (specs.empty()) throw UsageError("--frobenius applies to built cyclic fields");
    for (const auto& s : specs) {
      auto fr = frobenius_statistics(s, o.frobenius);
      if (!fr.mismatches.empty()) {
        rep.problems.push_back("Frobenius mismatches for conductor " + std::to_string(s.conductor));
        rep.verdict = false;
      }
      rep.frobenius.push_back(std::move(fr));
    }
  }
  payload = ramification_to_json(rep);
  return rep.verdict ? kExitOk : kExitNegative;
}

int cmd_verify(const Options& o, Json& inputs, Json& payload) {
  inputs["certificate"] = o.cert_file;
  Json j = read_json_file(o.cert_file);
  if (j.contains("payload")) j = j.at("payload");
  ScholzCertificate cert = certificate_from_json(j);
  VerifyReport rep = verify_certificate(cert);
  payload["verify"] = verify_to_json(rep);
  Json rs = Json::array();
  if (rep.valid)
    for (unsigned l : cert.group.primes()) rs.push_back(restriction_to_json(restrict_to_prime(cert, l)));
  payload["restrictions"] = rs;
  return rep.valid ? kExitOk : kExitNegative;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"minimal-ramification prime systems and certificates", "minram"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  std::uint64_t limit = 0;
  app.add_option("--limit", limit, "largest prime examined by any scan (default 10^7 or MINRAM_LIMIT)");
  app.add_option("--jobs", o.jobs, "worker threads for prime scans")->check(CLI::Range(1u, 256u));

  auto* bound = app.add_subcommand("bound", "ramification bounds, tower plan and series of a group");
  bound->add_option("group", o.group_file, "group JSON file (- for stdin)")->required();
  bound->add_option("--field", o.field, "Q, a negative fundamental discriminant, JSON or @file");

  auto* realize = app.add_subcommand("realize-abelian", "realize an abelian group over Q with d ramified primes");
  realize->add_option("factors", o.factors, "cyclic factor orders, comma separated")->required();
  realize->add_option("--scholz", o.scholz, "l N: choose conductors meeting the Scholz conditions")->expected(2);
  realize->add_option("--s0", o.s0, "further primes of S_0 for --scholz, comma separated");

  auto* certificate = app.add_subcommand("certificate", "search and certify the prime system of a nilpotent group");
  certificate->add_option("group", o.group_file, "group JSON file (- for stdin)")->required();
  certificate->add_option("--field", o.field, "Q, a negative fundamental discriminant, JSON or @file");

  auto* exceptional = app.add_subcommand("exceptional-set", "l^N-exceptional primes of the base field");
  exceptional->add_option("--field", o.field, "Q, a negative fundamental discriminant, JSON or @file");
  exceptional->add_option("--primes", o.primes, "group primes, comma separated")->required();
  exceptional->add_option("--N", o.n, "exponent N")->required();

  auto* scholz = app.add_subcommand("scholz-search", "Scholz conductors of an abelian l-group over Q");
  scholz->add_option("factors", o.factors, "cyclic factor orders (powers of l), comma separated")->required();
  scholz->add_option("--l", o.l, "the prime l")->required();
  scholz->add_option("--N", o.n, "exponent N")->required();
  scholz->add_option("--s0", o.s0, "further primes of S_0, comma separated");

  auto* certify = app.add_subcommand("certify", "ramified primes of explicit fields");
  certify->add_option("realization", o.realization_file, "realization JSON (output of realize-abelian)");
  certify->add_option("--poly", o.polys, "monic polynomial, coefficients constant term first");
  certify->add_option("--expected", o.expected, "expected ramified primes for --poly");
  certify->add_option("--cyclic", o.cyclic, "built cyclic field q:b");
  certify->add_option("--frobenius", o.frobenius, "compare Frobenius with the character for p < bound");

  auto* verify = app.add_subcommand("verify", "replay a certificate");
  verify->add_option("certificate", o.cert_file, "certificate JSON file (- for stdin)")->required();

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  ScanOptions scan = default_scan_options();
  if (limit) scan.limit = limit;
  scan.jobs = o.jobs;

  Json result;
  result["schema"] = kSchema;
  const std::string name = app.get_subcommands().front()->get_name();
  result["command"] = name;
  Json inputs = Json::object();
  Json payload = Json::object();
  inputs["limit"] = scan.limit;
  auto t0 = std::chrono::steady_clock::now();
  int code = kExitOk;
  auto fail = [&](const char* type, const std::string& msg, int c) {
    err << "minram " << name << ": " << msg << "\n";
    result["inputs"] = inputs;
    result["error"] = Json{{"type", type}, {"message", msg}};
    if (!payload.empty()) result["partial"] = payload;
    code = c;
  };
  try {
    if (name == "bound") code = cmd_bound(o, inputs, payload);
    else if (name == "realize-abelian") code = cmd_realize(o, scan, inputs, payload);
    else if (name == "certificate") code = cmd_certificate(o, scan, inputs, payload);
    else if (name == "exceptional-set") code = cmd_exceptional(o, scan, inputs, payload);
    else if (name == "scholz-search") code = cmd_scholz(o, scan, inputs, payload);
    else if (name == "certify") code = cmd_certify(o, inputs, payload);
    else code = cmd_verify(o, inputs, payload);
    result["inputs"] = inputs;
    result["payload"] = payload;
  } catch (const UsageError& e) {
    fail("usage", e.what(), kExitUsage);
  } catch (const ParseError& e) {
    fail("parse", e.what(), kExitUsage);
  } catch (const SearchLimitError& e) {
    fail("search_limit", e.what(), kExitSearchLimit);
  } catch (const PreconditionError& e) {
    fail("precondition", e.what(), kExitPrecondition);
  } catch (const PresentationError& e) {
    fail("presentation", e.what(), kExitPrecondition);
  } catch (const DomainError& e) {
    fail("domain", e.what(), kExitPrecondition);
  } catch (const nlohmann::json::exception& e) {
    fail("parse", e.what(), kExitUsage);
  } catch (const std::exception& e) {
    fail("internal", e.what(), kExitInternal);
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  result["elapsed_ms"] = ms;
  out << result.dump(2) << "\n";
  return code;
}

}  // namespace minram
