#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "minram/cli.hpp"
#include "minram/errors.hpp"
#include "support.hpp"

using namespace minram;
using minram::test::data_path;
using minram::test::load_group;
using minram::test::load_json;

namespace {

struct Run {
  int code;
  Json out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "minram");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  Json j;
  try {
    j = Json::parse(out.str());
  } catch (...) {
    j = Json();
  }
  return {code, j, err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("minram_test_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("integers in JSON") {
  CHECK(int_to_json(Int(5)) == Json(5));
  Int big = Int(1) << 80;
  CHECK(int_to_json(big).is_string());
  CHECK(int_from_json(int_to_json(big)) == big);
  CHECK(int_from_json(Json("-12")) == -12);
  CHECK_THROWS_AS(int_from_json(Json("x")), ParseError);
  CHECK_THROWS_AS(int_from_json(Json(1.5)), ParseError);
}

TEST_CASE("group JSON round trip") {
  for (const char* name : {"H27", "M27", "Z3wrZ3", "UT4_F3", "Z27", "Free2_rank3"}) {
    Json j = load_json(std::string("groups/") + name + ".json");
    PcGroup g = group_from_json(j);
    Json back = group_to_json(g);
    PcGroup g2 = group_from_json(back);
    CHECK(group_to_json(g2) == back);
    CHECK(g2.order() == g.order());
  }
  NilpotentGroup n = load_group("H27xZ5");
  CHECK(nilpotent_from_json(nilpotent_to_json(n)).order() == 135);
  CHECK_THROWS_AS(group_from_json(Json::parse(R"({"prime": 3})")), ParseError);
  CHECK_THROWS_AS(group_from_json(Json::parse(R"({"prime": 3, "gens": 1, "powers": [[[0, 1]]], "commutators": []})")),
                  Error);
}

TEST_CASE("field JSON") {
  CHECK(field_from_json(Json("Q")).is_rational());
  FieldData k = field_from_json(Json::parse(R"({"field": {"quad_disc": -23}})"));
  CHECK(k.class_number == 3);
  CHECK(field_from_json(field_to_json(k)).disc == -23);
  FieldData c = field_from_json(Json::parse(R"({"custom": {"s": 2, "r": {"3": 1}, "h": 3, "mu": 2, "l2": [3]}})"));
  CHECK(c.unit_rank == 2);
  CHECK(c.l_rank(3) == 1);
  CHECK(c.has_l_squared_class(3));
  CHECK(field_from_json(field_to_json(c)).l_rank(3) == 1);
}

TEST_CASE("certificate JSON round trip") {
  for (const auto& f : {FieldData::rationals(), FieldData::imaginary_quadratic(Int(-23))}) {
    auto cert = build_certificate(load_group("H27"), f);
    Json j = certificate_to_json(cert);
    auto back = certificate_from_json(j);
    CHECK(certificate_to_json(back) == j);
    CHECK(back.steps == cert.steps);
    CHECK(back.t.members.size() == cert.t.members.size());
    CHECK(verify_certificate(back).valid);
    CHECK(j.at("schema") == kSchema);
  }
  Condition c{"power_residue", 3, "r", {Int(1), Int(1), Int(3), Int(13), Int(5)}, false};
  CHECK(condition_from_json(condition_to_json(c)) == c);
  PrimeChoice p{151, 109};
  CHECK(prime_from_json(prime_to_json(p)) == p);
  PrimeChoice q{61, std::nullopt};
  CHECK(prime_from_json(prime_to_json(q)) == q);
}

TEST_CASE("plan and polynomial JSON") {
  auto plan = central_tower_plan(load_group("UT4_F3"));
  auto back = plan_from_json(plan_to_json(plan));
  CHECK(back.predicted_prime_count == plan.predicted_prime_count);
  CHECK(back.steps.size() == plan.steps.size());
  ZPoly f = ZPoly::from_ints({-1, -2, 1, 1});
  CHECK(poly_from_json(poly_to_json(f)) == f);
}

TEST_CASE("bound command") {
  auto r = run({"bound", data_path("groups/H27.json")});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.at("schema") == "minram/1");
  CHECK(r.out.at("command") == "bound");
  CHECK(r.out.at("payload").at("paper_bound") == 2);
  CHECK(r.out.at("payload").at("boston_bound") == 2);
  auto k = run({"bound", data_path("groups/H27.json"), "--field=-23"});
  CHECK(k.out.at("payload").at("paper_bound") == 3);
  auto js = run({"bound", data_path("groups/H27.json"), "--field", R"({"quad_disc": -23})"});
  CHECK(js.out.at("payload").at("paper_bound") == 3);
  std::string ff = temp_file("field.json", R"({"field": {"custom": {"s": 1, "r": {"3": 0}, "h": 1}}})");
  auto at = run({"bound", data_path("groups/H27.json"), "--field", "@" + ff});
  CHECK(at.out.at("payload").at("paper_bound") == 3);
  auto clash = run({"bound", data_path("groups/H27.json"), "--field=-3"});
  CHECK(clash.code == kExitOk);
  CHECK(clash.out.at("payload").at("paper_bound").is_null());
}

TEST_CASE("realize and certify commands") {
  auto r = run({"realize-abelian", "3,9"});
  REQUIRE(r.code == kExitOk);
  std::string file = temp_file("real.json", r.out.dump());
  auto c = run({"certify", file});
  CHECK(c.code == kExitOk);
  CHECK(c.out.at("payload").at("verdict") == true);
  auto ok = run({"certify", "--poly=-1,-2,1,1", "--expected", "7"});
  CHECK(ok.code == kExitOk);
  auto bad = run({"certify", "--poly=-1,-2,1,1", "--expected", "5"});
  CHECK(bad.code == kExitNegative);
  auto cyc = run({"certify", "--cyclic", "7:3", "--frobenius", "500"});
  CHECK(cyc.code == kExitOk);
  auto sch = run({"realize-abelian", "3,3", "--scholz", "3", "1"});
  CHECK(sch.code == kExitOk);
  auto ss = run({"scholz-search", "3,3", "--l", "3", "--N", "1"});
  CHECK(ss.code == kExitOk);
}

TEST_CASE("certificate and verify commands") {
  auto c = run({"certificate", data_path("groups/H27.json")});
  REQUIRE(c.code == kExitOk);
  std::string text = c.out.dump(2);
  std::string file = temp_file("cert.json", text);
  auto v = run({"verify", file});
  CHECK(v.code == kExitOk);
  CHECK(v.out.at("payload").at("verify").at("valid") == true);

  // A single changed byte in a recorded prime must invalidate the certificate.
  std::string mutated = text;
  auto pos = mutated.find("613");
  REQUIRE(pos != std::string::npos);
  mutated[pos + 2] = '9';
  auto m = run({"verify", temp_file("cert_mut.json", mutated)});
  CHECK(m.code != kExitOk);

  std::string flipped = text;
  auto hp = flipped.find("\"holds\": true");
  REQUIRE(hp != std::string::npos);
  flipped.replace(hp, 13, "\"holds\": false");
  CHECK(run({"verify", temp_file("cert_flip.json", flipped)}).code != kExitOk);
}

TEST_CASE("payload does not depend on the worker count") {
  auto a = run({"--jobs", "1", "certificate", data_path("groups/Z3wrZ3.json")});
  auto b = run({"--jobs", "4", "certificate", data_path("groups/Z3wrZ3.json")});
  REQUIRE(a.code == kExitOk);
  REQUIRE(b.code == kExitOk);
  CHECK(a.out.at("payload") == b.out.at("payload"));
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"nonsense"}).code == kExitUsage);
  auto missing = run({"bound", data_path("missing.json")});
  CHECK(missing.code == kExitUsage);
  CHECK(missing.out.at("error").at("type").is_string());
  std::string broken = temp_file("broken.json", "{\"prime\": 3, ");
  CHECK(run({"bound", broken}).code == kExitUsage);
  std::string badpc = temp_file("badpc.json", R"({"prime": 4, "gens": 1, "powers": [[]], "commutators": []})");
  CHECK(run({"bound", badpc}).code == kExitPrecondition);
  CHECK(run({"certificate", data_path("groups/H27.json"), "--field=-3"}).code == kExitPrecondition);
  CHECK(run({"certificate", data_path("groups/H27.json"), "--field=-12"}).code == kExitPrecondition);
  auto lim = run({"--limit", "50", "certificate", data_path("groups/H27.json")});
  CHECK(lim.code == kExitSearchLimit);
  CHECK(lim.out.at("error").at("type") == "search_limit");
  CHECK(run({"realize-abelian", ""}).code != kExitOk);
  CHECK(run({"exceptional-set", "--field", "Q", "--primes", "3", "--N", "2"}).code == kExitOk);
  auto t = run({"exceptional-set", "--field=-23", "--primes", "3", "--N", "1"});
  CHECK(t.code == kExitOk);
  CHECK(t.out.at("payload").at("members").size() == 1);
}
