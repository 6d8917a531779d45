#include "cli_app.hpp"

#include "blforms/json_io.hpp"

#include <doctest.h>

#include <sstream>

using blf::io::json;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = blf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kGoodCheck =
    R"({"index":{"entries":[{"invP":"1/2","lam":"1/6"},{"invP":"1/2","lam":"1/6"},
        {"invP":"1/2","lam":"1/6"}]},
        "family":{"vectors":[["1","0"],["0","1"],["1","1"]],"k":1}})";

const char* kKfPoint =
    R"({"theta":["1","-1"],"lam":"1/4","entries":[
        {"invP":"7/12","lam":"-1/8"},{"invP":"7/12","lam":"-1/8"},
        {"invP":"7/12","lam":"1/4"}],"k":1})";

}  // namespace

TEST_CASE("check subcommand classifies and exits accordingly") {
  CliResult good = run_cli({"check", kGoodCheck});
  CHECK(good.exit_code == 0);
  json parsed = json::parse(good.out);
  CHECK(parsed["classification"] == "SUFFICIENT");
  CHECK(parsed["sufficient"]["satisfied"] == true);

  CliResult fail = run_cli(
      {"check",
       R"({"index":{"entries":[{"invP":"1/2","lam":"1/2"},{"invP":"1/2","lam":"1/2"},
           {"invP":"1/2","lam":"1/2"}]},
           "family":{"vectors":[["1","0"],["0","1"],["1","1"]],"k":1}})"});
  CHECK(fail.exit_code == 2);
  CHECK(json::parse(fail.out)["classification"] == "NECESSARY_FAIL");
}

TEST_CASE("malformed rationals exit 1 with the exact-fraction hint") {
  CliResult bad = run_cli(
      {"check",
       R"({"index":{"entries":[{"invP":"0.7","lam":"0"}]},
           "family":{"vectors":[["1","0"],["0","1"]],"k":1}})"});
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("use 7/10") != std::string::npos);
  CHECK(bad.err.find("/index/entries/0/invP") != std::string::npos);
}

TEST_CASE("schema violations carry JSON-pointer paths") {
  CliResult bad = run_cli({"check", R"({"index":{"entries":[{"lam":"0"}]},
                                        "family":{"vectors":[["1","0"],["0","1"]]}})"});
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("/index/entries/0/invP") != std::string::npos);
}

TEST_CASE("reduce emits the hand-checked certificate") {
  CliResult r = run_cli(
      {"reduce",
       R"({"lambda":["-1","1","1"],
           "family":{"vectors":[["1","0"],["0","1"],["1","1"]],"k":1}})"});
  REQUIRE(r.exit_code == 0);
  json cert = json::parse(r.out);
  CHECK(cert["verified"] == true);
  REQUIRE(cert["leaves"].size() == 2);
  CHECK(cert["leaves"][0]["alpha"] == json::array({"-1", "1", "0"}));
  CHECK(cert["leaves"][1]["alpha"] == json::array({"-1", "0", "1"}));

  // Certificates round-trip through their JSON schema.
  blf::ReductionCertificate parsed = blf::io::certificate_from_json(cert);
  CHECK(blf::verify_certificate(parsed).satisfied());
  CHECK(blf::io::certificate_to_json(parsed)["leaves"] == cert["leaves"]);
}

TEST_CASE("reduce rejects an index-condition violation as an input error") {
  CliResult r = run_cli(
      {"reduce",
       R"({"lambda":["-1","-1","1"],
           "family":{"vectors":[["1","0"],["0","1"],["1","1"]],"k":1}})"});
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("ell=2") != std::string::npos);
}

TEST_CASE("mlfi set selection drives the exit code") {
  CliResult kf = run_cli({"mlfi", kKfPoint, "--set", "komori-furuya"});
  CHECK(kf.exit_code == 0);
  CHECK(json::parse(kf.out)["satisfied"] == true);

  CliResult thm = run_cli({"mlfi", kKfPoint, "--set", "thm41"});
  CHECK(thm.exit_code == 2);
  json parsed = json::parse(thm.out);
  CHECK(parsed["satisfied"] == false);
  bool names_strict = false;
  for (const auto& v : parsed["violations"])
    if (v["condition"] == "another_strict") names_strict = true;
  CHECK(names_strict);
}

TEST_CASE("eval picks the exact path and reports the method") {
  CliResult r = run_cli(
      {"eval",
       R"({"family":{"vectors":[["1","0"],["0","1"],["1","1"]],"k":1},
           "functions":[{"k":1,"pieces":[{"a":0,"b":1,"c":1,"gamma":0}]},
                        {"k":1,"pieces":[{"a":0,"b":1,"c":1,"gamma":0}]},
                        {"k":1,"pieces":[{"a":0,"b":1,"c":1,"gamma":0}]}]})"});
  REQUIRE(r.exit_code == 0);
  json parsed = json::parse(r.out);
  CHECK(parsed["value"] == 3.0);
  CHECK(parsed["method"] == "EXACT_POLYGON");
  CHECK(parsed["errorBound"] == 0.0);
}

TEST_CASE("witness subcommand runs the interpolation family with CSV output") {
  const char* spec =
      R"({"kind":"INTERPOLATION","epsilon":"1/10",
          "index":{"entries":[{"invP":"1/4","lam":"0"},{"invP":"1/4","lam":"0"},
                              {"invP":"1/4","lam":"0"}]}})";
  CliResult r = run_cli({"witness", spec});
  CHECK(r.exit_code == 2);  // certified unboundedness is a negative finding
  CHECK(json::parse(r.out)["verdict"] == "UNBOUNDED_WITNESS");

  CliResult csv = run_cli({"witness", spec, "--format", "csv"});
  CHECK(csv.out.find("parameter,lambda") == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 10);  // header + 9 rows
}

TEST_CASE("compare always contains the pinned probes") {
  CliResult r = run_cli(
      {"compare", R"({"setA":"thm41","setB":"komori-furuya"})", "--budget", "200"});
  REQUIRE(r.exit_code == 0);
  json parsed = json::parse(r.out);
  CHECK(parsed["counts"]["onlyA"].get<int>() >= 1);
  CHECK(parsed["counts"]["onlyB"].get<int>() >= 1);
  bool pinned = false;
  for (const auto& p : parsed["onlyB"])
    if (p["pinned"] == true) pinned = true;
  CHECK(pinned);
}

TEST_CASE("byte-identical output for identical inputs and seeds") {
  std::vector<std::string> args{
      "eval",
      R"({"family":{"vectors":[["1","0"],["0","1"],["1","1"]],"k":1},
          "functions":[{"k":1,"pieces":[{"a":0,"b":2,"c":1,"gamma":0}]},
                       {"k":1,"pieces":[{"a":0,"b":1,"c":1,"gamma":0}]},
                       {"k":1,"pieces":[{"a":0,"b":1,"c":1,"gamma":0}]}]})",
      "--method", "mc", "--budget", "50000", "--seed", "7"};
  CliResult a = run_cli(args);
  CliResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("unknown arguments exit 1") {
  CliResult r = run_cli({"frobnicate"});
  CHECK(r.exit_code == 1);
}

TEST_CASE("documented schemas round-trip") {
  using namespace blf;

  json fam_json = json::parse(R"({"vectors":[["1","0"],["0","1"],["1","-2"]],"k":2})");
  VectorFamily fam = io::vector_family_from_json(fam_json);
  CHECK(io::vector_family_to_json(fam) == fam_json);

  json idx_json = json::parse(
      R"({"entries":[{"invP":"1/2","lam":"-1/6"},{"invP":"2/3","lam":"0"}],
          "lorentz":["1/2","1/3"]})");
  IndexPoint idx = io::index_point_from_json(idx_json);
  CHECK(io::index_point_to_json(idx) == idx_json);

  json mlfi_json = json::parse(
      R"({"theta":["1","-1"],"lam":"1/4",
          "entries":[{"invP":"7/12","lam":"-1/8"},{"invP":"7/12","lam":"-1/8"},
                     {"invP":"7/12","lam":"1/4"}],"k":1})");
  MlfiIndexPoint mlfi = io::mlfi_point_from_json(mlfi_json);
  CHECK(io::mlfi_point_to_json(mlfi) == mlfi_json);

  json fn_json = json::parse(
      R"({"k":1,"pieces":[{"a":0.0,"b":1.5,"c":2.0,"gamma":-0.5},
                          {"a":2.0,"b":"inf","c":1.0,"gamma":-3.0}]})");
  PiecewisePowerFunction fn = io::piecewise_from_json(fn_json, "");
  CHECK(io::piecewise_to_json(fn) == fn_json);
}

TEST_CASE("ladder flag overrides the witness grid") {
  const char* spec =
      R"({"kind":"SCALING",
          "index":{"entries":[{"invP":"1/2","lam":"1/6"},{"invP":"1/2","lam":"1/6"},
                              {"invP":"1/2","lam":"1/6"}]},
          "family":{"vectors":[["1","0"],["0","1"],["1","1"]],"k":1}})";
  CliResult r = run_cli({"witness", spec, "--ladder", "4:64:5"});
  REQUIRE(r.exit_code == 0);
  json parsed = json::parse(r.out);
  REQUIRE(parsed["dataPoints"].size() == 5);
  CHECK(parsed["dataPoints"][0]["parameter"] == 4.0);
  CHECK(parsed["dataPoints"][4]["parameter"] == 64.0);
}
