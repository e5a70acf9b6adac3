#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fekete/cli.hpp"
#include "fekete/json_io.hpp"

using namespace fekete;

namespace {

struct CliResult {
  int rc = 0;
  std::string out;
  std::string err;
};

CliResult run_cmd(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliResult r;
  r.rc = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

Json parse_out(const CliResult& r) { return Json::parse(r.out); }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
  f.close();
  return path.string();
}

Json rat_json(const char* num, const char* den) {
  return Json{{"num", num}, {"den", den}};
}

}  // namespace

TEST_CASE("sandwich run emits a verified certificate") {
  const CliResult r = run_cmd({"modulus", "sandwich", "--lower", "1 - 1/n",
                               "--upper", "1 + 1/n", "--M", "3"});
  REQUIRE(r.rc == 0);
  const Json doc = parse_out(r);
  CHECK(doc["schema"] == "fekete-cert/1");
  CHECK(doc["command"] == "modulus");
  CHECK(doc["variant"] == "sandwich");
  // First n with 2/n < 1/8 is 17.
  CHECK(doc["n0"] == 17);
  CHECK(doc["kappa"] == 17);
  CHECK(doc["checked_window"] == Json::array({17, 67}));
  CHECK(doc["verified"] == true);
  CHECK(doc["problem"]["lower"]["text"] == "1 - 1/n");
  CHECK(doc["budget"] == 1000000);
}

TEST_CASE("limit reports the best prefix bound") {
  const CliResult r = run_cmd(
      {"limit", "--expr", "floor(3*n/2)", "--kind", "super", "--terms", "4"});
  REQUIRE(r.rc == 0);
  const Json doc = parse_out(r);
  CHECK(doc["bound"] == rat_json("3", "2"));
  CHECK(doc["direction"] == "lower_of_limit");
  CHECK(doc["prefix_length"] == 4);
}

TEST_CASE("crossed envelopes map to exit code 4") {
  const CliResult r = run_cmd(
      {"modulus", "sandwich", "--lower", "1/n", "--upper", "0", "--M", "3"});
  CHECK(r.rc == 4);
  const Json doc = parse_out(r);
  CHECK(doc["error"]["code"] == "CertificateViolation");
  CHECK(doc["error"]["message"].is_string());
}

TEST_CASE("budget exhaustion maps to exit code 3") {
  const CliResult r = run_cmd({"modulus", "sandwich", "--lower", "0",
                               "--upper", "1", "--M", "1", "--budget", "50"});
  CHECK(r.rc == 3);
  CHECK(parse_out(r)["error"]["code"] == "BudgetExhausted");
}

TEST_CASE("usage and parse problems map to exit code 2") {
  const CliResult unknown_flag =
      run_cmd({"modulus", "sandwich", "--nope", "1"});
  CHECK(unknown_flag.rc == 2);
  CHECK(parse_out(unknown_flag)["error"]["code"] == "UsageError");

  const CliResult no_subcommand = run_cmd({});
  CHECK(no_subcommand.rc == 2);
  CHECK(parse_out(no_subcommand)["error"]["code"] == "UsageError");

  const CliResult bad_expr = run_cmd(
      {"modulus", "sandwich", "--lower", "1 +", "--upper", "2", "--M", "3"});
  CHECK(bad_expr.rc == 2);
  CHECK(parse_out(bad_expr)["error"]["code"] == "ParseError");

  const CliResult help = run_cmd({"--help"});
  CHECK(help.rc == 0);
  CHECK(help.out.find("Usage") != std::string::npos);
}

TEST_CASE("fekete rational run pins the limit window") {
  const CliResult r =
      run_cmd({"modulus", "fekete", "--a", "floor(3*n/2)", "--converse",
               "3/2 + 1/n", "--M", "3", "--limit", "3/2"});
  REQUIRE(r.rc == 0);
  const Json doc = parse_out(r);
  CHECK(doc["variant"] == "fekete-rational");
  // Stopping conditions: (3/2 + 1/n)/n < 1/16 first holds at n = 25.
  CHECK(doc["n0"] == 25);
  CHECK(doc["kappa"] == 625);
  CHECK(doc["checked_window"] == Json::array({625, 725}));
  CHECK(doc["limit"] == rat_json("3", "2"));
  CHECK(doc["verified"] == true);

  const CliResult bare = run_cmd({"modulus", "fekete", "--a", "floor(3*n/2)",
                                  "--converse", "3/2 + 1/n", "--M", "3"});
  REQUIRE(bare.rc == 0);
  const Json bare_doc = parse_out(bare);
  CHECK(bare_doc["checked_window"] == Json::array({25, 25}));
  CHECK(bare_doc["verified"] == true);
  CHECK(!bare_doc.contains("limit"));
}

TEST_CASE("fekete pipeline run certifies inline descriptions") {
  const CliResult r = run_cmd(
      {"modulus", "fekete", "--super-dseq", "3*n + 0*m", "--super-kappa",
       "1 + 0*n + 0*M", "--sub-dseq", "3*n + 0*m", "--sub-kappa",
       "1 + 0*n + 0*M", "--M", "3", "--limit", "3"});
  REQUIRE(r.rc == 0);
  const Json doc = parse_out(r);
  CHECK(doc["variant"] == "fekete");
  // The derived upper envelope sits at 3 + 2^-n/n, so the first n with
  // envelope/n < 1/16 is 49.
  CHECK(doc["n0"] == 49);
  CHECK(doc["kappa"] == 2401);
  CHECK(doc["verified"] == true);
  CHECK(doc["problem"]["super"]["kind"] == "superadditive");
}

TEST_CASE("mixing fekete input styles is rejected") {
  const CliResult r =
      run_cmd({"modulus", "fekete", "--a", "n", "--sub-dseq", "n + 0*m",
               "--M", "2"});
  CHECK(r.rc == 2);
  CHECK(parse_out(r)["error"]["code"] == "PreconditionViolation");
}

TEST_CASE("monotone run takes inline expressions") {
  const std::vector<std::string> args = {
      "modulus",       "monotone",
      "--lower-dseq",  "1 - 1/n - 1/m",
      "--lower-kappa", "M + 1",
      "--upper-dseq",  "1 + 1/n + 1/m",
      "--upper-kappa", "M + 1",
      "--M",           "3"};
  const CliResult r = run_cmd(args);
  REQUIRE(r.rc == 0);
  const Json doc = parse_out(r);
  CHECK(doc["variant"] == "monotone");
  CHECK(doc["verified"] == true);
  CHECK(doc["n0"].get<long long>() >= 1);

  const CliResult missing =
      run_cmd({"modulus", "monotone", "--lower-dseq", "1 - 1/m", "--M", "3"});
  CHECK(missing.rc == 2);
}

TEST_CASE("verify replays certificates from disk") {
  const CliResult made = run_cmd({"modulus", "sandwich", "--lower", "1 - 1/n",
                                  "--upper", "1 + 1/n", "--M", "3"});
  REQUIRE(made.rc == 0);
  const std::string path = write_temp("fekete_cli_cert.json", made.out);

  const CliResult ok = run_cmd({"verify", "--in", path});
  CHECK(ok.rc == 0);
  CHECK(parse_out(ok)["verified"] == true);

  // Claiming a tighter precision than the window supports must fail.
  Json tampered = parse_out(made);
  tampered["M"] = 9;
  const std::string bad_path =
      write_temp("fekete_cli_cert_tampered.json", tampered.dump());
  const CliResult bad = run_cmd({"verify", "--in", bad_path});
  CHECK(bad.rc == 4);
  CHECK(parse_out(bad)["verified"] == false);

  // Moving the headline index away from the attested window must fail even
  // though the window inequality itself still holds.
  Json moved = parse_out(made);
  moved["n0"] = 5;
  moved["kappa"] = 5;
  const std::string moved_path =
      write_temp("fekete_cli_cert_moved.json", moved.dump());
  const CliResult unanchored = run_cmd({"verify", "--in", moved_path});
  CHECK(unanchored.rc == 4);
  CHECK(parse_out(unanchored)["verified"] == false);

  Json wrong_schema = parse_out(made);
  wrong_schema["schema"] = "fekete-cert/2";
  const std::string schema_path =
      write_temp("fekete_cli_cert_schema.json", wrong_schema.dump());
  const CliResult rejected = run_cmd({"verify", "--in", schema_path});
  CHECK(rejected.rc == 2);
  CHECK(parse_out(rejected)["error"]["code"] == "SchemaError");

  const CliResult missing = run_cmd({"verify", "--in", "/nonexistent.json"});
  CHECK(missing.rc == 2);
}

TEST_CASE("verify ties kappa to the claimed n0") {
  const CliResult made =
      run_cmd({"modulus", "fekete", "--a", "floor(3*n/2)", "--converse",
               "3/2 + 1/n", "--M", "3", "--limit", "3/2"});
  REQUIRE(made.rc == 0);

  Json bad_kappa = parse_out(made);
  bad_kappa["kappa"] = 624;  // no longer n0 squared
  const std::string kappa_path =
      write_temp("fekete_cli_cert_kappa.json", bad_kappa.dump());
  const CliResult kappa_fails = run_cmd({"verify", "--in", kappa_path});
  CHECK(kappa_fails.rc == 4);
  CHECK(parse_out(kappa_fails)["verified"] == false);

  Json slid = parse_out(made);
  slid["checked_window"] = Json::array({626, 726});  // off the claimed kappa
  const std::string slid_path =
      write_temp("fekete_cli_cert_slid.json", slid.dump());
  const CliResult slid_fails = run_cmd({"verify", "--in", slid_path});
  CHECK(slid_fails.rc == 4);
  CHECK(parse_out(slid_fails)["verified"] == false);
}

TEST_CASE("monotone certificate verifies from a written file") {
  const CliResult made = run_cmd(
      {"modulus", "monotone", "--lower-dseq", "1 - 1/n - 1/m",
       "--lower-kappa", "M + 1", "--upper-dseq", "1 + 1/n + 1/m",
       "--upper-kappa", "M + 1", "--M", "2"});
  REQUIRE(made.rc == 0);
  const std::string path = write_temp("fekete_cli_mono.json", made.out);
  const CliResult ok = run_cmd({"verify", "--in", path});
  CHECK(ok.rc == 0);
}

TEST_CASE("transform runs sample the derived descriptions") {
  const CliResult super_run = run_cmd(
      {"transform", "zw-to-super", "--dseq", "1 - 1/m + 0*n", "--kappa",
       "M + 1", "--kind", "lower", "--terms", "5"});
  REQUIRE(super_run.rc == 0);
  const Json doc = parse_out(super_run);
  CHECK(doc["op"] == "zw-to-super");
  CHECK(doc["output"]["kind"] == "superadditive");
  CHECK(doc["samples"].size() == 5);
  for (const Json& sample : doc["samples"]) {
    const Rational v = rational_from_json(sample["value"]);
    const Rational n(static_cast<long>(sample["n"].get<long long>()));
    CHECK(v <= n);  // members n * r'_n of a source below 1
  }

  const CliResult flat = run_cmd({"transform", "flatten", "--dseq",
                                  "1 - 1/m + 0*n", "--kappa", "M + 1",
                                  "--kind", "lower", "--terms", "6"});
  REQUIRE(flat.rc == 0);
  const Json flat_doc = parse_out(flat);
  CHECK(flat_doc["output"]["name"] == "zw_flatten");
  CHECK(flat_doc["samples"].size() == 6);
  for (const Json& sample : flat_doc["samples"]) {
    CHECK(rational_from_json(sample["value"]) < Rational(1));
  }

  const CliResult missing = run_cmd({"transform", "flatten", "--terms", "3"});
  CHECK(missing.rc == 2);
}

TEST_CASE("transform reads representations from files") {
  Json rep;
  rep["kind"] = "superadditive";
  rep["desc"]["dseq"] = Json{{"kind", "expr"}, {"text", "n + 0*m"}};
  rep["desc"]["modulus2"] = Json{{"kind", "expr"}, {"text", "1 + 0*n + 0*M"}};
  const std::string path = write_temp("fekete_cli_rep.json", rep.dump());

  const CliResult r = run_cmd(
      {"transform", "additive-to-zw", "--in", path, "--terms", "4"});
  REQUIRE(r.rc == 0);
  const Json doc = parse_out(r);
  CHECK(doc["output"]["kind"] == "lower");
  for (const Json& sample : doc["samples"]) {
    CHECK(rational_from_json(sample["value"]) == Rational(1));
  }
}

TEST_CASE("hull run lists exact values") {
  const CliResult r =
      run_cmd({"hull", "--expr", "max(0, n - 3)", "--terms", "12"});
  REQUIRE(r.rc == 0);
  const Json doc = parse_out(r);
  REQUIRE(doc["values"].size() == 12);
  CHECK(doc["values"][0] == rat_json("0", "1"));
  CHECK(doc["values"][3] == rat_json("1", "1"));
  // h_8 comes from the base, not from any split of smaller hull values.
  CHECK(doc["values"][7] == rat_json("5", "1"));
}

TEST_CASE("demo specker emits the frozen enumeration head") {
  const CliResult r = run_cmd({"demo", "specker", "--count", "8"});
  REQUIRE(r.rc == 0);
  const Json doc = parse_out(r);
  CHECK(doc["programs"] == Json::array({1, 2, 4, 3, 7, 10, 8, 9}));
  CHECK(doc["monotone"] == true);
  CHECK(doc["bounded_by_one"] == true);
  CHECK(doc["last_term"]["den"].is_string());
}

TEST_CASE("demo t15 and t17 report the non-uniformity witness") {
  const CliResult r =
      run_cmd({"demo", "t15", "--count", "40", "--head", "4"});
  REQUIRE(r.rc == 0);
  const Json doc = parse_out(r);
  const Json& report = doc["report"];
  CHECK(report["position"].get<long long>() >= 1);
  CHECK(report["halt_step"].get<long long>() >= 1);
  CHECK(report["refuted_prefixes"].is_array());
  for (const Json& sample : doc["head"]) {
    const Rational v = rational_from_json(sample["value"]);
    CHECK((v == Rational(0) || v == Rational(1)));
  }
  // The witness enters the enumeration only at the final slot, so its
  // column flips from 0 to 1 exactly there.
  const Json& at_emission = doc["at_emission"];
  CHECK(rational_from_json(at_emission[at_emission.size() - 1]["value"]) ==
        Rational(1));
  if (report["position"].get<long long>() > 1) {
    CHECK(rational_from_json(at_emission[0]["value"]) == Rational(0));
  }

  const CliResult scaled =
      run_cmd({"demo", "t17", "--count", "20", "--m", "3", "--head", "6"});
  REQUIRE(scaled.rc == 0);
  CHECK(parse_out(scaled)["head"].size() == 6);
}

TEST_CASE("demo foo describes one machine") {
  const CliResult r = run_cmd({"demo", "foo", "--n", "41", "--M", "4"});
  REQUIRE(r.rc == 0);
  const Json doc = parse_out(r);
  CHECK(doc["program"] == Json::array({"DECJZ 0 0"}));
  CHECK(doc["halted"] == false);
  CHECK(doc["x"] == rat_json("63", "32"));
  CHECK(doc["w"]["lo"]["den"].is_string());
  CHECK(doc["a"]["hi"]["den"].is_string());
}

TEST_CASE("demo shannon reports independence bounds") {
  const CliResult r = run_cmd(
      {"demo", "shannon", "--graph", "c5", "--power", "2", "--cap", "30"});
  REQUIRE(r.rc == 0);
  const Json doc = parse_out(r);
  CHECK(doc["graph"]["vertices"] == 5);
  CHECK(doc["graph"]["edges"] == 5);
  REQUIRE(doc["bounds"].size() == 2);
  CHECK(doc["bounds"][0]["alpha"] == 2);
  CHECK(doc["bounds"][0]["root_decimal"] == "2.000000");
  CHECK(doc["bounds"][1]["alpha"] == 5);
  CHECK(doc["bounds"][1]["root_decimal"] == "2.236067");
  CHECK(doc["supermultiplicative"] == true);

  const CliResult edgeless = run_cmd(
      {"demo", "shannon", "--graph", "edgeless:4", "--power", "2"});
  REQUIRE(edgeless.rc == 0);
  const Json e_doc = parse_out(edgeless);
  CHECK(e_doc["graph"]["edges"] == 0);
  CHECK(e_doc["bounds"][1]["alpha"] == 16);

  const std::string path =
      write_temp("fekete_cli_triangle.txt", "3\n0 1\n1 2\n0 2\n");
  const CliResult from_file = run_cmd(
      {"demo", "shannon", "--graph", "file:" + path, "--power", "1"});
  REQUIRE(from_file.rc == 0);
  CHECK(parse_out(from_file)["bounds"][0]["alpha"] == 1);

  const CliResult bad = run_cmd({"demo", "shannon", "--graph", "moebius"});
  CHECK(bad.rc == 2);
}

TEST_CASE("table mode renders flat rows with decimal hints") {
  const CliResult r = run_cmd({"--table", "limit", "--expr", "floor(3*n/2)",
                               "--kind", "super", "--terms", "4"});
  REQUIRE(r.rc == 0);
  CHECK(r.out.find("bound = 3/2  (1.500000 to 6 places)") !=
        std::string::npos);
  CHECK(r.out.find("direction = lower_of_limit") != std::string::npos);
  CHECK(r.out.find('{') == std::string::npos);

  const CliResult both = run_cmd({"--table", "--json", "limit", "--expr", "n",
                                  "--kind", "super"});
  CHECK(both.rc == 2);
}

TEST_CASE("FEKETE_BUDGET environment variable sets the default budget") {
  setenv("FEKETE_BUDGET", "60", 1);
  const CliResult r = run_cmd({"modulus", "sandwich", "--lower", "1 - 1/n",
                               "--upper", "1 + 1/n", "--M", "3"});
  unsetenv("FEKETE_BUDGET");
  REQUIRE(r.rc == 0);
  CHECK(parse_out(r)["budget"] == 60);
}

TEST_CASE("repeated runs are byte-identical") {
  const std::vector<std::vector<std::string>> commands = {
      {"modulus", "sandwich", "--lower", "1 - 1/n", "--upper", "1 + 1/n",
       "--M", "3"},
      {"modulus", "fekete", "--a", "floor(3*n/2)", "--converse", "3/2 + 1/n",
       "--M", "2", "--limit", "3/2"},
      {"limit", "--expr", "floor(3*n/2)", "--kind", "super", "--terms", "4"},
      {"demo", "specker", "--count", "30"},
      {"demo", "shannon", "--graph", "c5", "--power", "2"},
      {"hull", "--expr", "max(0, n - 3)", "--terms", "10"},
  };
  for (const auto& args : commands) {
    const CliResult first = run_cmd(args);
    const CliResult second = run_cmd(args);
    CHECK(first.rc == second.rc);
    CHECK(first.out == second.out);
  }
}
