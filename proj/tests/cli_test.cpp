#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "masa/cli.hpp"
#include "masa/error.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = masa::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& name) { return std::string(MASA_TEST_DATA) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::string kZ2Z4 = "product:(cyclic:2,cyclic:4)";

}  // namespace

TEST_CASE("parse_subset") {
  const masa::FiniteGroup z8 = masa::build_group("cyclic:8");
  CHECK(masa::cli::parse_subset(z8, "3, 1,3") == masa::ElementSet{1, 3});
  CHECK(masa::cli::parse_subset(z8, "{}").empty());
  CHECK(masa::cli::parse_subset(z8, "").empty());
  CHECK(masa::cli::parse_subset(z8, "gen:2") == masa::ElementSet{0, 2, 4, 6});
  CHECK_THROWS_AS(masa::cli::parse_subset(z8, "gen:"), masa::InputError);
  CHECK_THROWS_WITH_AS(masa::cli::parse_subset(z8, "0,a"),
                       "subset literal '0,a' column 3: expected an element index", masa::InputError);
  CHECK_THROWS_AS(masa::cli::parse_subset(z8, "8"), masa::InputError);
}

TEST_CASE("analyze") {
  const Run r = run({"analyze", "--group", "cyclic:4", "--subset", "0,2"});
  CHECK(r.code == 0);
  CHECK(r.out == slurp(data("analyze_cyclic4.golden")));
  CHECK(r.out.find("subgroup: yes") != std::string::npos);
  CHECK(r.out.find("envelope blocks: {2,2}") != std::string::npos);

  const Run h1 = run({"analyze", "--group", kZ2Z4, "--subset", "gen:1"});
  CHECK(h1.code == 0);
  CHECK(h1.out.find("envelope blocks: {4,4}") != std::string::npos);

  const Run gen = run({"analyze", "--group", "cyclic:4", "--subset", "1"});
  CHECK(gen.code == 0);
  CHECK(gen.out.find("algebra: no") != std::string::npos);

  const Run table = run({"analyze", "--group", "table:" + data("z3.table"), "--subset", "0"});
  CHECK(table.code == 0);
  CHECK(table.out.find("envelope blocks: {1,1,1}") != std::string::npos);
}

TEST_CASE("analyze json") {
  const Run r = run({"analyze", "--group", "cyclic:4", "--subset", "0,2", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["unital"] == true);
  CHECK(j["envelope_blocks"] == nlohmann::json::array({2, 2}));
  CHECK(j["generated_subgroup"]["index"] == 2);
}

TEST_CASE("classify") {
  const Run pair = run({"classify", "--group", kZ2Z4, "--subset", "gen:1", "--subset", "gen:2,4"});
  CHECK(pair.code == 0);
  CHECK(pair.out == slurp(data("classify_z2z4.golden")));

  const Run json = run({"classify", "--group", kZ2Z4, "--subset", "gen:1", "--subset", "gen:2,4", "--format",
                        "json"});
  CHECK(json.code == 0);
  CHECK(json.out == slurp(data("classify_z2z4.json.golden")));

  const Run no = run({"classify", "--group", "cyclic:4", "--subset", "0,1,2,3", "--subset", "0,2"});
  CHECK(no.code == 3);
  CHECK(no.out.find("modules *-isomorphic: no") != std::string::npos);

  const Run cross =
      run({"classify", "--group", "cyclic:6", "--group", "symmetric:3", "--subset", "0,3", "--subset", "0,1"});
  CHECK(cross.code == 0);
  CHECK(cross.out.find("indices: 3 3") != std::string::npos);

  const Run bad = run({"classify", "--group", "cyclic:4", "--subset", "0,1", "--subset", "0,2"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("requires subgroups") != std::string::npos);
}

TEST_CASE("decompose") {
  const Run r = run({"decompose", "--relation-file", data("nest3.rel")});
  CHECK(r.code == 0);
  CHECK(r.out.find("intersection of (A1 u A2) over atoms equals relation: yes") != std::string::npos);
  CHECK(r.out.find("verified: yes") != std::string::npos);

  const Run j = run({"decompose", "--relation-file", data("nest3.rel"), "--format", "json"});
  REQUIRE(j.code == 0);
  CHECK(nlohmann::json::parse(j.out)["atoms"].size() == 3);

  const Run bad = run({"decompose", "--relation-file", data("bad.rel")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 3, column 3") != std::string::npos);

  CHECK(run({"decompose", "--relation-file", data("missing.rel")}).code == 2);
  CHECK(run({"decompose", "--group", "cyclic:4", "--subset", "1"}).code == 2);
}

TEST_CASE("envelope") {
  const Run r = run({"envelope", "--group", "cyclic:4", "--subset", "0,2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("envelope blocks: {2,2}") != std::string::npos);
  CHECK(r.out.find("numeric cross-check: agrees") != std::string::npos);
}

TEST_CASE("verify") {
  const Run prop = run({"verify", "prop43", "--max-order", "5"});
  CHECK(prop.code == 0);
  CHECK(prop.out == "suite prop43: PASS (76 cases, 0 failures)\n");

  const Run thm = run({"verify", "thm45", "--max-order", "6"});
  CHECK(thm.code == 0);
  CHECK(thm.out.find("PASS") != std::string::npos);

  const Run tip = run({"verify", "tip", "--gamma", "4", "--trials", "50", "--seed", "7"});
  CHECK(tip.code == 0);

  const Run unknown = run({"verify", "bogus"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("unknown suite") != std::string::npos);
}

TEST_CASE("usage and determinism") {
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"analyze", "--group", "cyclic:", "--subset", "0"}).code == 2);
  CHECK(run({"analyze", "--group", "cyclic:4", "--subset", "0", "--format", "yaml"}).code == 2);

  const std::vector<std::string> args{"verify", "decomp23", "--trials", "10", "--seed", "3"};
  CHECK(run(args).out == run(args).out);
}
