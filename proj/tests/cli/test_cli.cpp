#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "commands.hpp"

using onion::cli::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Outcome invoke(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "onion");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  const int code = onion::cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string exact_kets(const std::vector<int>& format, const std::vector<std::size_t>& ones) {
  std::size_t n = 1;
  for (int d : format) n *= static_cast<std::size_t>(d);
  json amps = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const bool one = std::find(ones.begin(), ones.end(), i) != ones.end();
    amps.push_back(json::array({one ? "1" : "0", "0"}));
  }
  return json{{"format", format}, {"amplitudes", amps}, {"mode", "exact"}}.dump();
}

const std::string kGhz = exact_kets({2, 2, 2}, {0, 7});
const std::string kW = exact_kets({2, 2, 2}, {1, 2, 4});
const std::string kBell = exact_kets({2, 2}, {0, 3});

}  // namespace

TEST_CASE("classify GHZ") {
  const auto r = invoke({"classify"}, kGhz);
  REQUIRE(r.code == 0);
  const json d = r.doc();
  CHECK(d["name"] == "GHZ");
  CHECK(d["onion_level"] == 0);
  CHECK(d["local_ranks"] == json::array({2, 2, 2}));
  CHECK(d["diagnostics"]["det3"] == "1/1");
}

TEST_CASE("classify W in float mode") {
  const auto r = invoke({"classify", "--mode", "float"}, kW);
  REQUIRE(r.code == 0);
  CHECK(r.doc()["name"] == "W");
  CHECK(r.doc()["mode"] == "float");
}

TEST_CASE("seven amplitudes are a format mismatch") {
  const auto r = invoke({"classify"}, R"({"format":[2,2,2],"amplitudes":[[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]})");
  CHECK(r.code == 2);
  CHECK(r.doc()["error"] == "FormatMismatch");
}

TEST_CASE("five qubits are unsupported") {
  const auto r = invoke({"classify"}, exact_kets({2, 2, 2, 2, 2}, {0, 31}));
  CHECK(r.code == 3);
  CHECK(r.doc()["error"] == "UnsupportedFormat");
}

TEST_CASE("malformed documents exit 2") {
  for (const std::string bad :
       {"not json", "[]", R"({"format":[2,2]})", R"({"format":[2,2],"amplitudes":[1,2,3,4]})",
        R"({"format":[2,2],"amplitudes":[[1,0],["0","0"],[0,0],[1,0]]})",
        R"({"format":[2,2],"amplitudes":[["1","0"],["0","0"],["0","0"],["1/0","0"]]})",
        R"({"format":[2,"x"],"amplitudes":[]})", R"({"format":[1,2],"amplitudes":[[1,0],[0,0]]})",
        R"({"format":[2,2],"amplitudes":[[1,0],[0,0],[0,0],[1,0]],"mode":"exact"})"}) {
    CAPTURE(bad);
    const auto r = invoke({"classify"}, bad);
    CHECK(r.code == 2);
    CHECK(r.doc().contains("error"));
  }
}

TEST_CASE("zero state is rejected") {
  const auto r = invoke({"classify"}, exact_kets({2, 2, 2}, {}));
  CHECK(r.code == 2);
  CHECK(r.doc()["error"] == "ZeroState");
}

TEST_CASE("hyperdet of a Bell state") {
  const auto r = invoke({"hyperdet"}, kBell);
  REQUIRE(r.code == 0);
  const json d = r.doc();
  CHECK(d["defined"] == true);
  CHECK(d["value"] == "1/1");
  CHECK(d["degree"] == 2);
}

TEST_CASE("hyperdet of W vanishes") {
  const json d = invoke({"hyperdet"}, kW).doc();
  CHECK(d["value"] == "0/1");
  CHECK(d["vanishes"] == true);
}

TEST_CASE("float det4 near zero warns") {
  const auto r = invoke({"hyperdet", "--mode", "float"}, exact_kets({2, 2, 2, 2}, {0, 15}));
  REQUIRE(r.code == 0);
  CHECK(r.doc().contains("warning"));
  CHECK(r.err.find("--mode exact") != std::string::npos);
  CHECK_FALSE(invoke({"hyperdet"}, exact_kets({2, 2, 2, 2}, {0, 15})).doc().contains("warning"));
}

TEST_CASE("invariants of GHZ") {
  const json d = invoke({"invariants"}, kGhz).doc();
  CHECK(d["cut_ranks"]["1|23"] == 2);
  CHECK(d["cut_ranks"]["13|2"] == 2);
  CHECK(d["separability_pattern"] == json::array({json::array({1, 2, 3})}));
  CHECK(d["measures"]["tangle3_squared"] == "16/1");
  CHECK(d["singularity"]["in_dual"] == false);
}

TEST_CASE("invariants of a Bell state carry Schmidt data") {
  const json d = invoke({"invariants"}, kBell).doc();
  CHECK(d["schmidt"]["squared_exact"] == json::array({"1/1", "1/1"}));
  const json f = invoke({"invariants", "--mode", "float"}, kBell).doc();
  CHECK(f["schmidt"]["coefficients"][0].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("canonicalize W returns the representative") {
  const auto r = invoke({"canonicalize"}, kW);
  REQUIRE(r.code == 0);
  const json d = r.doc();
  CHECK(d["label"]["name"] == "W");
  CHECK(d["operators"].size() == 3);
  CHECK(d["representative"]["amplitudes"][1][0] == "1/1");
}

TEST_CASE("canonicalize needs three qubits") {
  const auto r = invoke({"canonicalize"}, kBell);
  CHECK(r.code == 2);
  CHECK(r.doc()["error"] == "WrongFormat");
}

TEST_CASE("reachability queries") {
  CHECK(invoke({"reachable", "GHZ", "B2"}).doc()["reachable"] == true);
  CHECK(invoke({"reachable", "B2", "GHZ"}).doc()["reachable"] == false);
  CHECK(invoke({"reachable", "GEN322", "S"}).doc()["reachable"] == true);
  CHECK(invoke({"reachable", "S_3", "S_2"}).doc()["reachable"] == true);
  CHECK(invoke({"reachable", "S_2", "GHZ"}).code == 2);
  CHECK(invoke({"reachable", "X", "GHZ"}).code == 2);
}

TEST_CASE("oracle reports verdict and formula") {
  const json ghz = invoke({"oracle", "--seed", "5", "--restarts", "8"}, kGhz).doc();
  CHECK(ghz["verdict"] == "NOT-FOUND");
  CHECK(ghz["formula"]["value"] == "1/1");
  CHECK(ghz["seed"] == 5);
  const json w = invoke({"oracle", "--seed", "5", "--restarts", "8"}, kW).doc();
  CHECK(w["verdict"] == "FOUND");
  CHECK(w["residual"].get<double>() < 1e-8);
  CHECK(w["formula"]["vanishes"] == true);
  CHECK(w["witness"].size() == 3);
}

TEST_CASE("oracle derives and prints a seed") {
  const json d = invoke({"oracle", "--restarts", "2"}, kGhz).doc();
  CHECK(d["seed"].is_number_unsigned());
}

TEST_CASE("random is reproducible and round-trips") {
  const auto a = invoke({"random", "--format", "2,2,2", "--seed", "7"});
  const auto b = invoke({"random", "--format", "2,2,2", "--seed", "7"});
  const auto c = invoke({"random", "--format", "2,2,2", "--seed", "8"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(a.doc()["seed"] == 7);
  const auto first = invoke({"classify"}, a.out);
  const auto second = invoke({"classify"}, b.out);
  CHECK(first.out == second.out);
  CHECK(first.doc()["name"] == "GHZ");
  const auto exact = invoke({"random", "--format", "3,2,2", "--seed", "7", "--mode", "exact"});
  CHECK(exact.doc()["mode"] == "exact");
  CHECK(invoke({"classify"}, exact.out).doc()["name"] == "GEN322");
  CHECK(invoke({"random", "--format", "2,x"}).code == 2);
  CHECK(invoke({"random", "--format", "2,1"}).code == 2);
}

TEST_CASE("mixed ensembles") {
  const std::string doc = R"({"members":[{"weight":"1/2","state":)" + kGhz + R"(},{"weight":"1/2","state":)" + kW + "}]}";
  const json d = invoke({"mixed"}, doc).doc();
  CHECK(d["ladder"] == "GHZ-class");
  CHECK(d["bound_kind"] == "upper-bound");
  CHECK(d["members"] == json::array({"GHZ", "W"}));
  const std::string bad = R"({"members":[{"weight":"1/3","state":)" + kGhz + "}]}";
  CHECK(invoke({"mixed"}, bad).code == 2);
  CHECK(invoke({"mixed"}, R"({"members":[]})").doc()["error"] == "EmptyEnsemble");
}

TEST_CASE("text output carries the same decisive values") {
  const json d = invoke({"classify"}, kW).doc();
  const auto text = invoke({"classify", "--output", "text"}, kW).out;
  CHECK(text.find("name") != std::string::npos);
  CHECK(text.find(d["name"].get<std::string>()) != std::string::npos);
  CHECK(text.find("diagnostics.det3") != std::string::npos);
  CHECK(text.find(d["diagnostics"]["det3"].get<std::string>()) != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"classify", "--mode", "symbolic"}, kGhz).code == 2);
  CHECK(invoke({"bogus"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}
