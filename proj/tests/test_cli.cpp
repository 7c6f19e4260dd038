#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "splicemult/cli.hpp"
#include "test_support.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "splicemult");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = splicemult::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return testing::data_path(name); }
std::string fixture(const std::string& name) { return std::string(SPLICEMULT_FIXTURE_DIR) + "/" + name; }

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("validate") {
  CHECK(run({"validate", data("example1.json")}).code == 0);
  CHECK(run({"validate", data("example2.json")}).code == 0);
  const Run cycle = run({"validate", fixture("cycle.json")});
  CHECK(cycle.code == 1);
  CHECK(contains(cycle.err, "NotATree"));
  const Run nm = run({"validate", fixture("non_minimal.json")});
  CHECK(nm.code == 1);
  CHECK(contains(nm.err, "NotMinimal"));
  CHECK(run({"validate", "--allow-non-minimal", fixture("non_minimal.json")}).code == 0);
  const Run fails = run({"validate", fixture("no_monomial.json")});
  CHECK(fails.code == 2);
  CHECK(contains(fails.err, "node 2, branch {1,4,6,7}"));
  CHECK(run({"validate", "/nonexistent.json"}).code == 1);
}

TEST_CASE("invariants") {
  const Run e1 = run({"invariants", data("example1.json")});
  CHECK(e1.code == 0);
  CHECK(contains(e1.out, "|H| = 12\n"));
  CHECK(contains(e1.out, "invariant factors: 2 6\n"));
  CHECK(contains(e1.out, "base point set: {3,4}\n"));
  const Run e2 = run({"invariants", data("example2.json")});
  CHECK(contains(e2.out, "|H| = 60\n"));
  CHECK(contains(e2.out, "z_1: not a base point"));
  const Run chain = run({"invariants", data("a2.json")});
  CHECK(contains(chain.out, "|H| = 3\n"));
  CHECK(contains(chain.out, "base point set: {}\n"));

  const Run j = run({"invariants", "--json", data("example1.json")});
  const auto doc = nlohmann::ordered_json::parse(j.out);
  CHECK(doc["H_order"] == 12);
  CHECK(doc["base_point_set"] == nlohmann::ordered_json::array({3, 4}));
  CHECK(doc["duals"]["3"]["8"] == "5");
}

TEST_CASE("mult") {
  CHECK(run({"mult", data("example1.json"), "--uac"}).out == "mult = 6\n");
  CHECK(run({"mult", data("example1.json"), "--quotient"}).out == "mult = 2\n");
  CHECK(run({"mult", data("example1.json"), "--subgroup", data("example1_h1_order6.json")}).out == "mult = 2\n");
  CHECK(run({"mult", data("a2.json"), "--uac", "--mode", "strict"}).out == "mult = 1\n");

  const Run trace = run({"mult", data("example2.json"), "--uac", "--trace"});
  CHECK(trace.code == 0);
  std::size_t blowups = 0;
  for (std::size_t p = trace.out.find("blow up edge"); p != std::string::npos; p = trace.out.find("blow up edge", p + 1))
    ++blowups;
  CHECK(blowups == 3);
  CHECK(contains(trace.out, "Z.Z = -7/100"));
  CHECK(contains(trace.out, "mult = 6\n"));

  CHECK(run({"mult", data("example1.json")}).code == 1);
  CHECK(run({"mult", data("example1.json"), "--uac", "--quotient"}).code == 1);
  CHECK(run({"mult", data("example1.json"), "--uac", "--mode", "fast"}).code == 1);
  CHECK(run({"mult", data("example1.json"), "--subgroup", fixture("bad_subgroup.json")}).code == 1);
  CHECK(run({"mult", fixture("non_minimal.json"), "--uac"}).code == 1);
  CHECK(run({"mult", fixture("non_minimal.json"), "--uac", "--allow-non-minimal"}).code == 0);
}

TEST_CASE("mult JSON output round-trips") {
  const Run r = run({"mult", data("example2.json"), "--uac", "--json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::ordered_json::parse(r.out);
  CHECK(doc.dump(2) + "\n" == r.out);
  for (const char* key : {"det", "H_invariant_factors", "H1_order", "index", "rounds", "Z_final", "ZZ", "multiplicity",
                          "mode", "trace"})
    CHECK(doc.contains(key));
  CHECK(doc["ZZ"] == "-1/10");
  CHECK(doc["mode"] == "optimized");
}

TEST_CASE("table") {
  const Run t = run({"table", data("example1.json")});
  CHECK(t.code == 0);
  std::vector<std::string> mults;
  std::istringstream in(t.out);
  for (std::string line; std::getline(in, line);) mults.push_back(line.substr(line.rfind(' ') + 1));
  CHECK(mults == std::vector<std::string>{"6", "6", "6", "6", "2", "6", "4", "2", "2", "2"});
  CHECK(contains(t.out, "Z = (1/2)E_5^*"));

  const Run chain = run({"table", "--json", data("a2.json")});
  const auto doc = nlohmann::ordered_json::parse(chain.out);
  REQUIRE(doc.size() == 2);
  CHECK(doc[0]["H1_order"] == 1);
  CHECK(doc[0]["multiplicity"] == 1);
  CHECK(doc[1]["H1_order"] == 3);
  CHECK(doc[1]["multiplicity"] == 2);
}

TEST_CASE("splice-eqs") {
  const Run e1 = run({"splice-eqs", data("example1.json")});
  CHECK(e1.code == 0);
  CHECK(e1.out == "node 5: z_1^2 + z_2^2 + z_3*z_4 = 0\nnode 8: z_1^5*z_2^5 + z_3^3 + z_4^3 = 0\n");
  const Run chain = run({"splice-eqs", data("a2.json")});
  CHECK(chain.code == 0);
  CHECK(chain.out.empty());
  CHECK(run({"splice-eqs", fixture("no_monomial.json")}).code == 2);
}

TEST_CASE("output is deterministic") {
  for (const char* cmd : {"table", "invariants"}) {
    const Run a = run({cmd, "--json", data("example2.json")});
    const Run b = run({cmd, "--json", data("example2.json")});
    CHECK(a.out == b.out);
  }
  CHECK(run({"mult", data("example2.json"), "--uac", "--json"}).out ==
        run({"mult", data("example2.json"), "--uac", "--json"}).out);
}

TEST_CASE("caps map to exit code 3") {
  ::setenv("SPLICEMULT_MAX_BOX", "2", 1);
  const Run r = run({"mult", data("example2.json"), "--uac"});
  ::unsetenv("SPLICEMULT_MAX_BOX");
  CHECK(r.code == 3);
  CHECK(contains(r.err, "CapExceeded"));
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}
