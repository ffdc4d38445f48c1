#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace {

struct Result {
  int status;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int status = msow::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return "cli_test_" + name; }

}  // namespace

TEST_CASE("command examples") {
  Result d = call({"decide", "--word", "up:u=1,v=0", "--formula", "E x. P(x)"});
  CHECK(d.status == 0);
  CHECK(d.out == "true\n");
  CHECK(call({"types", "unary", "-k", "1"}).out == "t=1 p=1 l=1\n");
  CHECK(call({"biinf", "classify", "bi:x=0|y=1|z=0"}).out == "non-recurrent; class cardinality aleph0\n");
  CHECK(call({"biinf", "classify", "bi:x=01|y=|z=01"}).out == "periodic (period 2); class cardinality 2\n");
  CHECK(call({"types", "equiv", "-k", "1", "fin:0", "fin:00"}).out == "true\n");
  CHECK(call({"indicator", "--word", "up:u=1,v=0", "--formula", "E x. P(x)", "--weak"}).out == "1\n");
  CHECK(call({"decide", "--word", "bi:x=01|y=0|z=10", "--formula", "E x. P(x) & A y. y < x -> !P(y)"}).out ==
        "false\n");
}

TEST_CASE("exit statuses follow the outcome") {
  CHECK(call({}).status == 2);
  CHECK(call({"frobnicate"}).status == 2);
  CHECK(call({"decide", "--word", "up:u=1", "--formula", "E x. P(x)"}).status == 2);
  CHECK(call({"decide", "--word", "fin:01", "--formula", "E x. P(y)"}).status == 2);
  CHECK(call({"decide", "--word", "fin:01"}).status == 2);
  CHECK(call({"biinf", "embed", "--lang", "alternating", "--bits", "1"}).status == 1);

  std::string cfg = temp_path("tight.cfg");
  std::ofstream(cfg) << "cert_n0_max=1\ncert_q_max=1\n";
  CHECK(call({"--config", cfg, "decide", "--word", "gap:factorial", "--formula", "E x. E y. x < y & P(x) & P(y)"})
            .status == 3);
  std::ofstream(cfg) << "no_such_key=3\n";
  CHECK(call({"--config", cfg, "types", "unary", "-k", "1"}).status == 2);
  std::remove(cfg.c_str());
}

TEST_CASE("json reports round-trip") {
  std::vector<std::vector<std::string>> commands = {
      {"--json", "decide", "--word", "gap:factorial", "--formula", "A x. E y. x <= y & P(y)"},
      {"--json", "types", "rep", "up:u=1,v=0", "-k", "2"},
      {"--json", "types", "equiv", "-k", "2", "fin:0", "fin:00"},
      {"--json", "biinf", "classify", "bi:x=0|y=1|z=0"},
      {"--json", "indicator", "--word", "bi:x=0|y=1|z=0", "--formula", "E x. P(x)"},
      {"--json", "biinf", "realize", "--lang", "golden-mean", "--steps", "4"},
      {"--json", "compile", "--formula", "E x. P(x)"},
  };
  for (const auto& c : commands) {
    Result r = call(c);
    REQUIRE(r.status == 0);
    CHECK(nlohmann::json::parse(r.out).dump(2) + "\n" == r.out);
  }
}

TEST_CASE("compile writes the automaton") {
  std::string path = temp_path("some.dfa");
  Result r = call({"compile", "--mode", "finite", "--formula", "E x. P(x)", "--out", path});
  CHECK(r.status == 0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("dfa width=1", 0) == 0);
  std::remove(path.c_str());
  Result omega = call({"compile", "--mode", "omega", "--formula", "A x. E y. x < y & P(y)"});
  CHECK(omega.status == 0);
  CHECK(omega.out.rfind("nba width=1", 0) == 0);
  Result free = call({"compile", "--formula", "x < y", "--free", "x", "--free", "y"});
  CHECK(free.out.rfind("dfa width=3", 0) == 0);
}

TEST_CASE("embedded streams decode") {
  std::string path = temp_path("stream.txt");
  Result e = call({"biinf", "embed", "--lang", "all", "--bits", "10110"});
  REQUIRE(e.status == 0);
  std::ofstream(path) << e.out;
  Result d = call({"biinf", "decode", "--lang", "all", "--stream", path});
  CHECK(d.out == "10110\n");
  std::remove(path.c_str());
}

TEST_CASE("selftest") {
  Result r = call({"selftest", "--suite", "types"});
  CHECK(r.status == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(call({"selftest", "--suite", "nope"}).status == 2);
}
