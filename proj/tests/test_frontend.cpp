// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cohmin/fixtures.hpp"
#include "cohmin/frontend.hpp"
#include "cohmin/protocol.hpp"
#include "cohmin/sfst.hpp"
#include "doctest.h"
#include "random_gen.hpp"

namespace cohmin {
namespace {

std::string Slurp(const std::string &name) {
  std::ifstream in(std::string(COHMIN_FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename F>
ParseError CatchParse(F f) {
  try {
    f();
  } catch (const ParseError &e) {
    return e;
  }
  FAIL("expected ParseError");
  return ParseError(0, 0, "");
}

TEST_CASE("transducer text round-trips") {
  for (const Transducer &t :
       {fixture_fix1(), fixture_fix3(), fixture_pr1()}) {
    const std::string text = serialise(t);
    CHECK(parse_transducer(text) == t);
    CHECK(serialise(parse_transducer(text)) == text);
  }
}

TEST_CASE("random transducers round-trip") {
  std::mt19937 rng(17);
  const Signature sig{{"a", "c"}, {"b"}};
  for (int i = 0; i < 200; ++i) {
    const Transducer t = testing::RandomTransducer(rng, sig, {});
    CHECK(parse_transducer(serialise(t)) == t);
  }
}

TEST_CASE("sfst text round-trips") {
  for (const Sfst &t : {fixture_adder(), fixture_inplace_map().first}) {
    const std::string text = serialise(t);
    CHECK(parse_sfst(text) == t);
    CHECK(serialise(parse_sfst(text)) == text);
  }
}

TEST_CASE("quoted state names") {
  CHECK(format_state("A[y=0]") == "\"A[y=0]\"");
  CHECK(format_state("q0") == "q0");
  const Transducer t = parse_transducer(
      "signature in a;\nstates \"A[y=0]\", \"x\\\"y\";\ninitial \"A[y=0]\";\n"
      "trans \"A[y=0]\" -> \"x\\\"y\" : {a};\n");
  CHECK(t.name(t.initial()) == "A[y=0]");
  CHECK(parse_transducer(serialise(t)) == t);
}

TEST_CASE("comments and optional signature parts") {
  const Transducer t = parse_transducer(
      "# header\nsignature out b; # trailing\nstates s;\ninitial s;\n"
      "trans s -> s : {};\ntrans s -> s : {b};\n");
  CHECK(t.signature().inputs.empty());
  CHECK(t.arcs().size() == 2);
}

TEST_CASE("parse errors carry positions") {
  ParseError e = CatchParse([] {
    parse_transducer("signature in a;\nstates s;\ninitial s;\ntrans s -> s : {zz};\n");
  });
  CHECK(e.line() == 4);
  CHECK(e.column() == 17);
  CHECK(e.item() == "zz");
  e = CatchParse([] { parse_transducer("states s;\ntrans s -> s : {a};\n"); });
  CHECK(e.line() == 2);
  e = CatchParse([] { parse_transducer("signature in a;\nstates s\ninitial s;\n"); });
  CHECK(e.line() == 3);
  CHECK(e.column() == 1);
  e = CatchParse([] { parse_transducer("signature in a;\nstates s; initial s; $"); });
  CHECK(e.column() == 22);
  e = CatchParse([] { parse_expr("x + "); });
  CHECK(e.column() == 5);
  e = CatchParse([] { parse_expr("99999999999999999999"); });
  CHECK(e.column() == 1);
}

TEST_CASE("semantic errors stay typed") {
  CHECK_THROWS_AS(parse_transducer("signature in a;\nstates s;\ninitial t;\n"),
                  ValidationError);
  CHECK_THROWS_AS(parse_sfst("signature in x; out r;\nstates A;\nregisters y;\n"
                             "initial A;\ntrans A -> A : {r} do r := w;\n"),
                  Error);
}

TEST_CASE("expressions") {
  CHECK(to_string(parse_expr("y + z > 0")) == "y + z > 0");
  CHECK(to_string(parse_expr("-(x) * -3")) == "-x * -3");
  CHECK(to_string(parse_expr("not a = 0 or b and c")) ==
        "not a = 0 or b and c");
  CHECK(to_string(parse_expr("(1 + 2) * 3")) == "(1 + 2) * 3");
  CHECK(eval(parse_expr("-9223372036854775808 < 0"), {}) == Value{true});
  CHECK(parse_expr("1 - 2 - 3")->args[0]->op == Op::kSub);
}

TEST_CASE("traces") {
  const Trace t = parse_trace(Slurp("attack.trc"));
  REQUIRE(t.size() == 3);
  CHECK(t[2] == Round{"d4"});
  CHECK(parse_trace(serialise(t)) == t);
  CHECK(parse_trace("{}\n{a, b}\n").at(1) == Round{"a", "b"});
  const ValuedTrace v = parse_valued_trace(Slurp("adder_bad.vtrc"));
  REQUIRE(v.size() == 3);
  CHECK(v[1].at("x") == -3);
  CHECK(parse_valued_trace("{x=1, r}\n")[0].at("r") == std::nullopt);
  CHECK(parse_valued_trace(serialise(v)) == v);
}

TEST_CASE("adder file") {
  const Sfst t = parse_sfst(Slurp("adder.sfst"));
  CHECK(t.num_states() == 3);
  CHECK(t.registers().size() == 2);
  CHECK(t.arcs().size() == 3);
  CHECK(t == fixture_adder());
}

TEST_CASE("protocol files") {
  const ProtocolFile f = parse_protocol_file(Slurp("display.prot"));
  CHECK(f.signature == display_signature());
  CHECK(to_string(f.regex) == display_protocol_regex());
  CHECK(load_protocol(Slurp("display.prot")) == fixture_display_protocol());
  CHECK(load_protocol(Slurp("inplace.prot")) == fixture_inplace_map().second);
  CHECK(load_protocol(Slurp("pr1.fst")).num_states() == 3);
  const ProtocolFile plain = parse_protocol_file("alphabet a, b;\nregex (a b)*;\n");
  CHECK(plain.signature.inputs.size() == 2);
  const ParseError e =
      CatchParse([] { parse_protocol_file("alphabet a;\nregex  (a;\n"); });
  CHECK(e.line() == 2);
  CHECK(e.column() == 10);
}

TEST_CASE("every fixture file parses") {
  for (const auto &entry :
       std::filesystem::directory_iterator(COHMIN_FIXTURE_DIR)) {
    const std::string name = entry.path().filename().string();
    const std::string ext = entry.path().extension().string();
    CAPTURE(name);
    const std::string text = Slurp(name);
    if (ext == ".fst") CHECK_NOTHROW(parse_transducer(text));
    else if (ext == ".sfst") CHECK_NOTHROW(parse_sfst(text));
    else if (ext == ".prot") CHECK_NOTHROW(load_protocol(text));
    else if (ext == ".trc") CHECK_NOTHROW(parse_trace(text));
    else if (ext == ".vtrc") CHECK_NOTHROW(parse_valued_trace(text));
    else FAIL("unknown fixture extension");
  }
}

TEST_CASE("dot output") {
  const std::string dot = to_dot(fixture_fix1());
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("rankdir=LR") != std::string::npos);
  CHECK(dot.find("\"s0\" [shape=doublecircle]") != std::string::npos);
  std::size_t edges = 0, nodes = 0;
  std::istringstream lines(dot);
  for (std::string line; std::getline(lines, line);) {
    if (line.find("->") != std::string::npos) ++edges;
    else if (line.rfind("  \"", 0) == 0) ++nodes;
  }
  CHECK(nodes == 2);
  CHECK(edges == 2);
  CHECK(to_dot(fixture_adder()).find("when y + z > 0 do r := y + z") !=
        std::string::npos);
}

}  // namespace
}  // namespace cohmin
