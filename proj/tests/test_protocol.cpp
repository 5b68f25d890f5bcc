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

#include <random>

#include "cohmin/fixtures.hpp"
#include "cohmin/protocol.hpp"
#include "doctest.h"
#include "oracles.hpp"

namespace cohmin {
namespace {

Trace Moves(std::initializer_list<const char *> moves) {
  Trace t;
  for (const char *m : moves) t.push_back(Round{m});
  return t;
}

TEST_CASE("parse_regex") {
  CHECK(to_string(parse_regex("(a b)*")) == "(a b)*");
  CHECK(to_string(parse_regex(" a  + b c* ")) == "a + b c*");
  CHECK(to_string(parse_regex(inplace_protocol_regex())) ==
        inplace_protocol_regex());
  try {
    parse_regex("a (b");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse_regex("a + * b"), ParseError);
  CHECK_THROWS_AS(parse_regex(""), ParseError);
}

TEST_CASE("compile_regex") {
  const Signature ab{{"a"}, {"b"}};
  const Transducer p = compile_regex(parse_regex("(a b)*"), ab);
  CHECK(p.num_states() == 2);
  CHECK(is_deterministic(p));
  CHECK(traces_upto(p, 4).traces ==
        std::vector<Trace>{{}, Moves({"a"}), Moves({"a", "b"}),
                           Moves({"a", "b", "a"}),
                           Moves({"a", "b", "a", "b"})});
  const Transducer one = compile_regex(parse_regex("a"), ab);
  CHECK(traces_upto(one, 3).traces == std::vector<Trace>{{}, Moves({"a"})});
  CHECK_THROWS_AS(compile_regex(parse_regex("a c"), ab), Error);
}

TEST_CASE("in-place protocol compiles") {
  const Transducer p = compile_regex(parse_regex(inplace_protocol_regex()),
                                     inplace_signature());
  const TraceSet t = traces_upto(p, 3);
  CHECK(t.contains(Moves({"r"})));
  CHECK(t.contains(Moves({"r", "q_more"})));
  CHECK(t.contains(Moves({"r", "q_more", "b_more"})));
  CHECK_FALSE(t.contains(Moves({"q_more"})));
}

TEST_CASE("property: compiled language matches derivatives") {
  std::mt19937 rng(50);
  const std::vector<Label> letters{"a", "b", "c"};
  const Signature sig{{"a", "b"}, {"c"}};
  std::function<Regex(int)> gen = [&](int depth) -> Regex {
    const int pick = static_cast<int>(rng() % (depth == 0 ? 1 : 4));
    switch (pick) {
      case 1: return regex_concat({gen(depth - 1), gen(depth - 1)});
      case 2: return regex_alt({gen(depth - 1), gen(depth - 1)});
      case 3: return regex_star(gen(depth - 1));
      default: return regex_literal(letters[rng() % 3]);
    }
  };
  std::vector<std::vector<Label>> words{{}};
  for (std::size_t i = 0; i < words.size(); ++i)
    if (words[i].size() < 4)
      for (const Label &l : letters) {
        std::vector<Label> w = words[i];
        w.push_back(l);
        words.push_back(w);
      }
  for (int i = 0; i < 50; ++i) {
    const Regex r = gen(3);
    const Transducer p = compile_regex(r, sig);
    const TraceSet ts = traces_upto(p, 4);
    testing::DerivativeOracle oracle(r);
    for (const auto &w : words) {
      Trace t;
      for (const Label &l : w) t.push_back(Round{l});
      CHECK_MESSAGE(ts.contains(t) == oracle.PrefixMember(w), to_string(r));
    }
  }
}

TEST_CASE("display protocol") {
  const Transducer d = fixture_display_protocol();
  CHECK(accepts(d, Moves({"q5", "d5"})));
  CHECK(accepts(d, Moves({"q5", "r2", "q1", "n1", "q1", "n1", "d2", "d5"})));
  CHECK_FALSE(accepts(d, Moves({"d5"})));
  CHECK(accepts(d, Moves({"q5", "d5", "q5"})));
}

TEST_CASE("monitor") {
  const Transducer d = fixture_display_protocol();
  CHECK(to_string(monitor(d, Moves({"q5", "r2", "q1", "n1", "d2", "r4", "q3",
                                    "n3", "d4", "d5"}))) == "OK");
  const Verdict v = monitor(d, Moves({"q5", "r2", "d4"}));
  CHECK(v.status == VerdictStatus::kViolation);
  CHECK(v.index == 2);
  CHECK(v.offending == Round{"d4"});
  CHECK(v.expected == std::vector<Round>{{"d2"}, {"q1"}});
  CHECK(to_string(v) == "VIOLATION index=2 round={d4} expected={{d2},{q1}}");
  CHECK(monitor(d, {}).status == VerdictStatus::kOk);
  CHECK_THROWS_AS(monitor(d, Moves({"zz"})), Error);
  // Nondeterministic protocols are determinised first.
  CHECK(monitor(fixture_fix3(), {{"i"}, {"a"}, {"b"}}).status ==
        VerdictStatus::kOk);
}

TEST_CASE("property: monitor is online membership") {
  for (const Transducer &p :
       {fixture_display_protocol(),
        compile_regex(parse_regex(inplace_protocol_regex()),
                      inplace_signature())}) {
    std::vector<Round> singles;
    for (const Label &l : p.signature().universe()) singles.push_back({l});
    for (const Trace &t : traces_upto(p, 8).traces) {
      CHECK(monitor(p, t).status == VerdictStatus::kOk);
      if (t.size() == 8) continue;
      for (const Round &r : singles) {
        Trace e = t;
        e.push_back(r);
        const Verdict v = monitor(p, e);
        CHECK((v.status == VerdictStatus::kOk) == accepts(p, e));
        if (v.status == VerdictStatus::kViolation) CHECK(v.index == t.size());
      }
    }
  }
}

TEST_CASE("property: random walks and single-round edits") {
  const Transducer p = fixture_display_protocol();
  std::mt19937 rng(31);
  std::vector<Round> singles;
  for (const Label &l : p.signature().universe()) singles.push_back({l});
  for (int i = 0; i < 200; ++i) {
    Trace t;
    int s = p.initial();
    const int len = 1 + static_cast<int>(rng() % 12);
    for (int k = 0; k < len; ++k) {
      auto arcs = p.arcs_from(s);
      if (arcs.empty()) break;
      const auto &a = arcs[rng() % arcs.size()];
      t.push_back(a.round);
      s = a.target;
    }
    CHECK(monitor(p, t).status == VerdictStatus::kOk);
    if (t.empty()) continue;
    const std::size_t at = rng() % t.size();
    const std::set<StateName> before = run(p, Trace(t.begin(), t.begin() + at));
    std::vector<Round> illegal;
    for (const Round &r : singles)
      if (step(p, *before.begin(), r).empty()) illegal.push_back(r);
    Trace edited = t;
    edited[at] = illegal[rng() % illegal.size()];
    const Verdict v = monitor(p, edited);
    CHECK(v.status == VerdictStatus::kViolation);
    CHECK(v.index == at);
  }
}

}  // namespace
}  // namespace cohmin
