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

#include "cohmin/algebra.hpp"
#include "cohmin/fixtures.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "random_gen.hpp"

namespace cohmin {
namespace {

using testing::AsSet;

Transducer Forwarder(const std::string &from, const std::string &to) {
  // Copies `from` to `to` in the same round; idles on {}.
  return validate({Signature{{from}, {to}},
                   {"f"},
                   "f",
                   {{"f", {from, to}, "f"}, {"f", {}, "f"}}});
}

TEST_CASE("intersect") {
  Transducer t1 = fixture_fix1();
  CHECK(traces_upto(intersect(t1, t1), 6) == traces_upto(t1, 6));
  Transducer fp = intersect(fixture_fix3(), fixture_pr1());
  CHECK(traces_upto(fp, 3).traces ==
        std::vector<Trace>{{}, {{"i"}}, {{"i"}, {"a"}}});
  Transducer e = intersect(t1, empty_protocol(t1.signature()));
  CHECK(e.num_states() == 1);
  CHECK(e.arcs().empty());
  CHECK(e.initial_name() == "(s0,p0)");
  CHECK_THROWS_AS(intersect(t1, fixture_pr1()), Error);
}

TEST_CASE("intersect keeps unreachable pairs on request") {
  Transducer t1 = fixture_fix1();
  ProductStats stats;
  CHECK(intersect(t1, t1, {}, &stats).num_states() == 2);
  CHECK(stats.pruned == 2);
  CHECK(intersect(t1, t1, {.keep_unreachable = true}, &stats).num_states() ==
        4);
  CHECK(stats.pruned == 0);
}

TEST_CASE("interact with disjoint universes pairs explicit steps only") {
  Transducer t1 = fixture_fix1();
  Transducer t2 = testing::Relabel(t1, [](const Label &l) { return l + "2"; });
  Transducer j = interact(t1, t2);
  // Neither side has a {} transition, so both move on every joint round.
  CHECK(step(j, "(s0,s0)", {"a", "a2"}) == std::set<StateName>{"(s1,s1)"});
  CHECK(step(j, "(s0,s0)", {"a"}).empty());
  Transducer idle = validate({t2.signature(),
                              {"s0", "s1"},
                              "s0",
                              {{"s0", {"a2"}, "s1"}, {"s0", {}, "s0"}}});
  Transducer k = interact(t1, idle);
  CHECK(step(k, "(s0,s0)", {"a"}) == std::set<StateName>{"(s1,s0)"});
  CHECK(step(k, "(s0,s0)", {"a", "a2"}) == std::set<StateName>{"(s1,s1)"});
}

TEST_CASE("interact with full sharing is intersection") {
  std::mt19937 rng(11);
  Signature sig{{"a"}, {"b"}};
  for (int i = 0; i < 30; ++i) {
    Transducer t = testing::RandomTransducer(rng, sig, {});
    CHECK(traces_upto(interact(t, t), 5) == traces_upto(intersect(t, t), 5));
  }
}

TEST_CASE("project") {
  Transducer t1 = fixture_fix1();
  CHECK(project(t1, t1.signature()) == t1);
  Transducer p = project(t1, Signature{{"a"}, {}});
  CHECK(p.transitions() == std::vector<Transition>{{"s0", {"a"}, "s1"},
                                                   {"s1", {}, "s0"}});
  CHECK(p.signature() == Signature{{"a"}, {}});
  CHECK_THROWS_AS(project(t1, Signature{{"z"}, {}}), Error);
}

TEST_CASE("project is functorial") {
  std::mt19937 rng(5);
  Signature sig{{"a", "c"}, {"b"}};
  for (int i = 0; i < 30; ++i) {
    Transducer t = testing::RandomTransducer(rng, sig, {});
    Signature mid{{"a"}, {"b"}}, small{{"a"}, {}};
    CHECK(project(project(t, mid), small) == project(t, small));
  }
}

TEST_CASE("compose with a forwarder relabels") {
  Transducer t1 = fixture_fix1();
  Transducer c = compose(t1, Forwarder("b", "c"));
  CHECK(c.signature() == Signature{{"a"}, {"c"}});
  std::set<Trace> expected;
  for (const Trace &t : traces_upto(t1, 4).traces) {
    Trace r;
    for (const Round &v : t) r.push_back(v.contains("b") ? Round{"c"} : v);
    expected.insert(r);
  }
  CHECK(AsSet(traces_upto(c, 4)) == expected);
}

TEST_CASE("compose with a disconnected, stuck transducer") {
  Transducer t1 = fixture_fix1();
  Transducer stuck = validate({Signature{{"z"}, {}}, {"w"}, "w", {}});
  Transducer c = compose(t1, stuck);
  CHECK(AsSet(traces_upto(c, 3)) ==
        testing::ComposeByExtension(traces_upto(t1, 3),
                                    traces_upto(stuck, 3)));
  CHECK(traces_upto(c, 3).traces == std::vector<Trace>{{}});
}

TEST_CASE("traceset_interact") {
  Signature ab{{"a"}, {"b"}}, bc{{"b"}, {"c"}};
  TraceSet eps_a{ab, {{}}}, eps_b{bc, {{}}};
  CHECK(traceset_interact(eps_a, eps_b).traces == std::vector<Trace>{{}});
  Signature x{{"x"}, {}}, y{{"y"}, {}};
  TraceSet tx{x, {{}, {{"x"}}}}, ty{y, {{}, {Round{}}}};
  CHECK(AsSet(traceset_interact(tx, ty)) ==
        testing::InteractByExtension(tx, ty));
  CHECK(traceset_interact(tx, ty).traces ==
        std::vector<Trace>{{}, {{"x"}}});
  CHECK(traceset_interact(tx, ty).traces ==
        traceset_interact(ty, tx).traces);
}

TEST_CASE("traceset_compose projects the interaction") {
  Signature ab{{"a"}, {"b"}}, bc{{"b"}, {"c"}};
  TraceSet left{ab, {{}, {{"a"}}, {{"a"}, {"b"}}}};
  TraceSet right{bc, {{}, {Round{}}, {Round{}, {"b", "c"}}}};
  TraceSet c = traceset_compose(left, right);
  CHECK(c.traces == std::vector<Trace>{{}, {{"a"}}, {{"a"}, {"c"}}});
  for (const Trace &t : c.traces) CHECK(t.size() <= 2);
}

TEST_CASE("property: product soundness against trace-set oracles") {
  std::mt19937 rng(2024);
  Signature ab{{"a"}, {"b"}}, bc{{"b"}, {"c"}};
  for (int i = 0; i < 50; ++i) {
    Transducer t = testing::RandomTransducer(rng, ab, {});
    Transducer u = testing::RandomTransducer(rng, ab, {});
    CHECK(AsSet(traces_upto(intersect(t, u), 6)) ==
          testing::Intersection(AsSet(traces_upto(t, 6)),
                                AsSet(traces_upto(u, 6))));
    Transducer v = testing::RandomTransducer(rng, bc, {});
    TraceSet tt = traces_upto(t, 4), tv = traces_upto(v, 4);
    CHECK(AsSet(traces_upto(interact(t, v), 4)) ==
          testing::InteractByExtension(tt, tv));
    CHECK(AsSet(traces_upto(compose(t, v), 4)) ==
          testing::ComposeByExtension(tt, tv));
    CHECK(traces_upto(compose(t, v), 4) == traceset_compose(tt, tv));
  }
}

}  // namespace
}  // namespace cohmin
