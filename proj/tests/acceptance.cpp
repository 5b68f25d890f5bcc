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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "cohmin/algebra.hpp"
#include "cohmin/cli.hpp"
#include "cohmin/coherence.hpp"
#include "cohmin/fixtures.hpp"
#include "cohmin/frontend.hpp"
#include "cohmin/protocol.hpp"
#include "cohmin/sfst.hpp"
#include "oracles.hpp"
#include "random_gen.hpp"

namespace cohmin {
namespace {

// Wall-clock limits, in seconds.
constexpr double kInplaceLimit = 5.0;
constexpr double kSoundnessLimit = 60.0;
constexpr double kAlgebraLimit = 120.0;

constexpr unsigned kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records the first failure only.
  void Require(bool ok, const std::string &what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string Slurp(const std::string &name) {
  std::ifstream in(std::string(COHMIN_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Fixture(const std::string &name) {
  return std::string(COHMIN_FIXTURE_DIR) + "/" + name;
}

std::set<std::vector<StateName>> NonSingleton(
    const std::vector<std::vector<StateName>> &classes) {
  std::set<std::vector<StateName>> out;
  for (const auto &c : classes)
    if (c.size() > 1) out.insert(c);
  return out;
}

Transducer Pr1Shaped(const Signature &sig) {
  return validate(TransducerSpec{
      sig, {"X0", "X1", "X2"}, "X0",
      {{"X0", Round{"a"}, "X1"}, {"X1", Round{"b"}, "X2"}}});
}

Outcome InplaceMap() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const Sfst t = parse_sfst(Slurp("inplace.sfst"));
  const Transducer p = load_protocol(Slurp("inplace.prot"));
  o.Require(t.num_states() == 13, "fixture does not have 13 states");
  const std::set<std::vector<StateName>> expected{
      {"0", "B", "H", "J", "L"}, {"C", "M"}, {"D", "F"}};
  for (EquivMode mode : {EquivMode::kStructural, EquivMode::kBoundedSemantic}) {
    SymbolicOptions options;
    options.mode = mode;
    const SfstMinimized c = sfst_coherent_minimize(t, p, options);
    o.Require(c.result.num_states() == 7,
              "coherent minimum has " + std::to_string(c.result.num_states()) +
                  " states");
    o.Require(NonSingleton(merge_classes(c.log)) == expected,
              "coherent merge classes differ");
    const Sfst b = sfst_bisim_minimize(t, options);
    o.Require(b.num_states() == 12, "bisimulation minimum has " +
                                        std::to_string(b.num_states()) +
                                        " states");
    o.Require(NonSingleton(sfst_bisim_classes(t, options)) ==
                  std::set<std::vector<StateName>>{{"C", "M"}},
              "bisimulation merges more than {C,M}");
  }
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  o.Require(seconds < kInplaceLimit, "too slow");
  if (o.pass) o.detail = "13 -> 7 coherent, 13 -> 12 bisim";
  return o;
}

Outcome AttackDetection() {
  Outcome o;
  const ProtocolFile file = parse_protocol_file(Slurp("display.prot"));
  const Transducer p = compile_regex(file.regex, file.signature);
  const Trace legal = parse_trace(Slurp("legal.trc"));
  const Trace attack = parse_trace(Slurp("attack.trc"));
  o.Require(legal.size() == 10, "legal trace is not 10 moves");
  o.Require(monitor(p, legal).status == VerdictStatus::kOk,
            "legal trace rejected");
  const Verdict v = monitor(p, attack);
  o.Require(v.status == VerdictStatus::kViolation && v.index == 2 &&
                v.offending == Round{"d4"},
            "attack not flagged at index 2");
  // Moves enabled after [q5, r2], by regex derivatives.
  const testing::DerivativeOracle oracle(file.regex);
  std::set<Round> enabled;
  for (const Label &l : file.signature.universe())
    if (oracle.PrefixMember({"q5", "r2", l})) enabled.insert(Round{l});
  o.Require(std::set<Round>(v.expected.begin(), v.expected.end()) == enabled,
            "expected set differs from the derivative oracle");
  std::ostringstream out, err;
  const int ok = cli_main({"monitor", "--protocol", Fixture("display.prot"),
                           "--trace", Fixture("legal.trc")},
                          out, err);
  const int bad = cli_main({"monitor", "--protocol", Fixture("display.prot"),
                            "--trace", Fixture("attack.trc")},
                           out, err);
  o.Require(ok == 0 && bad == 3, "exit codes are not 0 and 3");
  if (o.pass) o.detail = to_string(v);
  return o;
}

bool SameClass(const std::vector<std::vector<StateName>> &classes,
               const StateName &x, const StateName &y) {
  for (const auto &c : classes)
    if (std::count(c.begin(), c.end(), x) && std::count(c.begin(), c.end(), y))
      return true;
  return false;
}

// Signatures with one to three labels.
std::vector<Signature> SmallSignatures() {
  return {Signature{{"a"}, {}}, Signature{{"a"}, {"b"}},
          Signature{{"a", "c"}, {"b"}}};
}

Outcome Soundness() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(kSeed);
  const std::vector<Signature> sigs = SmallSignatures();
  int checked = 0, coherent_only = 0;
  for (int i = 0; i < 200; ++i) {
    const Signature &sig = sigs[i % sigs.size()];
    const Transducer t = testing::RandomTransducer(
        rng, sig, {.max_states = 6, .max_transitions = 10});
    const Transducer p = testing::RandomTransducer(
        rng, sig, {.max_states = 4, .max_transitions = 10, .prefix = "p"});
    const auto classes = bisim_classes(t);
    for (const auto &[x, y] : equivalence_pairs(t, p)) {
      ++checked;
      coherent_only += !SameClass(classes, x, y);
      o.Require(coherent_equiv_bounded(t, quotient(t, x, y), p, 8),
                "quotient by (" + x + "," + y + ") distinguishable in instance " +
                    std::to_string(i));
    }
  }
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  o.Require(seconds < kSoundnessLimit, "too slow");
  if (o.pass) o.detail = std::to_string(checked) + " quotients (" +
                        std::to_string(coherent_only) +
                        " not bisimilar) over 200 pairs";
  return o;
}

Outcome OracleCensus() {
  Outcome o;
  std::mt19937 rng(kSeed + 4);
  const Signature sig{{"a"}, {"b"}};
  const std::vector<Transducer> protocols{
      empty_protocol(sig), universal_protocol(sig, all_rounds(sig)),
      Pr1Shaped(sig)};
  for (int i = 0; i < 500; ++i) {
    const Transducer t =
        testing::RandomTransducer(rng, sig, {.min_states = 1, .max_states = 4});
    for (const Transducer &p : protocols) {
      const std::vector<StatePair> got = coherent_simulation(t, p).pairs();
      const auto want = testing::BruteForceSimulation(t, p).Greatest();
      o.Require(std::set<StatePair>(got.begin(), got.end()) == want,
                "relation differs from the oracle in instance " +
                    std::to_string(i));
      o.Require(coherent_simulation_serial(t, p) == coherent_simulation(t, p),
                "serial and parallel differ in instance " + std::to_string(i));
    }
  }
  if (o.pass) o.detail = "500 transducers x 3 protocols";
  return o;
}

Outcome Fix3() {
  Outcome o;
  const Transducer t = parse_transducer(Slurp("fix3.fst"));
  const Transducer p = load_protocol(Slurp("pr1.prot"));
  const Minimized c = coherent_minimize(t, p);
  o.Require(c.result.num_states() == 4, "coherent minimum is not 4 states");
  o.Require(bisim_minimize(t).num_states() == 5,
            "bisimulation minimum is not 5 states");
  bool pq = false;
  for (const Merge &m : c.log)
    pq |= std::minmax(m.kept, m.removed) == std::minmax<StateName>("P", "Q");
  o.Require(pq, "merge log lacks {P,Q}");
  o.Require(coherent_equiv_bounded(t, c.result, p, 8),
            "minimised FIX3 distinguishable at depth 8");
  if (o.pass) o.detail = "8 -> 4 coherent, 8 -> 5 bisim";
  return o;
}

Outcome Algebra() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(kSeed + 6);
  const Signature ab{{"a"}, {"b"}}, bc{{"b"}, {"c"}};
  for (int i = 0; i < 100; ++i) {
    const Transducer t = testing::RandomTransducer(rng, ab, {});
    const Transducer u = testing::RandomTransducer(rng, ab, {});
    o.Require(testing::AsSet(traces_upto(intersect(t, u), 6)) ==
                  testing::Intersection(testing::AsSet(traces_upto(t, 6)),
                                        testing::AsSet(traces_upto(u, 6))),
              "intersection differs in instance " + std::to_string(i));
  }
  for (int i = 0; i < 100; ++i) {
    const Transducer t = testing::RandomTransducer(rng, ab, {});
    const Transducer v = testing::RandomTransducer(rng, bc, {});
    const TraceSet tt = traces_upto(t, 4), tv = traces_upto(v, 4);
    o.Require(testing::AsSet(traces_upto(interact(t, v), 4)) ==
                  testing::InteractByExtension(tt, tv),
              "interaction differs in instance " + std::to_string(i));
    o.Require(testing::AsSet(traces_upto(compose(t, v), 4)) ==
                  testing::ComposeByExtension(tt, tv),
              "composition differs in instance " + std::to_string(i));
  }
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  o.Require(seconds < kAlgebraLimit, "too slow");
  if (o.pass) o.detail = "100 pairs per operation";
  return o;
}

// Instances are kept only when the merged states are reachable and not
// bisimilar, and the composed protocol has at least 4 traces of length <= 4
// through the composed transducer.
Outcome Compositionality() {
  Outcome o;
  std::mt19937 rng(kSeed + 7);
  const Signature ab{{"a"}, {"b"}}, bc{{"b"}, {"c"}};
  int instances = 0;
  for (int attempt = 0; instances < 50 && attempt < 1000000; ++attempt) {
    const Transducer t = testing::RandomTransducer(
        rng, ab,
        {.min_states = 3, .max_states = 6, .max_transitions = 12,
         .empty_round = 0.0});
    const Transducer p = testing::RandomTransducer(
        rng, ab,
        {.min_states = 2, .max_states = 4, .max_transitions = 10,
         .empty_round = 0.0, .prefix = "p"});
    const std::vector<bool> live = reachable_states(t);
    const auto classes = bisim_classes(t);
    std::vector<StatePair> pairs;
    for (const StatePair &pr : equivalence_pairs(t, p))
      if (live[t.index_of(pr.first)] && live[t.index_of(pr.second)] &&
          !SameClass(classes, pr.first, pr.second))
        pairs.push_back(pr);
    if (pairs.empty()) continue;
    const auto &[x, y] = pairs[rng() % pairs.size()];
    const Transducer t2 = quotient(t, x, y);
    const Transducer t3 = testing::RandomTransducer(
        rng, bc, {.min_states = 2, .max_transitions = 10, .empty_round = 0.0});
    const Transducer p2 = testing::RandomTransducer(
        rng, bc,
        {.min_states = 2, .max_states = 3, .max_transitions = 8,
         .empty_round = 0.0, .prefix = "q"});
    const Transducer c1 = compose(t, t3), c2 = compose(t2, t3);
    const Transducer pp = compose(p, p2);
    if (traces_upto(intersect(c1, pp), 4).traces.size() < 4) continue;
    ++instances;
    o.Require(coherent_equiv_bounded(c1, c2, pp, 4),
              "composed quotient distinguishable in instance " +
                  std::to_string(instances));
  }
  o.Require(instances == 50, "could not manufacture 50 instances");
  if (o.pass) o.detail = "50 non-bisimilar merges";
  return o;
}

Outcome QuotientOnlyAddsTraces() {
  Outcome o;
  std::mt19937 rng(kSeed + 8);
  const std::vector<Signature> sigs = SmallSignatures();
  for (int i = 0; i < 100; ++i) {
    const Transducer t = testing::RandomTransducer(
        rng, sigs[i % sigs.size()], {.min_states = 2, .max_states = 6});
    const int a = static_cast<int>(rng() % t.num_states());
    int b = static_cast<int>(rng() % (t.num_states() - 1));
    if (b >= a) ++b;
    const std::set<Trace> before = testing::AsSet(traces_upto(t, 6));
    const std::set<Trace> after =
        testing::AsSet(traces_upto(quotient(t, t.name(a), t.name(b)), 6));
    o.Require(std::includes(after.begin(), after.end(), before.begin(),
                            before.end()),
              "quotient lost a trace in instance " + std::to_string(i));
  }
  if (o.pass) o.detail = "100 quotients";
  return o;
}

Outcome Adder() {
  Outcome o;
  const Sfst adder = parse_sfst(Slurp("adder.sfst"));
  auto x = [](std::int64_t v) { return ValuedRound{{"x", v}}; };
  o.Require(!sfst_run(adder, {x(2), x(3), {{"r", 5}}}).empty(),
            "rejects x=2, x=3, r=5");
  for (std::int64_t r = -4; r <= 4; ++r)
    o.Require(sfst_run(adder, {x(2), x(-3), {{"r", r}}}).empty(),
              "accepts x=2, x=-3, r=" + std::to_string(r));
  o.Require(sfst_run(adder, {x(2), x(-3), {{"r", std::nullopt}}}).empty(),
            "accepts x=2, x=-3, r without a value");
  const Transducer e = expand(adder, -2, 2);
  std::mt19937 rng(kSeed + 9);
  for (int i = 0; i < 500; ++i) {
    ValuedTrace t;
    const int len = static_cast<int>(rng() % 5);
    for (int k = 0; k < len; ++k)
      t.push_back({{rng() % 3 ? "x" : "r",
                    static_cast<std::int64_t>(rng() % 5) - 2}});
    const std::optional<Trace> et = expanded_trace(adder, t, -2, 2);
    o.Require(et.has_value(), "trace outside the domain");
    if (et)
      o.Require(accepts(e, *et) == !sfst_run(adder, t).empty(),
                "expansion disagrees on trace " + std::to_string(i));
  }
  if (o.pass) o.detail = "500 valued traces over [-2..2]";
  return o;
}

Outcome LimitCases() {
  Outcome o;
  std::mt19937 rng(kSeed + 10);
  const Signature sig{{"a"}, {"b"}};
  const Transducer empty = empty_protocol(sig);
  int quotients = 0;
  for (int i = 0; i < 50; ++i) {
    const Transducer t = testing::RandomTransducer(
        rng, sig, {.min_states = 2, .max_states = 5});
    for (int a = 0; a < t.num_states(); ++a)
      for (int b = a + 1; b < t.num_states(); ++b) {
        ++quotients;
        o.Require(coherent_equiv_bounded(t, quotient(t, t.name(a), t.name(b)),
                                         empty, 8),
                  "empty protocol distinguishes a quotient");
      }
  }
  const Transducer universal = universal_protocol(sig, all_rounds(sig));
  for (int i = 0; i < 50; ++i) {
    const Transducer d =
        testing::RandomDeterministic(rng, sig, {.max_states = 5});
    const Transducer c = coherent_minimize(d, universal).result;
    const Transducer b = bisim_minimize(d);
    o.Require(c.num_states() == b.num_states(),
              "state counts differ in instance " + std::to_string(i));
    o.Require(traces_upto(c, 8) == traces_upto(b, 8),
              "languages differ in instance " + std::to_string(i));
  }
  if (o.pass)
    o.detail = std::to_string(quotients) + " empty-protocol quotients, 50 "
               "deterministic transducers";
  return o;
}

}  // namespace
}  // namespace cohmin

int main() {
  using namespace cohmin;
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
      {"in-place map reproduction", InplaceMap},
      {"attack detection", AttackDetection},
      {"soundness of quotients", Soundness},
      {"greatest fixpoint vs oracle", OracleCensus},
      {"FIX3 separation", Fix3},
      {"algebra soundness", Algebra},
      {"compositionality", Compositionality},
      {"quotients only add traces", QuotientOnlyAddsTraces},
      {"symbolic adder adequacy", Adder},
      {"limit cases", LimitCases},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " "
              << criteria[i].first << ": " << o.detail << " (" << std::fixed
              << std::setprecision(2) << seconds << " s)" << std::endl;
  }
  return failed;
}
