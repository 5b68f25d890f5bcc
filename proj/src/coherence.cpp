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

#include "cohmin/coherence.hpp"

#include <algorithm>
#include <map>

#include "cohmin/algebra.hpp"

namespace cohmin {

CoherenceRelation::CoherenceRelation(std::vector<StateName> states,
                                     core::Relation relation)
    : states_(std::move(states)), relation_(std::move(relation)) {}

int CoherenceRelation::index(std::string_view state) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), state);
  if (it == states_.end() || *it != state)
    throw Error(ErrorKind::kUnknownState, std::string(state),
                "unknown state '" + std::string(state) + "'");
  return static_cast<int>(it - states_.begin());
}

bool CoherenceRelation::contains(std::string_view x,
                                 std::string_view y) const {
  return relation_.contains(index(x), index(y));
}

std::vector<StatePair> CoherenceRelation::pairs() const {
  std::vector<StatePair> out;
  for (int x = 0; x < relation_.n; ++x)
    for (int y = 0; y < relation_.n; ++y)
      if (relation_.contains(x, y)) out.emplace_back(states_[x], states_[y]);
  return out;
}

std::vector<StatePair> CoherenceRelation::equivalence_pairs() const {
  std::vector<StatePair> out;
  for (int a = 0; a < relation_.n; ++a)
    for (int b = a + 1; b < relation_.n; ++b)
      if (relation_.contains(a, b) && relation_.contains(b, a))
        out.emplace_back(states_[a], states_[b]);
  return out;
}

namespace {

void RequireSameSignature(const Transducer &t, const Transducer &p) {
  if (!same_universe(t.signature(), p.signature()))
    throw Error(ErrorKind::kSignatureMismatch, "",
                "transducer and protocol have different label universes");
}

}  // namespace

std::set<StatePair> product_reach(const Transducer &t, const Transducer &p) {
  RequireSameSignature(t, p);
  const std::vector<std::uint8_t> reach = core::product_reach(t, p);
  const int m = p.num_states();
  std::set<StatePair> out;
  for (int s = 0; s < t.num_states(); ++s)
    for (int q = 0; q < m; ++q)
      if (reach[s * m + q]) out.emplace(t.name(s), p.name(q));
  return out;
}

bool protocol_extendable(const Transducer &t, const Transducer &p,
                         std::string_view s, const Round &v) {
  RequireSameSignature(t, p);
  const int state = t.index_of(s);
  const std::vector<std::uint8_t> reach = core::product_reach(t, p);
  const int m = p.num_states();
  for (int q = 0; q < m; ++q) {
    if (!reach[state * m + q]) continue;
    for (const auto &a : p.arcs_from(q))
      if (a.round == v) return true;
  }
  return false;
}

CoherenceRelation coherent_simulation(const Transducer &t,
                                      const Transducer &p) {
  RequireSameSignature(t, p);
  const core::Graph g = core::explicit_graph(t, p);
  return {t.states(), core::prune_parallel(g, core::initial_relation(g))};
}

CoherenceRelation coherent_simulation_serial(const Transducer &t,
                                             const Transducer &p) {
  RequireSameSignature(t, p);
  const core::Graph g = core::explicit_graph(t, p);
  return {t.states(), core::prune_serial(g, core::initial_relation(g))};
}

std::vector<StatePair> equivalence_pairs(const Transducer &t,
                                         const Transducer &p) {
  return coherent_simulation(t, p).equivalence_pairs();
}

Transducer quotient(const Transducer &t, std::string_view s1,
                    std::string_view s2) {
  const int a = t.index_of(s1);
  const int b = t.index_of(s2);
  if (a == b)
    throw Error(ErrorKind::kSameState, std::string(s1),
                "cannot merge a state with itself");
  const StateName kept = t.name(std::min(a, b));
  const StateName removed = t.name(std::max(a, b));
  auto rename = [&](const StateName &s) { return s == removed ? kept : s; };
  TransducerSpec spec = t.spec();
  std::erase(spec.states, removed);
  spec.initial = rename(spec.initial);
  for (Transition &tr : spec.transitions) {
    tr.source = rename(tr.source);
    tr.target = rename(tr.target);
  }
  return validate(spec);
}

std::string merge_log_to_string(const std::vector<Merge> &log) {
  std::string out;
  for (const Merge &m : log) out += "merge " + m.removed + " -> " + m.kept + "\n";
  return out;
}

Minimized coherent_minimize(const Transducer &t, const Transducer &p,
                            const MinimizeOptions &options) {
  RequireSameSignature(t, p);
  Minimized out{t, {}};
  while (true) {
    const core::Graph g = core::explicit_graph(out.result, p);
    const core::Relation r =
        core::prune_parallel(g, core::initial_relation(g));
    const auto [a, b] = core::least_equivalence_pair(r);
    if (a < 0) break;
    out.log.push_back({out.result.name(a), out.result.name(b)});
    out.result = quotient(out.result, out.result.name(a), out.result.name(b));
  }
  if (!options.keep_unreachable) out.result = drop_unreachable(out.result);
  return out;
}

namespace {

core::Graph BisimGraph(const Transducer &t) {
  // Protocol extension plays no part in bisimulation.
  const core::RoundTable table = core::round_table(t);
  core::Graph g;
  g.num_states = t.num_states();
  g.arcs.resize(g.num_states);
  g.extendable.resize(g.num_states);
  for (const auto &a : t.arcs()) {
    const int id = table.id(a.round);
    g.arcs[a.source].push_back({id, id, a.target});
  }
  for (auto &arcs : g.arcs) std::sort(arcs.begin(), arcs.end());
  return g;
}

}  // namespace

std::vector<std::vector<StateName>> bisim_classes(const Transducer &t) {
  const std::vector<int> block = core::bisim_partition(BisimGraph(t));
  std::vector<std::vector<StateName>> out;
  for (int s = 0; s < t.num_states(); ++s) {
    if (block[s] >= static_cast<int>(out.size())) out.resize(block[s] + 1);
    out[block[s]].push_back(t.name(s));
  }
  return out;
}

Transducer bisim_minimize(const Transducer &t,
                          const MinimizeOptions &options) {
  std::map<StateName, StateName> rep;
  for (const auto &cls : bisim_classes(t))
    for (const StateName &s : cls) rep[s] = cls.front();
  TransducerSpec spec = t.spec();
  spec.states.clear();
  for (const auto &[s, r] : rep)
    if (s == r) spec.states.push_back(s);
  spec.initial = rep[spec.initial];
  for (Transition &tr : spec.transitions) {
    tr.source = rep[tr.source];
    tr.target = rep[tr.target];
  }
  Transducer out = validate(spec);
  return options.keep_unreachable ? out : drop_unreachable(out);
}

bool coherent_equiv_bounded(const Transducer &t, const Transducer &u,
                            const Transducer &p, int k, std::size_t cap) {
  return traces_upto(intersect(t, p), k, cap).traces ==
         traces_upto(intersect(u, p), k, cap).traces;
}

}  // namespace cohmin
