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

// Index-level machinery shared by the explicit and the symbolic coherence
// computations. States are dense integers; every arc carries a match key
// (arcs of related states must agree on it) and the id of its round in the
// control skeleton (used by the protocol-extension test).

#ifndef COHMIN_COHERENCE_CORE_HPP_
#define COHMIN_COHERENCE_CORE_HPP_

#include <cstdint>
#include <vector>

#include "cohmin/kernel.hpp"

namespace cohmin::core {

struct Arc {
  int key;
  int round;
  int target;

  auto operator<=>(const Arc &) const = default;
  bool operator==(const Arc &) const = default;
};

struct Graph {
  int num_states = 0;
  // Per state, sorted by (key, round, target).
  std::vector<std::vector<Arc>> arcs;
  // Per state, sorted round ids V with omega(s).V meeting the protocol.
  std::vector<std::vector<int>> extendable;
};

// Row-major n x n matrix; related[x * n + y] != 0 iff (x, y) is in R.
struct Relation {
  int n = 0;
  std::vector<std::uint8_t> related;

  bool contains(int x, int y) const { return related[x * n + y] != 0; }
  bool operator==(const Relation &) const = default;
};

// Interned skeleton rounds, with ids in sorted order.
struct RoundTable {
  std::vector<Round> rounds;

  int id(const Round &round) const;  // -1 when absent
};

RoundTable round_table(const Transducer &skeleton);

// Pairs (s, p) of state indices jointly reachable in skeleton x protocol;
// reach[s * |P| + p] != 0.
std::vector<std::uint8_t> product_reach(const Transducer &skeleton,
                                        const Transducer &protocol);

// For every skeleton state the round ids (from `table`) that extend some
// protocol-legal witness of that state.
std::vector<std::vector<int>> extendable_rounds(const Transducer &skeleton,
                                                const Transducer &protocol,
                                                const RoundTable &table);

// Graph whose match key is the skeleton round itself.
Graph explicit_graph(const Transducer &t, const Transducer &protocol);

// Condition 2 applied once to S x S.
Relation initial_relation(const Graph &g);

// Greatest fixpoint of condition-1 pruning from `r`. The serial version
// updates in place; the parallel one evaluates every row of a snapshot
// concurrently and repeats until nothing changes. Both reach the same
// fixpoint because pruning is monotone.
Relation prune_serial(const Graph &g, Relation r);
Relation prune_parallel(const Graph &g, Relation r);

// Lexicographically least pair {a, b} (by state index, a < b) related in
// both directions, or {-1, -1}.
std::pair<int, int> least_equivalence_pair(const Relation &r);

// Coarsest partition stable under every (key, target block) move. Block ids
// are dense and ordered by the least state in each block.
std::vector<int> bisim_partition(const Graph &g);

}  // namespace cohmin::core

#endif  // COHMIN_COHERENCE_CORE_HPP_
