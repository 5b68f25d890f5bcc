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

#include "cohmin/coherence_core.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace cohmin::core {

int RoundTable::id(const Round &round) const {
  auto it = std::lower_bound(rounds.begin(), rounds.end(), round);
  if (it == rounds.end() || *it != round) return -1;
  return static_cast<int>(it - rounds.begin());
}

RoundTable round_table(const Transducer &skeleton) {
  RoundTable table;
  for (const auto &a : skeleton.arcs()) table.rounds.push_back(a.round);
  std::sort(table.rounds.begin(), table.rounds.end());
  table.rounds.erase(std::unique(table.rounds.begin(), table.rounds.end()),
                     table.rounds.end());
  return table;
}

std::vector<std::uint8_t> product_reach(const Transducer &skeleton,
                                        const Transducer &protocol) {
  const int m = protocol.num_states();
  std::vector<std::uint8_t> reach(skeleton.num_states() * m, 0);
  std::deque<std::pair<int, int>> queue{{skeleton.initial(),
                                         protocol.initial()}};
  reach[skeleton.initial() * m + protocol.initial()] = 1;
  while (!queue.empty()) {
    auto [s, p] = queue.front();
    queue.pop_front();
    // Both arc lists are sorted by round: merge-join on it.
    auto as = skeleton.arcs_from(s);
    auto ps = protocol.arcs_from(p);
    auto a = as.begin();
    auto b = ps.begin();
    while (a != as.end() && b != ps.end()) {
      if (a->round < b->round) {
        ++a;
      } else if (b->round < a->round) {
        ++b;
      } else {
        auto a_end = a, b_end = b;
        while (a_end != as.end() && a_end->round == a->round) ++a_end;
        while (b_end != ps.end() && b_end->round == b->round) ++b_end;
        for (auto x = a; x != a_end; ++x)
          for (auto y = b; y != b_end; ++y) {
            std::uint8_t &seen = reach[x->target * m + y->target];
            if (!seen) {
              seen = 1;
              queue.emplace_back(x->target, y->target);
            }
          }
        a = a_end;
        b = b_end;
      }
    }
  }
  return reach;
}

std::vector<std::vector<int>> extendable_rounds(const Transducer &skeleton,
                                                const Transducer &protocol,
                                                const RoundTable &table) {
  const int m = protocol.num_states();
  const std::vector<std::uint8_t> reach = product_reach(skeleton, protocol);
  std::vector<std::vector<int>> out(skeleton.num_states());
  for (int s = 0; s < skeleton.num_states(); ++s) {
    for (int p = 0; p < m; ++p) {
      if (!reach[s * m + p]) continue;
      for (const auto &b : protocol.arcs_from(p))
        if (int id = table.id(b.round); id >= 0) out[s].push_back(id);
    }
    std::sort(out[s].begin(), out[s].end());
    out[s].erase(std::unique(out[s].begin(), out[s].end()), out[s].end());
  }
  return out;
}

Graph explicit_graph(const Transducer &t, const Transducer &protocol) {
  const RoundTable table = round_table(t);
  Graph g;
  g.num_states = t.num_states();
  g.arcs.resize(g.num_states);
  for (const auto &a : t.arcs()) {
    const int id = table.id(a.round);
    g.arcs[a.source].push_back({id, id, a.target});
  }
  for (auto &arcs : g.arcs) std::sort(arcs.begin(), arcs.end());
  g.extendable = extendable_rounds(t, protocol, table);
  return g;
}

namespace {

std::vector<int> Enabled(const std::vector<Arc> &arcs) {
  std::vector<int> out;
  for (const Arc &a : arcs) out.push_back(a.round);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Condition 1 for (x, y) against `r`.
bool Matches(const Graph &g, const Relation &r, int x, int y) {
  const std::vector<Arc> &xs = g.arcs[x];
  for (const Arc &b : g.arcs[y]) {
    auto it = std::lower_bound(
        xs.begin(), xs.end(), b.key,
        [](const Arc &a, int key) { return a.key < key; });
    bool matched = false;
    for (; it != xs.end() && it->key == b.key; ++it)
      if (r.contains(it->target, b.target)) {
        matched = true;
        break;
      }
    if (!matched) return false;
  }
  return true;
}

}  // namespace

Relation initial_relation(const Graph &g) {
  const int n = g.num_states;
  Relation r{n, std::vector<std::uint8_t>(n * n, 1)};
  std::vector<std::vector<int>> enabled(n);
  for (int s = 0; s < n; ++s) enabled[s] = Enabled(g.arcs[s]);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int v : enabled[x])
        if (!std::binary_search(enabled[y].begin(), enabled[y].end(), v) &&
            std::binary_search(g.extendable[y].begin(),
                               g.extendable[y].end(), v)) {
          r.related[x * n + y] = 0;
          break;
        }
  return r;
}

Relation prune_serial(const Graph &g, Relation r) {
  const int n = g.num_states;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (r.related[x * n + y] && !Matches(g, r, x, y)) {
          r.related[x * n + y] = 0;
          changed = true;
        }
  }
  return r;
}

Relation prune_parallel(const Graph &g, Relation r) {
  const int n = g.num_states;
  int changed = 1;
  while (changed) {
    changed = 0;
    const Relation snapshot = r;
#pragma omp parallel for schedule(dynamic) reduction(| : changed)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (snapshot.related[x * n + y] && !Matches(g, snapshot, x, y)) {
          r.related[x * n + y] = 0;
          changed = 1;
        }
  }
  return r;
}

std::pair<int, int> least_equivalence_pair(const Relation &r) {
  for (int a = 0; a < r.n; ++a)
    for (int b = a + 1; b < r.n; ++b)
      if (r.contains(a, b) && r.contains(b, a)) return {a, b};
  return {-1, -1};
}

std::vector<int> bisim_partition(const Graph &g) {
  const int n = g.num_states;
  std::vector<int> block(n, 0);
  int count = n == 0 ? 0 : 1;
  while (true) {
    std::map<std::pair<int, std::vector<std::pair<int, int>>>, int> ids;
    std::vector<int> next(n);
    for (int s = 0; s < n; ++s) {
      std::vector<std::pair<int, int>> moves;
      for (const Arc &a : g.arcs[s]) moves.emplace_back(a.key, block[a.target]);
      std::sort(moves.begin(), moves.end());
      moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
      auto [it, inserted] = ids.emplace(
          std::make_pair(block[s], std::move(moves)),
          static_cast<int>(ids.size()));
      next[s] = it->second;
    }
    block = std::move(next);
    if (static_cast<int>(ids.size()) == count) return block;
    count = static_cast<int>(ids.size());
  }
}

}  // namespace cohmin::core
