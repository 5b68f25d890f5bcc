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

// Coherent simulation and minimisation of explicit transducers under a
// protocol, with conventional bisimulation as the baseline.
//
// (x, y) is in a coherent simulation R when
//   1. every (y, V, r2) is matched by some (x, V, r1) with (r1, r2) in R;
//   2. every V enabled at x but not at y extends no protocol-legal witness
//      trace of y.
// Condition 2 does not depend on R and condition 1 is monotone in R, so a
// greatest coherent simulation exists; it is reflexive.

#ifndef COHMIN_COHERENCE_HPP_
#define COHMIN_COHERENCE_HPP_

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cohmin/coherence_core.hpp"
#include "cohmin/kernel.hpp"

namespace cohmin {

using StatePair = std::pair<StateName, StateName>;

class CoherenceRelation {
 public:
  CoherenceRelation(std::vector<StateName> states, core::Relation relation);

  const std::vector<StateName> &states() const { return states_; }
  bool contains(std::string_view x, std::string_view y) const;
  // Ordered pairs, sorted.
  std::vector<StatePair> pairs() const;
  // Unordered non-identity pairs {a, b} with a < b related both ways.
  std::vector<StatePair> equivalence_pairs() const;
  const core::Relation &matrix() const { return relation_; }

  bool operator==(const CoherenceRelation &) const = default;

 private:
  int index(std::string_view state) const;

  std::vector<StateName> states_;
  core::Relation relation_;
};

// Pairs (s, p) such that some trace leads T to s and P to p. Throws
// Error(kSignatureMismatch).
std::set<StatePair> product_reach(const Transducer &t, const Transducer &p);

// Some protocol-legal witness trace of s can be extended by V.
bool protocol_extendable(const Transducer &t, const Transducer &p,
                         std::string_view s, const Round &v);

// Greatest coherent simulation. The parallel and serial versions return
// identical relations.
CoherenceRelation coherent_simulation(const Transducer &t,
                                      const Transducer &p);
CoherenceRelation coherent_simulation_serial(const Transducer &t,
                                             const Transducer &p);

std::vector<StatePair> equivalence_pairs(const Transducer &t,
                                         const Transducer &p);

// Merges s1 and s2 into the lexicographically smaller name. Throws
// Error(kUnknownState) or Error(kSameState).
Transducer quotient(const Transducer &t, std::string_view s1,
                    std::string_view s2);

struct Merge {
  StateName kept;
  StateName removed;

  bool operator==(const Merge &) const = default;
};

// "merge <removed> -> <kept>" per line.
std::string merge_log_to_string(const std::vector<Merge> &log);

struct MinimizeOptions {
  bool keep_unreachable = false;
};

struct Minimized {
  Transducer result;
  std::vector<Merge> log;
};

// Repeatedly quotients the lexicographically least equivalence pair,
// recomputing the relation after every merge, then drops unreachable
// states.
Minimized coherent_minimize(const Transducer &t, const Transducer &p,
                            const MinimizeOptions &options = {});

// Blocks of the coarsest stable partition, each sorted, ordered by their
// least member.
std::vector<std::vector<StateName>> bisim_classes(const Transducer &t);

// Quotient by the coarsest stable partition; each block is named after its
// least member.
Transducer bisim_minimize(const Transducer &t,
                          const MinimizeOptions &options = {});

// traces_upto(t n p, k) == traces_upto(u n p, k).
bool coherent_equiv_bounded(const Transducer &t, const Transducer &u,
                            const Transducer &p, int k,
                            std::size_t cap = kDefaultTraceCap);

}  // namespace cohmin

#endif  // COHMIN_COHERENCE_HPP_
