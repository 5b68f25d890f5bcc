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

// Symbolic finite-state transducers: control states plus integer registers
// (initially 0), with guarded transitions that update registers and output
// ports. A port's value is referenced by the port's name.

#ifndef COHMIN_SFST_HPP_
#define COHMIN_SFST_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cohmin/coherence.hpp"
#include "cohmin/expr.hpp"
#include "cohmin/kernel.hpp"

namespace cohmin {

struct Update {
  std::string target;  // register, or output port in the transition's round
  Expr expr;
};

struct SfstTransition {
  StateName source;
  Round round;
  Expr guard;
  std::vector<Update> updates;
  StateName target;
};

struct SfstSpec {
  Signature signature;
  std::vector<StateName> states;
  std::vector<std::string> registers;
  StateName initial;
  std::vector<SfstTransition> transitions;
};

class Sfst {
 public:
  struct Arc {
    int source;
    Round round;
    Expr guard;
    std::vector<Update> updates;  // sorted by target, identities removed
    int target;
    // "when <guard> do <updates>" in canonical text; arcs with equal source,
    // round, label and target are duplicates.
    std::string label;
  };

  const Signature &signature() const { return signature_; }
  const std::vector<StateName> &states() const { return states_; }
  int num_states() const { return static_cast<int>(states_.size()); }
  const std::vector<std::string> &registers() const { return registers_; }
  int initial() const { return initial_; }
  const StateName &initial_name() const { return states_[initial_]; }
  const StateName &name(int state) const { return states_[state]; }
  // Sorted by (source, round, label, target).
  const std::vector<Arc> &arcs() const { return arcs_; }
  std::span<const Arc> arcs_from(int state) const;
  std::optional<int> find(std::string_view state) const;
  int index_of(std::string_view state) const;

  SfstSpec spec() const;
  // Ports whose values are referenced or assigned anywhere.
  const std::set<Label> &valued_ports() const { return valued_ports_; }

  bool operator==(const Sfst &other) const;

 private:
  friend Sfst validate_sfst(const SfstSpec &spec);

  Signature signature_;
  std::vector<StateName> states_;
  std::vector<std::string> registers_;
  int initial_ = 0;
  std::vector<Arc> arcs_;
  std::set<Label> valued_ports_;
  std::vector<std::size_t> offsets_;
};

// "when g do a := e, b := f" with the do-part omitted when there are no
// updates.
std::string transition_label(const Expr &guard,
                             const std::vector<Update> &updates);

// Kernel checks on the control skeleton (ValidationError), then: register
// names are identifiers distinct from port labels (kInvalidModel); guards
// are boolean and update right-hand sides integer (kTypeError); references
// are registers or input ports in the round, update targets are registers
// or output ports in the round (kUnboundReference); at most one update per
// target (kInvalidModel). Identity updates r := r are dropped and duplicate
// transitions collapse.
Sfst validate_sfst(const SfstSpec &spec);

// Control skeleton: guards and updates forgotten.
Transducer skeleton(const Sfst &t);

// Every guard is the literal true and every update set is empty.
bool is_symbolic_protocol(const Sfst &t);

// A protocol SFST as an explicit transducer. Throws Error(kNotAProtocol).
Transducer protocol_transducer(const Sfst &p);

// A port without a value carries nullopt (the unit value).
using ValuedRound = std::map<Label, std::optional<std::int64_t>>;
using ValuedTrace = std::vector<ValuedRound>;

struct Configuration {
  StateName state;
  std::map<std::string, std::int64_t> registers;

  auto operator<=>(const Configuration &) const = default;
  bool operator==(const Configuration &) const = default;
};

std::string to_string(const Configuration &c);

// A transition fires on a valued round when its round equals the round's
// labels, its guard holds, and every updated output port carries the
// computed value. Register updates are simultaneous. Evaluation errors are
// rethrown with the round index.
std::set<Configuration> sfst_run(const Sfst &t, const ValuedTrace &trace);

inline constexpr std::size_t kDefaultExpandCap = 100'000;

// Label of port `port` carrying `value`: "x__2", "x__n1".
Label valued_label(const Label &port, std::int64_t value);

// Explicit transducer over (control state, registers) configurations
// reachable with port values in [lo, hi]. Valued ports become one label
// per value; other ports keep their names. Throws Error(kDomainExceeded)
// when a literal lies outside the domain and Error(kResourceLimit) past
// `cap` configurations.
Transducer expand(const Sfst &t, std::int64_t lo, std::int64_t hi,
                  std::size_t cap = kDefaultExpandCap);

// The trace over the expansion's labels, or nullopt when a valued port
// carries no value or a value outside [lo, hi].
std::optional<Trace> expanded_trace(const Sfst &t, const ValuedTrace &trace,
                                    std::int64_t lo, std::int64_t hi);

// Lifts a control-only protocol over the same ports to the expansion's
// labels of `model`: each valued port event becomes any of its values.
Transducer expand_protocol(const Transducer &p, const Sfst &model,
                           std::int64_t lo, std::int64_t hi);

struct SymbolicOptions {
  EquivMode mode = EquivMode::kStructural;
  Domain domain;
  bool keep_unreachable = false;
};

// Greatest SFST-coherent simulation over control states: matched arcs need
// equivalent guards and per-target equivalent updates; the protocol test
// runs on the control skeleton. Throws Error(kNotAProtocol).
CoherenceRelation sfst_coherent_simulation(const Sfst &t, const Sfst &p,
                                           const SymbolicOptions &options = {});
CoherenceRelation sfst_coherent_simulation(const Sfst &t, const Transducer &p,
                                           const SymbolicOptions &options = {});

// Merges control state s2 into s1 (the smaller name survives).
Sfst sfst_quotient(const Sfst &t, std::string_view s1, std::string_view s2);

struct SfstMinimized {
  Sfst result;
  std::vector<Merge> log;
};

SfstMinimized sfst_coherent_minimize(const Sfst &t, const Sfst &p,
                                     const SymbolicOptions &options = {});
SfstMinimized sfst_coherent_minimize(const Sfst &t, const Transducer &p,
                                     const SymbolicOptions &options = {});

std::vector<std::vector<StateName>> sfst_bisim_classes(
    const Sfst &t, const SymbolicOptions &options = {});
Sfst sfst_bisim_minimize(const Sfst &t, const SymbolicOptions &options = {});

// Equivalence classes implied by a merge log, each sorted, ordered by least
// member; singletons omitted.
std::vector<std::vector<StateName>> merge_classes(const std::vector<Merge> &log);

}  // namespace cohmin

#endif  // COHMIN_SFST_HPP_
