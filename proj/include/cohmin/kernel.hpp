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

// Core data model: signatures, rounds, traces and explicit finite-state
// transducers with their exact finite semantics. Transducers have no
// accepting states; the language of T is every trace that reaches some
// state from the initial one, so it is prefix-closed by construction.

#ifndef COHMIN_KERNEL_HPP_
#define COHMIN_KERNEL_HPP_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cohmin/error.hpp"

namespace cohmin {

using Label = std::string;
using StateName = std::string;

// Letters, digits and underscore; must not start with a digit.
bool is_identifier(std::string_view text);

// A (possibly empty) set of simultaneous events. Stored sorted and
// duplicate-free so that equal rounds compare equal.
class Round {
 public:
  Round() = default;
  Round(std::initializer_list<Label> events);
  explicit Round(std::vector<Label> events);

  const std::vector<Label> &events() const { return events_; }
  bool empty() const { return events_.empty(); }
  std::size_t size() const { return events_.size(); }
  bool contains(std::string_view label) const;

  Round restricted_to(const std::set<Label> &universe) const;
  Round united_with(const Round &other) const;

  // "{a, b}"; the empty round prints as "{}".
  std::string to_string() const;

  auto operator<=>(const Round &) const = default;
  bool operator==(const Round &) const = default;

 private:
  std::vector<Label> events_;
};

struct Signature {
  std::set<Label> inputs;
  std::set<Label> outputs;

  std::set<Label> universe() const;
  bool contains(std::string_view label) const;
  bool is_input(std::string_view label) const;
  bool is_output(std::string_view label) const;
  bool admits(const Round &round) const;

  bool operator==(const Signature &) const = default;
};

Signature dualize(const Signature &signature);

// Label universes are equal. Polarity is metadata and is not compared.
bool same_universe(const Signature &a, const Signature &b);

// Every label of `sub` occurs in `super`.
bool is_subsignature(const Signature &sub, const Signature &super);

// Restricts `signature` to the labels in `keep`, preserving polarity.
Signature restrict_signature(const Signature &signature,
                             const std::set<Label> &keep);

using Trace = std::vector<Round>;

// Canonical trace order: shorter first, then lexicographic on rounds.
bool trace_less(const Trace &a, const Trace &b);
std::string trace_to_string(const Trace &trace);

struct TraceSet {
  Signature signature;
  std::vector<Trace> traces;  // canonical order, no duplicates

  bool contains(const Trace &trace) const;
  std::size_t size() const { return traces.size(); }
  bool operator==(const TraceSet &) const = default;
};

// Sorts into canonical order and removes duplicates.
void canonicalize(std::vector<Trace> &traces);

Trace project_trace(const Trace &trace, const Signature &from,
                    const Signature &keep);

struct Transition {
  StateName source;
  Round round;
  StateName target;

  auto operator<=>(const Transition &) const = default;
  bool operator==(const Transition &) const = default;
};

// Unchecked description of a transducer, as produced by a parser or a
// combinator before validation.
struct TransducerSpec {
  Signature signature;
  std::vector<StateName> states;
  StateName initial;
  std::vector<Transition> transitions;
};

class Transducer {
 public:
  struct Arc {
    int source;
    Round round;
    int target;

    auto operator<=>(const Arc &) const = default;
    bool operator==(const Arc &) const = default;
  };

  const Signature &signature() const { return signature_; }
  // Sorted lexicographically; a state's index is its position here.
  const std::vector<StateName> &states() const { return states_; }
  int num_states() const { return static_cast<int>(states_.size()); }
  int initial() const { return initial_; }
  const StateName &initial_name() const { return states_[initial_]; }
  const StateName &name(int state) const { return states_[state]; }

  // Sorted by (source, round, target).
  const std::vector<Arc> &arcs() const { return arcs_; }
  std::span<const Arc> arcs_from(int state) const;

  std::optional<int> find(std::string_view state) const;
  // Throws Error(kUnknownState).
  int index_of(std::string_view state) const;

  std::vector<Transition> transitions() const;
  TransducerSpec spec() const;

  bool operator==(const Transducer &) const = default;

 private:
  friend Transducer validate(const TransducerSpec &spec);

  Signature signature_;
  std::vector<StateName> states_;
  int initial_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> offsets_;  // arcs_from(s) = [offsets_[s], offsets_[s+1])
};

// Checks a description and builds the transducer. Duplicate transitions
// collapse. Throws ValidationError listing every UnknownLabel,
// UnknownState and MissingInitial violation.
Transducer validate(const TransducerSpec &spec);

std::set<StateName> step(const Transducer &t, std::string_view state,
                         const Round &round);
std::set<StateName> run(const Transducer &t, const Trace &trace);
bool accepts(const Transducer &t, const Trace &trace);

inline constexpr std::size_t kDefaultTraceCap = 1'000'000;

// Every trace of length <= depth, in canonical order. Throws
// Error(kResourceLimit) once more than `cap` traces have been produced.
TraceSet traces_upto(const Transducer &t, int depth,
                     std::size_t cap = kDefaultTraceCap);

// Traces of length <= depth that can end in `state`.
TraceSet witness_traces_upto(const Transducer &t, std::string_view state,
                             int depth, std::size_t cap = kDefaultTraceCap);

// Index-level helpers shared by the other modules.
std::vector<int> step_set(const Transducer &t, const std::vector<int> &from,
                          const Round &round);
std::vector<bool> reachable_states(const Transducer &t);
Transducer drop_unreachable(const Transducer &t);

bool is_deterministic(const Transducer &t);
// Subset construction. States of the result are named "d0", "d1", ... in
// breadth-first discovery order with arcs explored in canonical order.
Transducer determinize(const Transducer &t);

}  // namespace cohmin

#endif  // COHMIN_KERNEL_HPP_
