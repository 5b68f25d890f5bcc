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

#include "cohmin/kernel.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>
#include <utility>

namespace cohmin {

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(text[0]))) return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

// --- Round -----------------------------------------------------------------

Round::Round(std::initializer_list<Label> events)
    : Round(std::vector<Label>(events)) {}

Round::Round(std::vector<Label> events) : events_(std::move(events)) {
  std::sort(events_.begin(), events_.end());
  events_.erase(std::unique(events_.begin(), events_.end()), events_.end());
}

bool Round::contains(std::string_view label) const {
  return std::binary_search(events_.begin(), events_.end(), label);
}

Round Round::restricted_to(const std::set<Label> &universe) const {
  Round out;
  for (const Label &e : events_)
    if (universe.count(e)) out.events_.push_back(e);
  return out;
}

Round Round::united_with(const Round &other) const {
  Round out;
  std::set_union(events_.begin(), events_.end(), other.events_.begin(),
                 other.events_.end(), std::back_inserter(out.events_));
  return out;
}

std::string Round::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (i > 0) out += ", ";
    out += events_[i];
  }
  return out + "}";
}

// --- Signature -------------------------------------------------------------

std::set<Label> Signature::universe() const {
  std::set<Label> all = inputs;
  all.insert(outputs.begin(), outputs.end());
  return all;
}

bool Signature::contains(std::string_view label) const {
  return is_input(label) || is_output(label);
}

bool Signature::is_input(std::string_view label) const {
  return inputs.find(std::string(label)) != inputs.end();
}

bool Signature::is_output(std::string_view label) const {
  return outputs.find(std::string(label)) != outputs.end();
}

bool Signature::admits(const Round &round) const {
  return std::all_of(round.events().begin(), round.events().end(),
                     [this](const Label &l) { return contains(l); });
}

Signature dualize(const Signature &signature) {
  return Signature{signature.outputs, signature.inputs};
}

bool same_universe(const Signature &a, const Signature &b) {
  return a.universe() == b.universe();
}

bool is_subsignature(const Signature &sub, const Signature &super) {
  for (const Label &l : sub.universe())
    if (!super.contains(l)) return false;
  return true;
}

Signature restrict_signature(const Signature &signature,
                             const std::set<Label> &keep) {
  Signature out;
  for (const Label &l : signature.inputs)
    if (keep.count(l)) out.inputs.insert(l);
  for (const Label &l : signature.outputs)
    if (keep.count(l)) out.outputs.insert(l);
  return out;
}

// --- Traces ----------------------------------------------------------------

bool trace_less(const Trace &a, const Trace &b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::string trace_to_string(const Trace &trace) {
  if (trace.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i > 0) out += " ";
    out += trace[i].to_string();
  }
  return out;
}

bool TraceSet::contains(const Trace &trace) const {
  return std::binary_search(traces.begin(), traces.end(), trace, trace_less);
}

void canonicalize(std::vector<Trace> &traces) {
  std::sort(traces.begin(), traces.end(), trace_less);
  traces.erase(std::unique(traces.begin(), traces.end()), traces.end());
}

Trace project_trace(const Trace &trace, const Signature &from,
                    const Signature &keep) {
  if (!is_subsignature(keep, from))
    throw Error(ErrorKind::kSignatureMismatch, "",
                "projection target is not a sub-signature");
  const std::set<Label> universe = keep.universe();
  Trace out;
  out.reserve(trace.size());
  for (const Round &r : trace) out.push_back(r.restricted_to(universe));
  return out;
}

// --- Transducer ------------------------------------------------------------

std::span<const Transducer::Arc> Transducer::arcs_from(int state) const {
  return std::span<const Arc>(arcs_.data() + offsets_[state],
                              offsets_[state + 1] - offsets_[state]);
}

std::optional<int> Transducer::find(std::string_view state) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), state);
  if (it == states_.end() || *it != state) return std::nullopt;
  return static_cast<int>(it - states_.begin());
}

int Transducer::index_of(std::string_view state) const {
  if (auto i = find(state)) return *i;
  throw Error(ErrorKind::kUnknownState, std::string(state),
              "unknown state '" + std::string(state) + "'");
}

std::vector<Transition> Transducer::transitions() const {
  std::vector<Transition> out;
  out.reserve(arcs_.size());
  for (const Arc &a : arcs_)
    out.push_back({states_[a.source], a.round, states_[a.target]});
  return out;
}

TransducerSpec Transducer::spec() const {
  return TransducerSpec{signature_, states_, initial_name(), transitions()};
}

Transducer validate(const TransducerSpec &spec) {
  std::vector<ValidationError::Violation> violations;
  for (const Label &l : spec.signature.inputs) {
    if (!is_identifier(l))
      violations.push_back({ErrorKind::kUnknownLabel, l});
    if (spec.signature.outputs.count(l))
      violations.push_back({ErrorKind::kLabelClash, l});
  }
  for (const Label &l : spec.signature.outputs)
    if (!is_identifier(l)) violations.push_back({ErrorKind::kUnknownLabel, l});

  std::vector<StateName> states = spec.states;
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  auto known = [&](const StateName &s) {
    return std::binary_search(states.begin(), states.end(), s);
  };
  if (states.empty() || !known(spec.initial))
    violations.push_back({ErrorKind::kMissingInitial, spec.initial});

  std::set<Label> bad_labels;
  std::set<StateName> bad_states;
  for (const Transition &t : spec.transitions) {
    for (const Label &e : t.round.events())
      if (!spec.signature.contains(e) && bad_labels.insert(e).second)
        violations.push_back({ErrorKind::kUnknownLabel, e});
    for (const StateName *s : {&t.source, &t.target})
      if (!known(*s) && bad_states.insert(*s).second)
        violations.push_back({ErrorKind::kUnknownState, *s});
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));

  Transducer out;
  out.signature_ = spec.signature;
  out.states_ = std::move(states);
  out.initial_ = *out.find(spec.initial);
  out.arcs_.reserve(spec.transitions.size());
  for (const Transition &t : spec.transitions)
    out.arcs_.push_back({*out.find(t.source), t.round, *out.find(t.target)});
  std::sort(out.arcs_.begin(), out.arcs_.end());
  out.arcs_.erase(std::unique(out.arcs_.begin(), out.arcs_.end()),
                  out.arcs_.end());
  out.offsets_.assign(out.states_.size() + 1, 0);
  for (const auto &a : out.arcs_) ++out.offsets_[a.source + 1];
  for (std::size_t i = 1; i < out.offsets_.size(); ++i)
    out.offsets_[i] += out.offsets_[i - 1];
  return out;
}

// --- Semantics -------------------------------------------------------------

namespace {

void CheckRound(const Transducer &t, const Round &round) {
  for (const Label &e : round.events())
    if (!t.signature().contains(e))
      throw Error(ErrorKind::kUnknownLabel, e,
                  "label '" + e + "' is not in the signature");
}

std::set<StateName> Names(const Transducer &t, const std::vector<int> &ids) {
  std::set<StateName> out;
  for (int i : ids) out.insert(t.name(i));
  return out;
}

}  // namespace

std::vector<int> step_set(const Transducer &t, const std::vector<int> &from,
                          const Round &round) {
  std::vector<int> out;
  for (int s : from)
    for (const auto &a : t.arcs_from(s))
      if (a.round == round) out.push_back(a.target);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::set<StateName> step(const Transducer &t, std::string_view state,
                         const Round &round) {
  CheckRound(t, round);
  return Names(t, step_set(t, {t.index_of(state)}, round));
}

std::set<StateName> run(const Transducer &t, const Trace &trace) {
  std::vector<int> current{t.initial()};
  for (const Round &r : trace) {
    CheckRound(t, r);
    current = step_set(t, current, r);
    if (current.empty()) break;
  }
  return Names(t, current);
}

bool accepts(const Transducer &t, const Trace &trace) {
  return !run(t, trace).empty();
}

namespace {

// Breadth-first enumeration of (trace, reached states) up to `depth`.
// `keep` decides which traces are emitted.
template <typename Keep>
TraceSet Enumerate(const Transducer &t, int depth, std::size_t cap,
                   Keep keep) {
  struct Node {
    Trace trace;
    std::vector<int> states;
  };
  TraceSet out{t.signature(), {}};
  std::vector<Node> level{{Trace{}, {t.initial()}}};
  std::size_t produced = 0;
  for (int d = 0;; ++d) {
    for (const Node &n : level) {
      if (keep(n.states)) out.traces.push_back(n.trace);
    }
    if (d == depth) break;
    std::vector<Node> next;
    for (const Node &n : level) {
      std::map<Round, std::vector<int>> successors;
      for (int s : n.states)
        for (const auto &a : t.arcs_from(s))
          successors[a.round].push_back(a.target);
      for (auto &[round, targets] : successors) {
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()),
                      targets.end());
        if (++produced > cap)
          throw Error(ErrorKind::kResourceLimit, "",
                      "trace enumeration exceeded cap of " +
                          std::to_string(cap));
        Trace tr = n.trace;
        tr.push_back(round);
        next.push_back({std::move(tr), std::move(targets)});
      }
    }
    if (next.empty()) break;
    level = std::move(next);
  }
  canonicalize(out.traces);
  return out;
}

}  // namespace

TraceSet traces_upto(const Transducer &t, int depth, std::size_t cap) {
  if (depth < 0)
    throw Error(ErrorKind::kResourceLimit, "", "negative depth");
  return Enumerate(t, depth, cap, [](const std::vector<int> &) {
    return true;
  });
}

TraceSet witness_traces_upto(const Transducer &t, std::string_view state,
                             int depth, std::size_t cap) {
  const int target = t.index_of(state);
  return Enumerate(t, depth, cap, [target](const std::vector<int> &states) {
    return std::binary_search(states.begin(), states.end(), target);
  });
}

std::vector<bool> reachable_states(const Transducer &t) {
  std::vector<bool> seen(t.num_states(), false);
  std::deque<int> queue{t.initial()};
  seen[t.initial()] = true;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (const auto &a : t.arcs_from(s))
      if (!seen[a.target]) {
        seen[a.target] = true;
        queue.push_back(a.target);
      }
  }
  return seen;
}

Transducer drop_unreachable(const Transducer &t) {
  const std::vector<bool> keep = reachable_states(t);
  TransducerSpec spec{t.signature(), {}, t.initial_name(), {}};
  for (int s = 0; s < t.num_states(); ++s)
    if (keep[s]) spec.states.push_back(t.name(s));
  for (const auto &a : t.arcs())
    if (keep[a.source])
      spec.transitions.push_back({t.name(a.source), a.round, t.name(a.target)});
  return validate(spec);
}

bool is_deterministic(const Transducer &t) {
  for (std::size_t i = 1; i < t.arcs().size(); ++i) {
    const auto &a = t.arcs()[i - 1];
    const auto &b = t.arcs()[i];
    if (a.source == b.source && a.round == b.round) return false;
  }
  return true;
}

Transducer determinize(const Transducer &t) {
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> subsets;
  std::deque<int> queue;
  auto intern = [&](std::vector<int> subset) {
    auto [it, inserted] = ids.emplace(subset, static_cast<int>(subsets.size()));
    if (inserted) {
      subsets.push_back(std::move(subset));
      queue.push_back(it->second);
    }
    return it->second;
  };
  intern({t.initial()});
  std::vector<std::tuple<int, Round, int>> arcs;
  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    std::map<Round, std::vector<int>> successors;
    for (int s : subsets[id])
      for (const auto &a : t.arcs_from(s))
        successors[a.round].push_back(a.target);
    for (auto &[round, targets] : successors) {
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()),
                    targets.end());
      arcs.emplace_back(id, round, intern(std::move(targets)));
    }
  }
  TransducerSpec spec{t.signature(), {}, "d0", {}};
  for (std::size_t i = 0; i < subsets.size(); ++i)
    spec.states.push_back("d" + std::to_string(i));
  for (const auto &[from, round, to] : arcs)
    spec.transitions.push_back({"d" + std::to_string(from), round,
                                "d" + std::to_string(to)});
  return validate(spec);
}

}  // namespace cohmin
