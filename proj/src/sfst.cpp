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

#include "cohmin/sfst.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <numeric>
#include <tuple>

namespace cohmin {

std::string transition_label(const Expr &guard,
                             const std::vector<Update> &updates) {
  std::string out = "when " + to_string(guard);
  for (std::size_t i = 0; i < updates.size(); ++i) {
    out += i == 0 ? " do " : ", ";
    out += updates[i].target + " := " + to_string(updates[i].expr);
  }
  return out;
}

std::span<const Sfst::Arc> Sfst::arcs_from(int state) const {
  return std::span<const Arc>(arcs_.data() + offsets_[state],
                              offsets_[state + 1] - offsets_[state]);
}

std::optional<int> Sfst::find(std::string_view state) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), state);
  if (it == states_.end() || *it != state) return std::nullopt;
  return static_cast<int>(it - states_.begin());
}

int Sfst::index_of(std::string_view state) const {
  if (auto i = find(state)) return *i;
  throw Error(ErrorKind::kUnknownState, std::string(state),
              "unknown state '" + std::string(state) + "'");
}

SfstSpec Sfst::spec() const {
  SfstSpec out{signature_, states_, registers_, initial_name(), {}};
  for (const Arc &a : arcs_)
    out.transitions.push_back(
        {states_[a.source], a.round, a.guard, a.updates, states_[a.target]});
  return out;
}

namespace {

auto ArcKey(const Sfst::Arc &a) {
  return std::tie(a.source, a.round, a.label, a.target);
}

}  // namespace

bool Sfst::operator==(const Sfst &other) const {
  if (signature_ != other.signature_ || states_ != other.states_ ||
      registers_ != other.registers_ || initial_ != other.initial_ ||
      arcs_.size() != other.arcs_.size())
    return false;
  for (std::size_t i = 0; i < arcs_.size(); ++i)
    if (ArcKey(arcs_[i]) != ArcKey(other.arcs_[i])) return false;
  return true;
}

Sfst validate_sfst(const SfstSpec &spec) {
  TransducerSpec control{spec.signature, spec.states, spec.initial, {}};
  for (const SfstTransition &t : spec.transitions)
    control.transitions.push_back({t.source, t.round, t.target});
  const Transducer checked = validate(control);

  std::set<std::string> registers;
  for (const std::string &r : spec.registers) {
    if (!is_identifier(r) || spec.signature.contains(r) ||
        !registers.insert(r).second)
      throw Error(ErrorKind::kInvalidModel, r,
                  "register '" + r + "' is malformed, repeated or a port");
  }

  Sfst out;
  out.signature_ = spec.signature;
  out.states_ = checked.states();
  out.registers_.assign(registers.begin(), registers.end());
  out.initial_ = checked.initial();
  for (const SfstTransition &t : spec.transitions) {
    auto bound = [&](const std::string &name) {
      return registers.count(name) > 0 ||
             (t.round.contains(name) && spec.signature.is_input(name));
    };
    auto check = [&](const Expr &e, Type type) {
      if (typecheck(e, bound) != type)
        throw Error(ErrorKind::kTypeError, to_string(e),
                    "'" + to_string(e) + "' should be " +
                        (type == Type::kInt ? "an integer" : "a boolean"));
      for (const std::string &v : variables(e))
        if (!registers.count(v)) out.valued_ports_.insert(v);
    };
    Sfst::Arc arc{*checked.find(t.source), t.round,
                  t.guard ? t.guard : bool_lit(true), {},
                  *checked.find(t.target), {}};
    check(arc.guard, Type::kBool);
    std::set<std::string> targets;
    for (const Update &u : t.updates) {
      const bool is_register = registers.count(u.target) > 0;
      if (!is_register && !(t.round.contains(u.target) &&
                            spec.signature.is_output(u.target)))
        throw Error(ErrorKind::kUnboundReference, u.target,
                    "update target '" + u.target +
                        "' is neither a register nor an output port of the "
                        "round");
      if (!targets.insert(u.target).second)
        throw Error(ErrorKind::kInvalidModel, u.target,
                    "two updates of '" + u.target + "' in one transition");
      check(u.expr, Type::kInt);
      if (!is_register) out.valued_ports_.insert(u.target);
      if (is_register && u.expr->op == Op::kVar && u.expr->name == u.target)
        continue;
      arc.updates.push_back(u);
    }
    std::sort(arc.updates.begin(), arc.updates.end(),
              [](const Update &a, const Update &b) { return a.target < b.target; });
    arc.label = transition_label(arc.guard, arc.updates);
    out.arcs_.push_back(std::move(arc));
  }
  std::sort(out.arcs_.begin(), out.arcs_.end(),
            [](const Sfst::Arc &a, const Sfst::Arc &b) {
              return ArcKey(a) < ArcKey(b);
            });
  out.arcs_.erase(std::unique(out.arcs_.begin(), out.arcs_.end(),
                              [](const Sfst::Arc &a, const Sfst::Arc &b) {
                                return ArcKey(a) == ArcKey(b);
                              }),
                  out.arcs_.end());
  out.offsets_.assign(out.states_.size() + 1, 0);
  for (const Sfst::Arc &a : out.arcs_) ++out.offsets_[a.source + 1];
  for (std::size_t i = 1; i < out.offsets_.size(); ++i)
    out.offsets_[i] += out.offsets_[i - 1];
  return out;
}

Transducer skeleton(const Sfst &t) {
  TransducerSpec spec{t.signature(), t.states(), t.initial_name(), {}};
  for (const Sfst::Arc &a : t.arcs())
    spec.transitions.push_back({t.name(a.source), a.round, t.name(a.target)});
  return validate(spec);
}

bool is_symbolic_protocol(const Sfst &t) {
  return std::all_of(t.arcs().begin(), t.arcs().end(), [](const Sfst::Arc &a) {
    return a.guard->op == Op::kBool && a.guard->value != 0 &&
           a.updates.empty();
  });
}

Transducer protocol_transducer(const Sfst &p) {
  if (!is_symbolic_protocol(p))
    throw Error(ErrorKind::kNotAProtocol, "",
                "a protocol may only have true guards and identity updates");
  return skeleton(p);
}

std::string to_string(const Configuration &c) {
  std::string out = "(" + c.state;
  for (const auto &[r, v] : c.registers)
    out += ", " + r + "=" + std::to_string(v);
  return out + ")";
}

namespace {

// Rethrows `e` with the failing round index prepended.
[[noreturn]] void RethrowAt(const Error &e, std::size_t index) {
  std::string message = e.what();
  const std::size_t prefix = std::strlen(ErrorKindName(e.kind())) + 2;
  if (message.size() >= prefix) message = message.substr(prefix);
  throw Error(e.kind(), e.item(),
              "round " + std::to_string(index) + ": " + message);
}

std::int64_t AsInt(const Value &v) { return std::get<std::int64_t>(v); }

// Fires `arc` from `regs` with port values `ports`; nullopt when the guard
// fails or an output port's carried value differs from the computed one.
// `expected` gives carried output values, absent ones are accepted.
std::optional<std::map<std::string, std::int64_t>> Fire(
    const Sfst::Arc &arc, const std::map<std::string, std::int64_t> &regs,
    const Env &ports, const ValuedRound *carried, Env *outputs) {
  Env env = regs;
  env.insert(ports.begin(), ports.end());
  if (!std::get<bool>(eval(arc.guard, env))) return std::nullopt;
  std::map<std::string, std::int64_t> next = regs;
  for (const Update &u : arc.updates) {
    const std::int64_t value = AsInt(eval(u.expr, env));
    if (auto it = next.find(u.target); it != next.end()) {
      it->second = value;
      continue;
    }
    if (carried != nullptr) {
      auto c = carried->find(u.target);
      if (c == carried->end() || !c->second || *c->second != value)
        return std::nullopt;
    }
    if (outputs != nullptr) (*outputs)[u.target] = value;
  }
  return next;
}

}  // namespace

std::set<Configuration> sfst_run(const Sfst &t, const ValuedTrace &trace) {
  Configuration start{t.initial_name(), {}};
  for (const std::string &r : t.registers()) start.registers[r] = 0;
  std::set<Configuration> current{start};
  for (std::size_t i = 0; i < trace.size() && !current.empty(); ++i) {
    std::vector<Label> labels;
    Env ports;
    for (const auto &[label, value] : trace[i]) {
      if (!t.signature().contains(label))
        throw Error(ErrorKind::kUnknownLabel, label,
                    "round " + std::to_string(i) + ": label '" + label +
                        "' is not in the signature");
      labels.push_back(label);
      if (value) ports[label] = *value;
    }
    const Round round(std::move(labels));
    std::set<Configuration> next;
    try {
      for (const Configuration &c : current)
        for (const Sfst::Arc &a : t.arcs_from(t.index_of(c.state))) {
          if (a.round != round) continue;
          if (auto regs = Fire(a, c.registers, ports, &trace[i], nullptr))
            next.insert({t.name(a.target), std::move(*regs)});
        }
    } catch (const Error &e) {
      RethrowAt(e, i);
    }
    current = std::move(next);
  }
  return current;
}

Label valued_label(const Label &port, std::int64_t value) {
  if (value >= 0) return port + "__" + std::to_string(value);
  return port + "__n" + std::to_string(0 - static_cast<std::uint64_t>(value));
}

namespace {

void CheckDomain(std::int64_t lo, std::int64_t hi) {
  if (hi < lo)
    throw Error(ErrorKind::kDomainExceeded, "", "empty value domain");
}

Signature ExpandedSignature(const Signature &sig,
                            const std::set<Label> &valued, std::int64_t lo,
                            std::int64_t hi) {
  Signature out;
  auto lift = [&](const std::set<Label> &from, std::set<Label> &to) {
    for (const Label &l : from) {
      if (!valued.count(l)) {
        to.insert(l);
        continue;
      }
      for (std::int64_t v = lo; v <= hi; ++v) to.insert(valued_label(l, v));
    }
  };
  lift(sig.inputs, out.inputs);
  lift(sig.outputs, out.outputs);
  return out;
}

std::string ConfigName(const Configuration &c) {
  if (c.registers.empty()) return c.state;
  std::string out = c.state + "[";
  bool first = true;
  for (const auto &[r, v] : c.registers) {
    if (!first) out += ",";
    first = false;
    out += r + "=" + std::to_string(v);
  }
  return out + "]";
}

}  // namespace

Transducer expand(const Sfst &t, std::int64_t lo, std::int64_t hi,
                  std::size_t cap) {
  CheckDomain(lo, hi);
  for (const Sfst::Arc &a : t.arcs()) {
    std::vector<std::int64_t> lits = literals(a.guard);
    for (const Update &u : a.updates) {
      std::vector<std::int64_t> more = literals(u.expr);
      lits.insert(lits.end(), more.begin(), more.end());
    }
    for (std::int64_t v : lits)
      if (v < lo || v > hi)
        throw Error(ErrorKind::kDomainExceeded, std::to_string(v),
                    "literal " + std::to_string(v) + " lies outside [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  const std::set<Label> &valued = t.valued_ports();
  std::map<Configuration, int> ids;
  std::vector<Configuration> configs;
  std::deque<int> queue;
  auto intern = [&](Configuration c) {
    auto [it, inserted] = ids.emplace(c, static_cast<int>(configs.size()));
    if (inserted) {
      if (configs.size() >= cap)
        throw Error(ErrorKind::kResourceLimit, "",
                    "expansion exceeded cap of " + std::to_string(cap) +
                        " configurations");
      configs.push_back(std::move(c));
      queue.push_back(it->second);
    }
    return it->second;
  };
  Configuration start{t.initial_name(), {}};
  for (const std::string &r : t.registers()) start.registers[r] = 0;
  intern(start);
  std::vector<std::tuple<int, Round, int>> arcs;
  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    const Configuration c = configs[id];
    for (const Sfst::Arc &a : t.arcs_from(t.index_of(c.state))) {
      std::set<Label> computed;
      for (const Update &u : a.updates)
        if (!c.registers.count(u.target)) computed.insert(u.target);
      std::vector<Label> free;
      for (const Label &e : a.round.events())
        if (valued.count(e) && !computed.count(e)) free.push_back(e);
      Env ports;
      for (const Label &f : free) ports[f] = lo;
      while (true) {
        Env outputs;
        if (auto regs = Fire(a, c.registers, ports, nullptr, &outputs)) {
          bool in_domain = true;
          for (const auto &[port, v] : outputs)
            in_domain = in_domain && v >= lo && v <= hi;
          if (in_domain) {
            std::vector<Label> events;
            for (const Label &e : a.round.events()) {
              if (!valued.count(e))
                events.push_back(e);
              else if (ports.count(e))
                events.push_back(valued_label(e, ports[e]));
              else
                events.push_back(valued_label(e, outputs[e]));
            }
            const int target =
                intern({t.name(a.target), std::move(*regs)});
            arcs.emplace_back(id, Round(std::move(events)), target);
          }
        }
        std::size_t i = 0;
        for (; i < free.size(); ++i) {
          std::int64_t &v = ports[free[i]];
          if (v < hi) {
            ++v;
            break;
          }
          v = lo;
        }
        if (i == free.size()) break;
      }
    }
  }
  TransducerSpec spec{ExpandedSignature(t.signature(), valued, lo, hi),
                      {},
                      ConfigName(configs[0]),
                      {}};
  for (const Configuration &c : configs) spec.states.push_back(ConfigName(c));
  for (const auto &[from, round, to] : arcs)
    spec.transitions.push_back(
        {ConfigName(configs[from]), round, ConfigName(configs[to])});
  return validate(spec);
}

std::optional<Trace> expanded_trace(const Sfst &t, const ValuedTrace &trace,
                                    std::int64_t lo, std::int64_t hi) {
  Trace out;
  for (const ValuedRound &vr : trace) {
    std::vector<Label> events;
    for (const auto &[label, value] : vr) {
      if (!t.valued_ports().count(label)) {
        events.push_back(label);
        continue;
      }
      if (!value || *value < lo || *value > hi) return std::nullopt;
      events.push_back(valued_label(label, *value));
    }
    out.emplace_back(std::move(events));
  }
  return out;
}

Transducer expand_protocol(const Transducer &p, const Sfst &model,
                           std::int64_t lo, std::int64_t hi) {
  CheckDomain(lo, hi);
  const std::set<Label> &valued = model.valued_ports();
  TransducerSpec spec{ExpandedSignature(p.signature(), valued, lo, hi),
                      p.states(),
                      p.initial_name(),
                      {}};
  for (const Transducer::Arc &a : p.arcs()) {
    std::vector<std::vector<Label>> rounds{{}};
    for (const Label &e : a.round.events()) {
      std::vector<std::vector<Label>> next;
      for (const auto &r : rounds) {
        if (!valued.count(e)) {
          next.push_back(r);
          next.back().push_back(e);
          continue;
        }
        for (std::int64_t v = lo; v <= hi; ++v) {
          next.push_back(r);
          next.back().push_back(valued_label(e, v));
        }
      }
      rounds = std::move(next);
    }
    for (auto &r : rounds)
      spec.transitions.push_back(
          {p.name(a.source), Round(std::move(r)), p.name(a.target)});
  }
  return validate(spec);
}

namespace {

// Interns expressions up to the selected equivalence.
class ExprClasses {
 public:
  explicit ExprClasses(const SymbolicOptions &options) : options_(options) {}

  int id(const Expr &e) {
    const std::string key = to_string(normalise(e));
    if (auto it = by_key_.find(key); it != by_key_.end()) return it->second;
    int found = -1;
    if (options_.mode == EquivMode::kBoundedSemantic) {
      for (std::size_t i = 0; i < reps_.size() && found < 0; ++i)
        if (types_[i] == Kind(e) &&
            guard_equiv(reps_[i], e, options_.mode, options_.domain))
          found = static_cast<int>(i);
    }
    if (found < 0) {
      found = static_cast<int>(reps_.size());
      reps_.push_back(e);
      types_.push_back(Kind(e));
    }
    by_key_[key] = found;
    return found;
  }

 private:
  static Type Kind(const Expr &e) {
    return typecheck(e, [](const std::string &) { return true; });
  }

  const SymbolicOptions &options_;
  std::map<std::string, int> by_key_;
  std::vector<Expr> reps_;
  std::vector<Type> types_;
};

core::Graph SymbolicGraph(const Sfst &t, const Transducer *protocol,
                          const SymbolicOptions &options) {
  const Transducer control = skeleton(t);
  const core::RoundTable table = core::round_table(control);
  ExprClasses classes(options);
  std::map<std::tuple<int, int, std::vector<std::pair<std::string, int>>>, int>
      keys;
  core::Graph g;
  g.num_states = t.num_states();
  g.arcs.resize(g.num_states);
  for (const Sfst::Arc &a : t.arcs()) {
    const int round = table.id(a.round);
    std::vector<std::pair<std::string, int>> updates;
    for (const Update &u : a.updates)
      updates.emplace_back(u.target, classes.id(u.expr));
    const auto key = std::make_tuple(round, classes.id(a.guard), updates);
    auto it = keys.emplace(key, static_cast<int>(keys.size())).first;
    g.arcs[a.source].push_back({it->second, round, a.target});
  }
  for (auto &arcs : g.arcs) {
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  }
  if (protocol != nullptr)
    g.extendable = core::extendable_rounds(control, *protocol, table);
  else
    g.extendable.resize(g.num_states);
  return g;
}

void RequireSameSignature(const Sfst &t, const Transducer &p) {
  if (!same_universe(t.signature(), p.signature()))
    throw Error(ErrorKind::kSignatureMismatch, "",
                "model and protocol have different label universes");
}

Sfst Rename(const Sfst &t, const std::map<StateName, StateName> &rename) {
  SfstSpec spec = t.spec();
  auto map = [&](const StateName &s) {
    auto it = rename.find(s);
    return it == rename.end() ? s : it->second;
  };
  std::vector<StateName> states;
  for (const StateName &s : spec.states)
    if (map(s) == s) states.push_back(s);
  spec.states = std::move(states);
  spec.initial = map(spec.initial);
  for (SfstTransition &tr : spec.transitions) {
    tr.source = map(tr.source);
    tr.target = map(tr.target);
  }
  return validate_sfst(spec);
}

Sfst DropUnreachable(const Sfst &t) {
  const std::vector<bool> live = reachable_states(skeleton(t));
  SfstSpec spec = t.spec();
  spec.states.clear();
  for (int s = 0; s < t.num_states(); ++s)
    if (live[s]) spec.states.push_back(t.name(s));
  std::erase_if(spec.transitions, [&](const SfstTransition &tr) {
    return !live[t.index_of(tr.source)];
  });
  return validate_sfst(spec);
}

}  // namespace

CoherenceRelation sfst_coherent_simulation(const Sfst &t, const Transducer &p,
                                           const SymbolicOptions &options) {
  RequireSameSignature(t, p);
  const core::Graph g = SymbolicGraph(t, &p, options);
  return {t.states(), core::prune_parallel(g, core::initial_relation(g))};
}

CoherenceRelation sfst_coherent_simulation(const Sfst &t, const Sfst &p,
                                           const SymbolicOptions &options) {
  return sfst_coherent_simulation(t, protocol_transducer(p), options);
}

Sfst sfst_quotient(const Sfst &t, std::string_view s1, std::string_view s2) {
  const int a = t.index_of(s1);
  const int b = t.index_of(s2);
  if (a == b)
    throw Error(ErrorKind::kSameState, std::string(s1),
                "cannot merge a state with itself");
  return Rename(t, {{t.name(std::max(a, b)), t.name(std::min(a, b))}});
}

SfstMinimized sfst_coherent_minimize(const Sfst &t, const Transducer &p,
                                     const SymbolicOptions &options) {
  RequireSameSignature(t, p);
  SfstMinimized out{t, {}};
  while (true) {
    const core::Graph g = SymbolicGraph(out.result, &p, options);
    const auto [a, b] = core::least_equivalence_pair(
        core::prune_parallel(g, core::initial_relation(g)));
    if (a < 0) break;
    out.log.push_back({out.result.name(a), out.result.name(b)});
    out.result =
        sfst_quotient(out.result, out.result.name(a), out.result.name(b));
  }
  if (!options.keep_unreachable) out.result = DropUnreachable(out.result);
  return out;
}

SfstMinimized sfst_coherent_minimize(const Sfst &t, const Sfst &p,
                                     const SymbolicOptions &options) {
  return sfst_coherent_minimize(t, protocol_transducer(p), options);
}

std::vector<std::vector<StateName>> sfst_bisim_classes(
    const Sfst &t, const SymbolicOptions &options) {
  const std::vector<int> block =
      core::bisim_partition(SymbolicGraph(t, nullptr, options));
  std::vector<std::vector<StateName>> out;
  for (int s = 0; s < t.num_states(); ++s) {
    if (block[s] >= static_cast<int>(out.size())) out.resize(block[s] + 1);
    out[block[s]].push_back(t.name(s));
  }
  return out;
}

Sfst sfst_bisim_minimize(const Sfst &t, const SymbolicOptions &options) {
  std::map<StateName, StateName> rename;
  for (const auto &cls : sfst_bisim_classes(t, options))
    for (const StateName &s : cls)
      if (s != cls.front()) rename[s] = cls.front();
  Sfst out = Rename(t, rename);
  return options.keep_unreachable ? out : DropUnreachable(out);
}

std::vector<std::vector<StateName>> merge_classes(
    const std::vector<Merge> &log) {
  std::map<StateName, StateName> parent;
  std::function<StateName(const StateName &)> root =
      [&](const StateName &s) -> StateName {
    auto it = parent.find(s);
    if (it == parent.end() || it->second == s) return s;
    return it->second = root(it->second);
  };
  for (const Merge &m : log) {
    parent.emplace(m.kept, m.kept);
    parent.emplace(m.removed, m.removed);
    const StateName a = root(m.kept), b = root(m.removed);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<StateName, std::vector<StateName>> groups;
  for (const auto &[s, p] : parent) groups[root(s)].push_back(s);
  std::vector<std::vector<StateName>> out;
  for (auto &[r, members] : groups)
    if (members.size() > 1) out.push_back(std::move(members));
  return out;
}

}  // namespace cohmin
