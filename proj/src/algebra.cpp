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

#include "cohmin/algebra.hpp"

#include <deque>
#include <map>
#include <utility>
#include <vector>

namespace cohmin {

std::string product_state_name(const StateName &left,
                               const StateName &right) {
  return "(" + left + "," + right + ")";
}

namespace {

std::set<Label> Shared(const Signature &a, const Signature &b) {
  std::set<Label> out;
  for (const Label &l : a.universe())
    if (b.contains(l)) out.insert(l);
  return out;
}

// Explores the product of `t` and `u`. `joint` maps a pair of arcs to the
// joint round, or nullopt when the arcs do not synchronise.
template <typename Joint>
Transducer Product(const Transducer &t, const Transducer &u,
                   const Signature &signature, const ProductOptions &options,
                   ProductStats *stats, Joint joint) {
  const int n = u.num_states();
  auto id = [n](int l, int r) { return l * n + r; };
  auto name = [&](int pair) {
    return product_state_name(t.name(pair / n), u.name(pair % n));
  };
  const int total = t.num_states() * n;
  std::vector<bool> seen(total, false);
  std::vector<std::tuple<int, Round, int>> arcs;
  auto expand = [&](int pair, auto &&visit) {
    for (const auto &a : t.arcs_from(pair / n))
      for (const auto &b : u.arcs_from(pair % n))
        if (auto v = joint(a.round, b.round)) {
          const int target = id(a.target, b.target);
          arcs.emplace_back(pair, *v, target);
          visit(target);
        }
  };
  if (options.keep_unreachable) {
    for (int p = 0; p < total; ++p) {
      seen[p] = true;
      expand(p, [](int) {});
    }
  } else {
    std::deque<int> queue{id(t.initial(), u.initial())};
    seen[queue.front()] = true;
    while (!queue.empty()) {
      const int p = queue.front();
      queue.pop_front();
      expand(p, [&](int target) {
        if (!seen[target]) {
          seen[target] = true;
          queue.push_back(target);
        }
      });
    }
  }
  TransducerSpec spec{signature, {}, name(id(t.initial(), u.initial())), {}};
  std::size_t pruned = 0;
  for (int p = 0; p < total; ++p) {
    if (seen[p])
      spec.states.push_back(name(p));
    else
      ++pruned;
  }
  for (const auto &[from, round, to] : arcs)
    spec.transitions.push_back({name(from), round, name(to)});
  if (stats != nullptr) stats->pruned = pruned;
  return validate(spec);
}

}  // namespace

Transducer intersect(const Transducer &t, const Transducer &u,
                     const ProductOptions &options, ProductStats *stats) {
  if (!same_universe(t.signature(), u.signature()))
    throw Error(ErrorKind::kSignatureMismatch, "",
                "intersection needs identical label universes");
  return Product(t, u, t.signature(), options, stats,
                 [](const Round &a, const Round &b) -> std::optional<Round> {
                   if (a == b) return a;
                   return std::nullopt;
                 });
}

Signature interaction_signature(const Signature &a, const Signature &b) {
  Signature out;
  out.outputs = a.outputs;
  out.outputs.insert(b.outputs.begin(), b.outputs.end());
  for (const Signature *s : {&a, &b})
    for (const Label &l : s->inputs)
      if (!out.outputs.count(l)) out.inputs.insert(l);
  return out;
}

Signature hidden_complement(const Signature &a, const Signature &b) {
  const std::set<Label> shared = Shared(a, b);
  std::set<Label> keep;
  for (const Signature *s : {&a, &b})
    for (const Label &l : s->universe())
      if (!shared.count(l)) keep.insert(l);
  return restrict_signature(interaction_signature(a, b), keep);
}

Transducer interact(const Transducer &t, const Transducer &u,
                    const ProductOptions &options, ProductStats *stats) {
  const std::set<Label> shared = Shared(t.signature(), u.signature());
  return Product(
      t, u, interaction_signature(t.signature(), u.signature()), options,
      stats, [&shared](const Round &a, const Round &b) -> std::optional<Round> {
        if (a.restricted_to(shared) != b.restricted_to(shared))
          return std::nullopt;
        return a.united_with(b);
      });
}

Transducer project(const Transducer &t, const Signature &keep) {
  if (!is_subsignature(keep, t.signature()))
    throw Error(ErrorKind::kSignatureMismatch, "",
                "projection target is not a sub-signature");
  const std::set<Label> universe = keep.universe();
  TransducerSpec spec = t.spec();
  spec.signature = restrict_signature(t.signature(), universe);
  for (Transition &tr : spec.transitions)
    tr.round = tr.round.restricted_to(universe);
  return validate(spec);
}

Transducer compose(const Transducer &t, const Transducer &u,
                   const ProductOptions &options) {
  return project(interact(t, u, options),
                 hidden_complement(t.signature(), u.signature()));
}

TraceSet traceset_interact(const TraceSet &a, const TraceSet &b,
                           std::size_t cap) {
  const std::set<Label> shared = Shared(a.signature, b.signature);
  auto shared_part = [&shared](const Trace &t) {
    Trace out;
    out.reserve(t.size());
    for (const Round &r : t) out.push_back(r.restricted_to(shared));
    return out;
  };
  std::map<Trace, std::vector<const Trace *>> by_shared;
  for (const Trace &v : b.traces) by_shared[shared_part(v)].push_back(&v);
  TraceSet out{interaction_signature(a.signature, b.signature), {}};
  for (const Trace &w : a.traces) {
    auto it = by_shared.find(shared_part(w));
    if (it == by_shared.end()) continue;
    for (const Trace *v : it->second) {
      if (out.traces.size() >= cap)
        throw Error(ErrorKind::kResourceLimit, "",
                    "trace-set interaction exceeded cap of " +
                        std::to_string(cap));
      Trace joint;
      joint.reserve(w.size());
      for (std::size_t i = 0; i < w.size(); ++i)
        joint.push_back(w[i].united_with((*v)[i]));
      out.traces.push_back(std::move(joint));
    }
  }
  canonicalize(out.traces);
  return out;
}

TraceSet traceset_compose(const TraceSet &a, const TraceSet &b,
                          std::size_t cap) {
  TraceSet joint = traceset_interact(a, b, cap);
  const Signature keep = hidden_complement(a.signature, b.signature);
  TraceSet out{keep, {}};
  for (const Trace &t : joint.traces)
    out.traces.push_back(project_trace(t, joint.signature, keep));
  canonicalize(out.traces);
  return out;
}

}  // namespace cohmin
