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

#include "cohmin/fixtures.hpp"

#include <algorithm>

namespace cohmin {

Transducer fixture_fix1() {
  return validate({Signature{{"a"}, {"b"}},
                   {"s0", "s1"},
                   "s0",
                   {{"s0", {"a"}, "s1"}, {"s1", {"b"}, "s0"}}});
}

Transducer fixture_fix3() {
  return validate({Signature{{"i", "a"}, {"b"}},
                   {"r0", "P", "Q", "p1", "p2", "q1", "p3", "q3"},
                   "r0",
                   {{"r0", {"i"}, "P"},
                    {"r0", {"i"}, "Q"},
                    {"P", {"a"}, "p1"},
                    {"P", {"a"}, "p2"},
                    {"Q", {"a"}, "q1"},
                    {"p1", {"b"}, "p3"},
                    {"q1", {"b"}, "q3"}}});
}

Transducer fixture_pr1() {
  return validate({Signature{{"i", "a"}, {"b"}},
                   {"X0", "X1", "X2"},
                   "X0",
                   {{"X0", {"i"}, "X1"}, {"X1", {"a"}, "X2"}}});
}

Transducer empty_protocol(const Signature &signature) {
  return validate({signature, {"p0"}, "p0", {}});
}

Transducer universal_protocol(const Signature &signature,
                              const std::vector<Round> &rounds) {
  TransducerSpec spec{signature, {"u"}, "u", {}};
  for (const Round &r : rounds) spec.transitions.push_back({"u", r, "u"});
  return validate(spec);
}

std::vector<Round> all_rounds(const Signature &signature) {
  const std::set<Label> universe = signature.universe();
  if (universe.size() > 16)
    throw Error(ErrorKind::kResourceLimit, "",
                "too many labels to enumerate every round");
  const std::vector<Label> labels(universe.begin(), universe.end());
  std::vector<Round> out;
  for (unsigned mask = 0; mask < (1u << labels.size()); ++mask) {
    std::vector<Label> events;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (mask & (1u << i)) events.push_back(labels[i]);
    out.emplace_back(std::move(events));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cohmin
