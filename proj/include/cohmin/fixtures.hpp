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

// Small reference transducers used by tests, the acceptance suite and the
// documentation.

#ifndef COHMIN_FIXTURES_HPP_
#define COHMIN_FIXTURES_HPP_

#include "cohmin/kernel.hpp"

namespace cohmin {

// In {a}, out {b}: s0 -{a}-> s1 -{b}-> s0.
Transducer fixture_fix1();

// In {i, a}, out {b}: r0 branches on {i} to P and Q; P has two {a}
// successors (p1 continues on {b}, p2 is stuck), Q has one.
Transducer fixture_fix3();

// Protocol over the FIX3 signature: X0 -{i}-> X1 -{a}-> X2.
Transducer fixture_pr1();

// One state, no transitions: the only legal trace is the empty one.
Transducer empty_protocol(const Signature &signature);

// One state with a self-loop on every round in `rounds`.
Transducer universal_protocol(const Signature &signature,
                              const std::vector<Round> &rounds);

// Every subset of the signature's universe. Throws ResourceLimit above
// 16 labels.
std::vector<Round> all_rounds(const Signature &signature);

}  // namespace cohmin

#endif  // COHMIN_FIXTURES_HPP_
