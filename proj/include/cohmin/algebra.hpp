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

// Transducer and trace-set combinators. Shared labels are identified by
// name; polarity is carried through but never affects synchronisation.

#ifndef COHMIN_ALGEBRA_HPP_
#define COHMIN_ALGEBRA_HPP_

#include <cstddef>
#include <string>

#include "cohmin/kernel.hpp"

namespace cohmin {

struct ProductOptions {
  // Keep every pair of states, not only those reachable from the initial
  // pair.
  bool keep_unreachable = false;
};

struct ProductStats {
  // Pairs discarded because they are unreachable.
  std::size_t pruned = 0;
};

// "(l,r)".
std::string product_state_name(const StateName &left, const StateName &right);

// Synchronous product over identical label universes. Throws
// Error(kSignatureMismatch).
Transducer intersect(const Transducer &t, const Transducer &u,
                     const ProductOptions &options = {},
                     ProductStats *stats = nullptr);

// Signature of t || u: a label is an output if either side outputs it.
Signature interaction_signature(const Signature &a, const Signature &b);

// Labels occurring in exactly one of the two signatures, with polarity.
Signature hidden_complement(const Signature &a, const Signature &b);

// T over A+B interacting with U over B+C, where B is the set of shared
// labels. Joint rounds are unions of one round from each side whose
// B-parts agree; neither side idles unless it has an explicit transition.
Transducer interact(const Transducer &t, const Transducer &u,
                    const ProductOptions &options = {},
                    ProductStats *stats = nullptr);

// Replaces each round by its restriction to `keep`. Throws
// Error(kSignatureMismatch) unless `keep` is a sub-signature.
Transducer project(const Transducer &t, const Signature &keep);

// project(interact(t, u), A+C).
Transducer compose(const Transducer &t, const Transducer &u,
                   const ProductOptions &options = {});

// { w over A+B+C : w|A+B in a and w|B+C in b }. Throws
// Error(kResourceLimit) past `cap` traces.
TraceSet traceset_interact(const TraceSet &a, const TraceSet &b,
                           std::size_t cap = kDefaultTraceCap);

// { w|A+C : w in traceset_interact(a, b) }.
TraceSet traceset_compose(const TraceSet &a, const TraceSet &b,
                          std::size_t cap = kDefaultTraceCap);

}  // namespace cohmin

#endif  // COHMIN_ALGEBRA_HPP_
