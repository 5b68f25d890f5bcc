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

// Protocols: a regex compiler for asynchronous (one event per round)
// protocols, the online monitor, and the reference protocol fixtures.
// A protocol's language is the prefix-closure of its paths.

#ifndef COHMIN_PROTOCOL_HPP_
#define COHMIN_PROTOCOL_HPP_

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohmin/kernel.hpp"
#include "cohmin/sfst.hpp"

namespace cohmin {

enum class RegexOp { kLiteral, kConcat, kAlt, kStar };

struct RegexNode;
using Regex = std::shared_ptr<const RegexNode>;

struct RegexNode {
  RegexOp op;
  Label label;  // kLiteral
  std::vector<Regex> args;
};

Regex regex_literal(Label label);
Regex regex_concat(std::vector<Regex> parts);
Regex regex_alt(std::vector<Regex> choices);
Regex regex_star(Regex body);

// Literals are identifiers; juxtaposition concatenates, `+` alternates,
// postfix `*` iterates, parentheses group. Throws ParseError.
Regex parse_regex(std::string_view text);
std::string to_string(const Regex &r);

// Position automaton, subset construction, then minimisation. Every
// literal becomes a singleton round; the result is the minimal
// deterministic transducer with states q0, q1, ... in discovery order. Throws Error(kUnknownLabel).
Transducer compile_regex(const Regex &r, const Signature &signature);

enum class VerdictStatus { kOk, kViolation };

struct Verdict {
  VerdictStatus status = VerdictStatus::kOk;
  std::size_t index = 0;     // first illegal round
  Round offending;
  std::vector<Round> expected;  // rounds enabled before it, sorted

  bool operator==(const Verdict &) const = default;
};

// "OK" or "VIOLATION index=<i> round={..} expected={{..},..}".
std::string to_string(const Verdict &v);

// Follows the trace through the protocol and stops at the first round the
// protocol does not allow. Nondeterministic protocols are determinised
// first. Throws Error(kSignatureMismatch) for rounds outside the
// protocol's signature.
Verdict monitor(const Transducer &protocol, const Trace &trace);

// Incremental form of monitor().
class Monitor {
 public:
  explicit Monitor(const Transducer &protocol);

  // Consumes one round; returns false (and stays stopped) once a round is
  // illegal.
  bool feed(const Round &round);
  const Verdict &verdict() const { return verdict_; }

 private:
  Transducer protocol_;
  int state_;
  std::size_t consumed_ = 0;
  Verdict verdict_;
};

// (q5 (r2 (q1 n1)* d2 + r4 (q3 n3)* d4)* d5)*
std::string display_protocol_regex();
Signature display_signature();
Transducer fixture_display_protocol();

// (r (q_more b_more + q_f1 (q_f2 m_f2)* m_f1 + r_init d_init
//     + r_next d_next + w_l ok_l + q_v m_v)* d)*
std::string inplace_protocol_regex();
Signature inplace_signature();

// The 13-state in-place map program and its compiled protocol.
std::pair<Sfst, Transducer> fixture_inplace_map();

// The two-read adder: reads x twice into y and z, then emits r := y + z
// when the sum is positive.
Sfst fixture_adder();

}  // namespace cohmin

#endif  // COHMIN_PROTOCOL_HPP_
