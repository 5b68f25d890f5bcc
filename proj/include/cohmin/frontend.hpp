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

// Text formats, canonical serialisation and DOT export. The grammars are
// documented in docs/formats.md. Parse failures raise ParseError with a
// 1-based line and column.

#ifndef COHMIN_FRONTEND_HPP_
#define COHMIN_FRONTEND_HPP_

#include <string>
#include <string_view>

#include "cohmin/kernel.hpp"
#include "cohmin/protocol.hpp"
#include "cohmin/sfst.hpp"

namespace cohmin {

// Transducer file. Labels used in transitions must be declared in the
// signature; the model is then validated (ValidationError).
Transducer parse_transducer(std::string_view text);

// SFST file: a transducer file with an optional `registers` section and
// optional `when` / `do` clauses on transitions.
Sfst parse_sfst(std::string_view text);

// One round per line: `{a}`, `{}`, `{a, b}`.
Trace parse_trace(std::string_view text);

// One valued round per line: `{x=2}`, `{x=-1, r}`.
ValuedTrace parse_valued_trace(std::string_view text);

Expr parse_expr(std::string_view text);

struct ProtocolFile {
  Signature signature;
  Regex regex;
};

// `alphabet a, b;` (every label an input) or `alphabet in a; out b;`,
// followed by `regex <regex>;`.
ProtocolFile parse_protocol_file(std::string_view text);

// A protocol given either as a regex file or as a transducer or symbolic
// protocol file.
Transducer load_protocol(std::string_view text);

// Canonical text: states sorted, transitions sorted by source, round and
// target, so equal models print identically.
std::string serialise(const Transducer &t);
std::string serialise(const Sfst &t);
std::string serialise(const Trace &t);
std::string serialise(const ValuedTrace &t);

// Plain names print bare; anything else is double-quoted.
std::string format_state(const StateName &s);

// Nodes are labelled by state name; the initial state is drawn as a
// double circle. Edges carry `{round}` and, for SFSTs, the guard and
// updates.
std::string to_dot(const Transducer &t);
std::string to_dot(const Sfst &t);

}  // namespace cohmin

#endif  // COHMIN_FRONTEND_HPP_
