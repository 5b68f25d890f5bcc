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

#include "cohmin/protocol.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace cohmin {

Regex regex_literal(Label label) {
  return std::make_shared<const RegexNode>(
      RegexNode{RegexOp::kLiteral, std::move(label), {}});
}

Regex regex_concat(std::vector<Regex> parts) {
  if (parts.size() == 1) return parts.front();
  return std::make_shared<const RegexNode>(
      RegexNode{RegexOp::kConcat, {}, std::move(parts)});
}

Regex regex_alt(std::vector<Regex> choices) {
  if (choices.size() == 1) return choices.front();
  return std::make_shared<const RegexNode>(
      RegexNode{RegexOp::kAlt, {}, std::move(choices)});
}

Regex regex_star(Regex body) {
  return std::make_shared<const RegexNode>(
      RegexNode{RegexOp::kStar, {}, {std::move(body)}});
}

namespace {

class RegexParser {
 public:
  explicit RegexParser(std::string_view text) : text_(text) {}

  Regex Parse() {
    Regex r = Alt();
    Skip();
    if (pos_ < text_.size()) Fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  void Skip() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        line_start_ = pos_ + 1;
      }
      ++pos_;
    }
  }

  [[noreturn]] void Fail(const std::string &message) {
    throw ParseError(line_, static_cast<int>(pos_ - line_start_) + 1, message);
  }

  bool AtAtomStart() {
    Skip();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || c == '_' || std::isalpha(static_cast<unsigned char>(c));
  }

  Regex Alt() {
    std::vector<Regex> choices{Concat()};
    while (true) {
      Skip();
      if (pos_ >= text_.size() || text_[pos_] != '+') break;
      ++pos_;
      choices.push_back(Concat());
    }
    return regex_alt(std::move(choices));
  }

  Regex Concat() {
    std::vector<Regex> parts;
    while (AtAtomStart()) parts.push_back(Postfix());
    if (parts.empty()) {
      Skip();
      Fail(pos_ < text_.size()
               ? "expected an event or '(' before '" +
                     std::string(1, text_[pos_]) + "'"
               : "expected an event or '('");
    }
    return regex_concat(std::move(parts));
  }

  Regex Postfix() {
    Regex r = Atom();
    while (true) {
      Skip();
      if (pos_ >= text_.size() || text_[pos_] != '*') break;
      ++pos_;
      r = regex_star(r);
    }
    return r;
  }

  Regex Atom() {
    Skip();
    if (text_[pos_] == '(') {
      ++pos_;
      Regex r = Alt();
      Skip();
      if (pos_ >= text_.size() || text_[pos_] != ')') Fail("expected ')'");
      ++pos_;
      return r;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    return regex_literal(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::size_t line_start_ = 0;
};

void PrintRegex(const Regex &r, int min_prec, std::string &out) {
  const int prec = r->op == RegexOp::kAlt      ? 1
                   : r->op == RegexOp::kConcat ? 2
                   : r->op == RegexOp::kStar   ? 3
                                               : 4;
  const bool parens = prec < min_prec;
  if (parens) out += "(";
  switch (r->op) {
    case RegexOp::kLiteral: out += r->label; break;
    case RegexOp::kStar:
      PrintRegex(r->args[0], 4, out);
      out += "*";
      break;
    case RegexOp::kConcat:
    case RegexOp::kAlt:
      for (std::size_t i = 0; i < r->args.size(); ++i) {
        if (i > 0) out += r->op == RegexOp::kAlt ? " + " : " ";
        PrintRegex(r->args[i], prec + 1, out);
      }
      break;
  }
  if (parens) out += ")";
}

// Position-automaton bookkeeping.
struct Positions {
  std::vector<Label> labels;
  std::vector<std::set<int>> follow;
};

struct Summary {
  bool nullable;
  std::set<int> first;
  std::set<int> last;
};

Summary Glushkov(const Regex &r, Positions &pos) {
  switch (r->op) {
    case RegexOp::kLiteral: {
      const int p = static_cast<int>(pos.labels.size());
      pos.labels.push_back(r->label);
      pos.follow.emplace_back();
      return {false, {p}, {p}};
    }
    case RegexOp::kStar: {
      Summary s = Glushkov(r->args[0], pos);
      for (int l : s.last)
        pos.follow[l].insert(s.first.begin(), s.first.end());
      s.nullable = true;
      return s;
    }
    case RegexOp::kAlt: {
      Summary out{false, {}, {}};
      for (const Regex &c : r->args) {
        Summary s = Glushkov(c, pos);
        out.nullable = out.nullable || s.nullable;
        out.first.insert(s.first.begin(), s.first.end());
        out.last.insert(s.last.begin(), s.last.end());
      }
      return out;
    }
    case RegexOp::kConcat: {
      Summary out{true, {}, {}};
      for (const Regex &c : r->args) {
        Summary s = Glushkov(c, pos);
        for (int l : out.last)
          pos.follow[l].insert(s.first.begin(), s.first.end());
        if (out.nullable) out.first.insert(s.first.begin(), s.first.end());
        if (s.nullable)
          out.last.insert(s.last.begin(), s.last.end());
        else
          out.last = s.last;
        out.nullable = out.nullable && s.nullable;
      }
      return out;
    }
  }
  return {};
}

}  // namespace

Regex parse_regex(std::string_view text) { return RegexParser(text).Parse(); }

std::string to_string(const Regex &r) {
  std::string out;
  PrintRegex(r, 0, out);
  return out;
}

Transducer compile_regex(const Regex &r, const Signature &signature) {
  Positions pos;
  const Summary s = Glushkov(r, pos);
  for (const Label &l : pos.labels)
    if (!signature.contains(l))
      throw Error(ErrorKind::kUnknownLabel, l,
                  "event '" + l + "' is not a declared port");
  // Position automaton: state 0 is the start, position p is state p + 1.
  TransducerSpec nfa{signature, {"n0"}, "n0", {}};
  auto name = [](int p) { return "n" + std::to_string(p + 1); };
  for (std::size_t p = 0; p < pos.labels.size(); ++p)
    nfa.states.push_back(name(static_cast<int>(p)));
  for (int p : s.first) nfa.transitions.push_back({"n0", {pos.labels[p]}, name(p)});
  for (std::size_t p = 0; p < pos.labels.size(); ++p)
    for (int q : pos.follow[p])
      nfa.transitions.push_back(
          {name(static_cast<int>(p)), {pos.labels[q]}, name(q)});
  // Minimising and re-determinising renames states in discovery order.
  TransducerSpec dfa =
      determinize(bisim_minimize(determinize(validate(nfa)))).spec();
  auto rename = [](StateName &n) { n[0] = 'q'; };
  for (StateName &n : dfa.states) rename(n);
  rename(dfa.initial);
  for (Transition &t : dfa.transitions) {
    rename(t.source);
    rename(t.target);
  }
  return validate(dfa);
}

std::string to_string(const Verdict &v) {
  if (v.status == VerdictStatus::kOk) return "OK";
  std::string out = "VIOLATION index=" + std::to_string(v.index) +
                    " round=" + v.offending.to_string() + " expected={";
  for (std::size_t i = 0; i < v.expected.size(); ++i) {
    if (i > 0) out += ",";
    out += v.expected[i].to_string();
  }
  return out + "}";
}

Monitor::Monitor(const Transducer &protocol)
    : protocol_(is_deterministic(protocol) ? protocol
                                           : determinize(protocol)),
      state_(protocol_.initial()) {}

bool Monitor::feed(const Round &round) {
  if (verdict_.status == VerdictStatus::kViolation) return false;
  for (const Label &e : round.events())
    if (!protocol_.signature().contains(e))
      throw Error(ErrorKind::kSignatureMismatch, e,
                  "event '" + e + "' is not in the protocol's signature");
  for (const auto &a : protocol_.arcs_from(state_))
    if (a.round == round) {
      state_ = a.target;
      ++consumed_;
      return true;
    }
  verdict_.status = VerdictStatus::kViolation;
  verdict_.index = consumed_;
  verdict_.offending = round;
  for (const auto &a : protocol_.arcs_from(state_))
    verdict_.expected.push_back(a.round);
  verdict_.expected.erase(
      std::unique(verdict_.expected.begin(), verdict_.expected.end()),
      verdict_.expected.end());
  return false;
}

Verdict monitor(const Transducer &protocol, const Trace &trace) {
  Monitor m(protocol);
  for (const Round &r : trace)
    if (!m.feed(r)) break;
  return m.verdict();
}

std::string display_protocol_regex() {
  return "(q5 (r2 (q1 n1)* d2 + r4 (q3 n3)* d4)* d5)*";
}

// Opponent moves are inputs, program moves outputs.
Signature display_signature() {
  return Signature{{"q5", "d2", "q1", "d4", "q3"},
                   {"d5", "r2", "n1", "r4", "n3"}};
}

Transducer fixture_display_protocol() {
  return compile_regex(parse_regex(display_protocol_regex()),
                       display_signature());
}

std::string inplace_protocol_regex() {
  return "(r (q_more b_more + q_f1 (q_f2 m_f2)* m_f1 + r_init d_init"
         " + r_next d_next + w_l ok_l + q_v m_v)* d)*";
}

Signature inplace_signature() {
  return Signature{
      {"r", "b_more", "q_f2", "m_f1", "d_init", "d_next", "ok_l", "m_v"},
      {"d", "q_more", "q_f1", "m_f2", "r_init", "r_next", "w_l", "q_v"}};
}

std::pair<Sfst, Transducer> fixture_inplace_map() {
  SfstSpec spec;
  spec.signature = inplace_signature();
  spec.states = {"0", "B", "C", "D", "E", "F", "G",
                 "H", "I", "J", "K", "L", "M"};
  spec.registers = {"y", "z"};
  spec.initial = "0";
  auto add = [&](StateName from, Round round, Expr guard,
                 std::vector<Update> updates, StateName to) {
    spec.transitions.push_back({std::move(from), std::move(round),
                                std::move(guard), std::move(updates),
                                std::move(to)});
  };
  const Expr yes = bool_lit(true);
  const Expr empty = binary(Op::kEq, var("b_more"), int_lit(0));
  // Waiting states. A response on a port the program never awaits resets
  // to idle; some hubs may instead latch the error sink I.
  const std::map<StateName, std::set<Label>> halts = {
      {"0", {}},
      {"B", {"d_init"}},
      {"H", {"d_next"}},
      {"J", {"d_init", "d_next"}},
      {"L", {"m_v"}}};
  for (const auto &[hub, halt] : halts) {
    add(hub, {"r"}, yes, {}, "D");
    add(hub, {"b_more"}, unary(Op::kNot, empty), {}, hub == "H" ? "M" : "C");
    add(hub, {"b_more"}, empty, {}, "K");
    add(hub, {"q_f2"}, yes, {}, "E");
    add(hub, {"m_f1"}, yes, {{"z", var("m_f1")}}, "G");
    add(hub, {"ok_l"}, yes, {}, "F");
    for (const char *u : {"d_init", "d_next", "m_v"}) {
      add(hub, {u}, yes, {}, "0");
      if (halt.count(u)) add(hub, {u}, yes, {}, "I");
    }
  }
  add("D", {"q_more"}, yes, {}, "B");
  add("F", {"q_more"}, yes, {}, "H");
  add("C", {"q_f1"}, yes, {}, "J");
  add("M", {"q_f1"}, yes, {}, "J");
  add("E", {"m_f2"}, yes, {{"m_f2", var("y")}}, "J");
  add("G", {"w_l"}, yes, {{"w_l", var("z")}}, "L");
  add("K", {"d"}, yes, {}, "0");
  return {validate_sfst(spec),
          compile_regex(parse_regex(inplace_protocol_regex()),
                        inplace_signature())};
}

Sfst fixture_adder() {
  SfstSpec spec;
  spec.signature = Signature{{"x"}, {"r"}};
  spec.states = {"A", "B", "C"};
  spec.registers = {"y", "z"};
  spec.initial = "A";
  spec.transitions = {
      {"A", {"x"}, bool_lit(true), {{"y", var("x")}}, "B"},
      {"B", {"x"}, bool_lit(true), {{"z", var("x")}}, "C"},
      {"C",
       {"r"},
       binary(Op::kGt, binary(Op::kAdd, var("y"), var("z")), int_lit(0)),
       {{"r", binary(Op::kAdd, var("y"), var("z"))}},
       "A"}};
  return validate_sfst(spec);
}

}  // namespace cohmin
