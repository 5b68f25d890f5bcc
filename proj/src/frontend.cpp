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

#include "cohmin/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace cohmin {
namespace {

enum class Tok { kIdent, kNumber, kString, kPunct, kEnd };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
  std::size_t offset;
};

std::vector<Token> Lex(std::string_view s) {
  static const char *const kTwo[] = {"->", ":=", "<=", ">="};
  std::vector<Token> out;
  int line = 1;
  std::size_t line_start = 0;
  std::size_t i = 0;
  auto column = [&](std::size_t at) {
    return static_cast<int>(at - line_start) + 1;
  };
  while (i < s.size()) {
    const char c = s[i];
    if (c == '\n') {
      ++line;
      line_start = ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
        std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                              s[i] == '_'))
        ++i;
      const std::string text(s.substr(start, i - start));
      const bool number = std::all_of(text.begin(), text.end(), [](char x) {
        return std::isdigit(static_cast<unsigned char>(x));
      });
      out.push_back({number ? Tok::kNumber : Tok::kIdent, text, line,
                     column(start), start});
      continue;
    }
    if (c == '"') {
      std::string text;
      ++i;
      while (i < s.size() && s[i] != '"' && s[i] != '\n') {
        if (s[i] == '\\' && i + 1 < s.size()) ++i;
        text += s[i++];
      }
      if (i >= s.size() || s[i] != '"')
        throw ParseError(line, column(start), "unterminated string");
      ++i;
      out.push_back({Tok::kString, text, line, column(start), start});
      continue;
    }
    std::string punct(1, c);
    for (const char *two : kTwo)
      if (s.substr(i, 2) == two) punct = two;
    if (punct.size() == 1 && std::string_view("{}(),;:+-*=<>").find(c) ==
                                 std::string_view::npos)
      throw ParseError(line, column(start),
                       "unexpected character '" + punct + "'");
    i += punct.size();
    out.push_back({Tok::kPunct, punct, line, column(start), start});
  }
  out.push_back({Tok::kEnd, "", line, column(i), i});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text), tokens_(Lex(text)) {}

  const Token &Peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token &Next() {
    const Token &t = Peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool AtEnd() const { return Peek().kind == Tok::kEnd; }
  bool IsPunct(const char *p) const {
    return Peek().kind == Tok::kPunct && Peek().text == p;
  }
  bool IsWord(const char *w) const {
    return Peek().kind == Tok::kIdent && Peek().text == w;
  }

  [[noreturn]] void Fail(const Token &t, const std::string &message,
                         std::string item = {}) const {
    throw ParseError(t.line, t.column, message, std::move(item));
  }

  static std::string Describe(const Token &t) {
    return t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
  }

  void Expect(const char *p) {
    if (!IsPunct(p)) Fail(Peek(), std::string("expected '") + p + "' but found " +
                                      Describe(Peek()));
    Next();
  }

  void ExpectWord(const char *w) {
    if (!IsWord(w)) Fail(Peek(), std::string("expected '") + w + "' but found " +
                                     Describe(Peek()));
    Next();
  }

  Label ParseLabel() {
    if (Peek().kind != Tok::kIdent)
      Fail(Peek(), "expected a label but found " + Describe(Peek()));
    return Next().text;
  }

  StateName ParseState() {
    const Token &t = Peek();
    if (t.kind != Tok::kIdent && t.kind != Tok::kNumber &&
        t.kind != Tok::kString)
      Fail(t, "expected a state name but found " + Describe(t));
    return Next().text;
  }

  // Comma-separated, possibly empty, terminated by ';' (consumed).
  template <typename F>
  auto List(F item) {
    std::vector<decltype(item())> out;
    if (IsPunct(";")) {
      Next();
      return out;
    }
    out.push_back(item());
    while (IsPunct(",")) {
      Next();
      out.push_back(item());
    }
    Expect(";");
    return out;
  }

  // `in a, b; out c;` with either part optional.
  Signature ParseSignatureBody() {
    Signature sig;
    bool any = false;
    for (const char *part : {"in", "out"}) {
      if (!IsWord(part)) continue;
      Next();
      any = true;
      const auto labels = List([&] { return ParseLabel(); });
      (part[0] == 'i' ? sig.inputs : sig.outputs)
          .insert(labels.begin(), labels.end());
    }
    if (!any) Fail(Peek(), "expected 'in' or 'out' but found " + Describe(Peek()));
    return sig;
  }

  Round ParseRound(const Signature *sig) {
    Expect("{");
    std::vector<Label> events;
    if (!IsPunct("}")) {
      while (true) {
        const Token &t = Peek();
        Label l = ParseLabel();
        if (sig != nullptr && !sig->contains(l))
          Fail(t, "undeclared label '" + l + "'", l);
        events.push_back(std::move(l));
        if (!IsPunct(",")) break;
        Next();
      }
    }
    Expect("}");
    return Round(std::move(events));
  }

  ValuedRound ParseValuedRound() {
    Expect("{");
    ValuedRound out;
    if (!IsPunct("}")) {
      while (true) {
        const Token &t = Peek();
        const Label l = ParseLabel();
        std::optional<std::int64_t> value;
        if (IsPunct("=")) {
          Next();
          value = ParseInteger();
        }
        if (!out.emplace(l, value).second)
          Fail(t, "label '" + l + "' repeated in a round", l);
        if (!IsPunct(",")) break;
        Next();
      }
    }
    Expect("}");
    return out;
  }

  std::int64_t ParseInteger() {
    bool negative = false;
    if (IsPunct("-")) {
      Next();
      negative = true;
    }
    const Token &t = Peek();
    if (t.kind != Tok::kNumber) Fail(t, "expected an integer but found " + Describe(t));
    Next();
    return ToInt(t, negative);
  }

  std::int64_t ToInt(const Token &t, bool negative) const {
    // Accumulate negatively so that the minimum value parses.
    std::int64_t v = 0;
    for (char c : t.text)
      if (__builtin_mul_overflow(v, 10, &v) ||
          __builtin_sub_overflow(v, c - '0', &v))
        Fail(t, "integer literal out of range");
    if (!negative && __builtin_sub_overflow(std::int64_t{0}, v, &v))
      Fail(t, "integer literal out of range");
    return v;
  }

  // Expressions, loosest first.
  Expr ParseExpr() {
    Expr e = ParseAnd();
    while (IsWord("or")) {
      Next();
      e = binary(Op::kOr, e, ParseAnd());
    }
    return e;
  }

  Expr ParseAnd() {
    Expr e = ParseNot();
    while (IsWord("and")) {
      Next();
      e = binary(Op::kAnd, e, ParseNot());
    }
    return e;
  }

  Expr ParseNot() {
    if (IsWord("not")) {
      Next();
      return unary(Op::kNot, ParseNot());
    }
    return ParseComparison();
  }

  Expr ParseComparison() {
    Expr e = ParseSum();
    static const std::pair<const char *, Op> kOps[] = {
        {"=", Op::kEq}, {"<", Op::kLt}, {"<=", Op::kLe},
        {">", Op::kGt}, {">=", Op::kGe}};
    for (const auto &[text, op] : kOps)
      if (IsPunct(text)) {
        Next();
        return binary(op, e, ParseSum());
      }
    return e;
  }

  Expr ParseSum() {
    Expr e = ParseProduct();
    while (IsPunct("+") || IsPunct("-")) {
      const Op op = Next().text == "+" ? Op::kAdd : Op::kSub;
      e = binary(op, e, ParseProduct());
    }
    return e;
  }

  Expr ParseProduct() {
    Expr e = ParseUnary();
    while (IsPunct("*")) {
      Next();
      e = binary(Op::kMul, e, ParseUnary());
    }
    return e;
  }

  Expr ParseUnary() {
    if (IsPunct("-")) {
      Next();
      if (Peek().kind == Tok::kNumber) return int_lit(ToInt(Next(), true));
      return unary(Op::kNeg, ParseUnary());
    }
    return ParseAtom();
  }

  Expr ParseAtom() {
    const Token &t = Peek();
    if (t.kind == Tok::kNumber) {
      Next();
      return int_lit(ToInt(t, false));
    }
    if (IsPunct("(")) {
      Next();
      Expr e = ParseExpr();
      Expect(")");
      return e;
    }
    if (t.kind == Tok::kIdent) {
      if (t.text == "true" || t.text == "false") {
        Next();
        return bool_lit(t.text == "true");
      }
      if (t.text == "and" || t.text == "or" || t.text == "not")
        Fail(t, "unexpected '" + t.text + "'");
      Next();
      return var(t.text);
    }
    Fail(t, "expected an expression but found " + Describe(t));
  }

  std::string_view text() const { return text_; }

 private:
  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

SfstSpec ParseModel(std::string_view text, bool symbolic) {
  Parser p(text);
  SfstSpec spec;
  bool have_signature = false, have_states = false, have_initial = false,
       have_registers = false;
  auto once = [&](bool &seen, const Token &t) {
    if (seen) p.Fail(t, "'" + t.text + "' given twice");
    seen = true;
  };
  while (!p.AtEnd()) {
    const Token t = p.Peek();
    if (t.kind != Tok::kIdent) p.Fail(t, "expected a section keyword");
    p.Next();
    if (t.text == "signature") {
      once(have_signature, t);
      spec.signature = p.ParseSignatureBody();
    } else if (t.text == "states") {
      once(have_states, t);
      const auto states = p.List([&] { return p.ParseState(); });
      spec.states.insert(spec.states.end(), states.begin(), states.end());
    } else if (t.text == "initial") {
      once(have_initial, t);
      spec.initial = p.ParseState();
      p.Expect(";");
    } else if (t.text == "registers" && symbolic) {
      once(have_registers, t);
      spec.registers = p.List([&] { return p.ParseLabel(); });
    } else if (t.text == "trans") {
      if (!have_signature)
        p.Fail(t, "the signature must precede the transitions");
      SfstTransition tr;
      tr.source = p.ParseState();
      p.Expect("->");
      tr.target = p.ParseState();
      p.Expect(":");
      tr.round = p.ParseRound(&spec.signature);
      tr.guard = bool_lit(true);
      if (symbolic && p.IsWord("when")) {
        p.Next();
        tr.guard = p.ParseExpr();
      }
      if (symbolic && p.IsWord("do")) {
        p.Next();
        while (true) {
          Update u;
          u.target = p.ParseLabel();
          p.Expect(":=");
          u.expr = p.ParseExpr();
          tr.updates.push_back(std::move(u));
          if (!p.IsPunct(",")) break;
          p.Next();
        }
      }
      p.Expect(";");
      spec.transitions.push_back(std::move(tr));
    } else {
      p.Fail(t, "unknown section '" + t.text + "'");
    }
  }
  if (!have_signature) p.Fail(p.Peek(), "missing 'signature'");
  if (!have_states) p.Fail(p.Peek(), "missing 'states'");
  if (!have_initial) p.Fail(p.Peek(), "missing 'initial'");
  return spec;
}

std::string JoinLabels(const std::set<Label> &labels) {
  std::string out;
  for (const Label &l : labels) out += (out.empty() ? " " : ", ") + l;
  return out;
}

std::string SignatureLine(const Signature &sig) {
  return "signature in" + JoinLabels(sig.inputs) + "; out" +
         JoinLabels(sig.outputs) + ";\n";
}

std::string StatesLine(const std::vector<StateName> &states) {
  std::string out = "states";
  for (std::size_t i = 0; i < states.size(); ++i)
    out += (i == 0 ? " " : ", ") + format_state(states[i]);
  return out + ";\n";
}

std::string SymbolicSuffix(const Sfst::Arc &a) {
  std::string out;
  if (!(a.guard->op == Op::kBool && a.guard->value != 0))
    out += " when " + to_string(a.guard);
  for (std::size_t i = 0; i < a.updates.size(); ++i)
    out += (i == 0 ? " do " : ", ") + a.updates[i].target +
           " := " + to_string(a.updates[i].expr);
  return out;
}

std::string DotEscape(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

template <typename Model, typename EdgeLabel>
std::string Dot(const Model &t, EdgeLabel label) {
  std::ostringstream out;
  out << "digraph transducer {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (int s = 0; s < t.num_states(); ++s) {
    out << "  \"" << DotEscape(t.name(s)) << "\"";
    if (s == t.initial()) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (const auto &a : t.arcs())
    out << "  \"" << DotEscape(t.name(a.source)) << "\" -> \""
        << DotEscape(t.name(a.target)) << "\" [label=\"" << DotEscape(label(a))
        << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace

Transducer parse_transducer(std::string_view text) {
  const SfstSpec spec = ParseModel(text, false);
  TransducerSpec out{spec.signature, spec.states, spec.initial, {}};
  for (const SfstTransition &t : spec.transitions)
    out.transitions.push_back({t.source, t.round, t.target});
  return validate(out);
}

Sfst parse_sfst(std::string_view text) {
  return validate_sfst(ParseModel(text, true));
}

Trace parse_trace(std::string_view text) {
  Parser p(text);
  Trace out;
  while (!p.AtEnd()) out.push_back(p.ParseRound(nullptr));
  return out;
}

ValuedTrace parse_valued_trace(std::string_view text) {
  Parser p(text);
  ValuedTrace out;
  while (!p.AtEnd()) out.push_back(p.ParseValuedRound());
  return out;
}

Expr parse_expr(std::string_view text) {
  Parser p(text);
  Expr e = p.ParseExpr();
  if (!p.AtEnd()) p.Fail(p.Peek(), "unexpected " + Parser::Describe(p.Peek()));
  return e;
}

ProtocolFile parse_protocol_file(std::string_view text) {
  Parser p(text);
  ProtocolFile out;
  p.ExpectWord("alphabet");
  if (p.IsWord("in") || p.IsWord("out")) {
    out.signature = p.ParseSignatureBody();
  } else {
    const auto labels = p.List([&] { return p.ParseLabel(); });
    out.signature.inputs.insert(labels.begin(), labels.end());
  }
  const Token start = p.Peek();
  p.ExpectWord("regex");
  const Token body = p.Peek();
  const std::size_t end = text.find(';', body.offset);
  if (end == std::string_view::npos) p.Fail(start, "expected ';' after the regex");
  try {
    out.regex = parse_regex(text.substr(body.offset, end - body.offset));
  } catch (const ParseError &e) {
    const int line = body.line + e.line() - 1;
    const int column = e.line() == 1 ? body.column + e.column() - 1 : e.column();
    std::string message = e.what();
    message = message.substr(message.find(": ", message.find(": ") + 2) + 2);
    throw ParseError(line, column, message);
  }
  Parser rest(text.substr(end + 1));
  if (!rest.AtEnd()) {
    const Token &t = rest.Peek();
    throw ParseError(t.line + body.line - 1, t.column,
                     "unexpected " + Parser::Describe(t) + " after the regex");
  }
  return out;
}

Transducer load_protocol(std::string_view text) {
  Parser p(text);
  if (p.IsWord("alphabet")) {
    const ProtocolFile f = parse_protocol_file(text);
    return compile_regex(f.regex, f.signature);
  }
  return protocol_transducer(parse_sfst(text));
}

std::string format_state(const StateName &s) {
  const bool plain = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
  if (plain) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string serialise(const Transducer &t) {
  std::string out = SignatureLine(t.signature()) + StatesLine(t.states()) +
                    "initial " + format_state(t.initial_name()) + ";\n";
  for (const auto &a : t.arcs())
    out += "trans " + format_state(t.name(a.source)) + " -> " +
           format_state(t.name(a.target)) + " : " + a.round.to_string() +
           ";\n";
  return out;
}

std::string serialise(const Sfst &t) {
  std::string out = SignatureLine(t.signature()) + StatesLine(t.states());
  if (!t.registers().empty()) {
    out += "registers";
    for (std::size_t i = 0; i < t.registers().size(); ++i)
      out += (i == 0 ? " " : ", ") + t.registers()[i];
    out += ";\n";
  }
  out += "initial " + format_state(t.initial_name()) + ";\n";
  for (const auto &a : t.arcs())
    out += "trans " + format_state(t.name(a.source)) + " -> " +
           format_state(t.name(a.target)) + " : " + a.round.to_string() +
           SymbolicSuffix(a) + ";\n";
  return out;
}

std::string serialise(const Trace &t) {
  std::string out;
  for (const Round &r : t) out += r.to_string() + "\n";
  return out;
}

std::string serialise(const ValuedTrace &t) {
  std::string out;
  for (const ValuedRound &r : t) {
    out += "{";
    bool first = true;
    for (const auto &[l, v] : r) {
      if (!first) out += ", ";
      first = false;
      out += l;
      if (v) out += "=" + std::to_string(*v);
    }
    out += "}\n";
  }
  return out;
}

std::string to_dot(const Transducer &t) {
  return Dot(t, [](const Transducer::Arc &a) { return a.round.to_string(); });
}

std::string to_dot(const Sfst &t) {
  return Dot(t, [](const Sfst::Arc &a) {
    return a.round.to_string() + SymbolicSuffix(a);
  });
}

}  // namespace cohmin
