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

#include "cohmin/expr.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "cohmin/error.hpp"

namespace cohmin {

Expr int_lit(std::int64_t value) {
  return std::make_shared<const ExprNode>(ExprNode{Op::kInt, value, {}, {}});
}

Expr bool_lit(bool value) {
  return std::make_shared<const ExprNode>(
      ExprNode{Op::kBool, value ? 1 : 0, {}, {}});
}

Expr var(std::string name) {
  return std::make_shared<const ExprNode>(
      ExprNode{Op::kVar, 0, std::move(name), {}});
}

Expr unary(Op op, Expr operand) {
  return std::make_shared<const ExprNode>(
      ExprNode{op, 0, {}, {std::move(operand)}});
}

Expr binary(Op op, Expr lhs, Expr rhs) {
  return std::make_shared<const ExprNode>(
      ExprNode{op, 0, {}, {std::move(lhs), std::move(rhs)}});
}

namespace {

Expr Nary(Op op, std::vector<Expr> args) {
  return std::make_shared<const ExprNode>(ExprNode{op, 0, {}, std::move(args)});
}

const char *Symbol(Op op) {
  switch (op) {
    case Op::kAdd: return "+";
    case Op::kSub: return "-";
    case Op::kMul: return "*";
    case Op::kEq: return "=";
    case Op::kLt: return "<";
    case Op::kLe: return "<=";
    case Op::kGt: return ">";
    case Op::kGe: return ">=";
    case Op::kAnd: return "and";
    case Op::kOr: return "or";
    default: return "?";
  }
}

bool IsComparison(Op op) {
  return op == Op::kEq || op == Op::kLt || op == Op::kLe || op == Op::kGt ||
         op == Op::kGe;
}

// Binding strength; higher binds tighter.
int Precedence(const ExprNode &e) {
  switch (e.op) {
    case Op::kOr: return 1;
    case Op::kAnd: return 2;
    case Op::kNot: return 3;
    case Op::kEq: case Op::kLt: case Op::kLe: case Op::kGt: case Op::kGe:
      return 4;
    case Op::kAdd: case Op::kSub: return 5;
    case Op::kMul: return 6;
    case Op::kNeg: return 7;
    case Op::kInt: return e.value < 0 ? 7 : 8;
    default: return 8;
  }
}

void Print(const Expr &e, int min_prec, std::string &out) {
  const bool parens = Precedence(*e) < min_prec;
  if (parens) out += "(";
  switch (e->op) {
    case Op::kInt: out += std::to_string(e->value); break;
    case Op::kBool: out += e->value ? "true" : "false"; break;
    case Op::kVar: out += e->name; break;
    case Op::kNeg:
      out += "-";
      Print(e->args[0], 8, out);
      break;
    case Op::kNot:
      out += "not ";
      Print(e->args[0], 3, out);
      break;
    default: {
      const int p = Precedence(*e);
      // Comparisons do not associate; the other operators associate left.
      const int first = IsComparison(e->op) ? p + 1 : p;
      for (std::size_t i = 0; i < e->args.size(); ++i) {
        if (i > 0) out += std::string(" ") + Symbol(e->op) + " ";
        Print(e->args[i], i == 0 ? first : p + 1, out);
      }
    }
  }
  if (parens) out += ")";
}

void CollectVariables(const Expr &e, std::set<std::string> &out) {
  if (e->op == Op::kVar) out.insert(e->name);
  for (const Expr &a : e->args) CollectVariables(a, out);
}

void CollectLiterals(const Expr &e, std::vector<std::int64_t> &out) {
  if (e->op == Op::kInt) out.push_back(e->value);
  for (const Expr &a : e->args) CollectLiterals(a, out);
}

}  // namespace

std::string to_string(const Expr &e) {
  std::string out;
  Print(e, 0, out);
  return out;
}

std::string to_string(const Value &v) {
  if (const bool *b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::to_string(std::get<std::int64_t>(v));
}

std::set<std::string> variables(const Expr &e) {
  std::set<std::string> out;
  CollectVariables(e, out);
  return out;
}

std::vector<std::int64_t> literals(const Expr &e) {
  std::vector<std::int64_t> out;
  CollectLiterals(e, out);
  return out;
}

Type typecheck(const Expr &e,
               const std::function<bool(const std::string &)> &bound) {
  auto expect = [&](const Expr &a, Type t) {
    if (typecheck(a, bound) != t)
      throw Error(ErrorKind::kTypeError, to_string(a),
                  "'" + to_string(a) + "' should be " +
                      (t == Type::kInt ? "an integer" : "a boolean"));
  };
  switch (e->op) {
    case Op::kInt: return Type::kInt;
    case Op::kBool: return Type::kBool;
    case Op::kVar:
      if (!bound(e->name))
        throw Error(ErrorKind::kUnboundReference, e->name,
                    "unbound reference '" + e->name + "'");
      return Type::kInt;
    case Op::kNeg: expect(e->args[0], Type::kInt); return Type::kInt;
    case Op::kNot: expect(e->args[0], Type::kBool); return Type::kBool;
    case Op::kAdd: case Op::kSub: case Op::kMul:
      for (const Expr &a : e->args) expect(a, Type::kInt);
      return Type::kInt;
    case Op::kLt: case Op::kLe: case Op::kGt: case Op::kGe:
      for (const Expr &a : e->args) expect(a, Type::kInt);
      return Type::kBool;
    case Op::kEq:
      expect(e->args[1], typecheck(e->args[0], bound));
      return Type::kBool;
    case Op::kAnd: case Op::kOr:
      for (const Expr &a : e->args) expect(a, Type::kBool);
      return Type::kBool;
  }
  return Type::kInt;
}

namespace {

std::int64_t AsInt(const Value &v, const Expr &e) {
  if (const auto *i = std::get_if<std::int64_t>(&v)) return *i;
  throw Error(ErrorKind::kTypeError, to_string(e),
              "'" + to_string(e) + "' is not an integer");
}

bool AsBool(const Value &v, const Expr &e) {
  if (const auto *b = std::get_if<bool>(&v)) return *b;
  throw Error(ErrorKind::kTypeError, to_string(e),
              "'" + to_string(e) + "' is not a boolean");
}

std::optional<std::int64_t> Arith(Op op, std::int64_t a, std::int64_t b) {
  std::int64_t r;
  bool overflow = false;
  switch (op) {
    case Op::kAdd: overflow = __builtin_add_overflow(a, b, &r); break;
    case Op::kSub: overflow = __builtin_sub_overflow(a, b, &r); break;
    default: overflow = __builtin_mul_overflow(a, b, &r); break;
  }
  if (overflow) return std::nullopt;
  return r;
}

std::int64_t CheckedArith(Op op, std::int64_t a, std::int64_t b,
                          const Expr &e) {
  if (auto r = Arith(op, a, b)) return *r;
  throw Error(ErrorKind::kOverflow, to_string(e),
              "overflow in '" + to_string(e) + "'");
}

bool Compare(Op op, std::int64_t a, std::int64_t b) {
  switch (op) {
    case Op::kLt: return a < b;
    case Op::kLe: return a <= b;
    case Op::kGt: return a > b;
    case Op::kGe: return a >= b;
    default: return a == b;
  }
}

}  // namespace

Value eval(const Expr &e, const Env &env) {
  switch (e->op) {
    case Op::kInt: return e->value;
    case Op::kBool: return e->value != 0;
    case Op::kVar: {
      auto it = env.find(e->name);
      if (it == env.end())
        throw Error(ErrorKind::kUnboundReference, e->name,
                    "unbound reference '" + e->name + "'");
      return it->second;
    }
    case Op::kNeg:
      return CheckedArith(Op::kSub, 0, AsInt(eval(e->args[0], env), e), e);
    case Op::kNot: return !AsBool(eval(e->args[0], env), e);
    case Op::kAdd: case Op::kSub: case Op::kMul: {
      std::int64_t acc = AsInt(eval(e->args[0], env), e->args[0]);
      for (std::size_t i = 1; i < e->args.size(); ++i)
        acc = CheckedArith(e->op, acc, AsInt(eval(e->args[i], env), e->args[i]),
                           e);
      return acc;
    }
    case Op::kEq: {
      const Value a = eval(e->args[0], env), b = eval(e->args[1], env);
      if (a.index() != b.index())
        throw Error(ErrorKind::kTypeError, to_string(e),
                    "operands of '" + to_string(e) + "' differ in type");
      return a == b;
    }
    case Op::kLt: case Op::kLe: case Op::kGt: case Op::kGe:
      return Compare(e->op, AsInt(eval(e->args[0], env), e->args[0]),
                     AsInt(eval(e->args[1], env), e->args[1]));
    case Op::kAnd: case Op::kOr: {
      // Strict: every operand is evaluated.
      bool acc = e->op == Op::kAnd;
      for (const Expr &a : e->args) {
        const bool v = AsBool(eval(a, env), a);
        acc = e->op == Op::kAnd ? (acc && v) : (acc || v);
      }
      return acc;
    }
  }
  return false;
}

namespace {

bool IsInt(const Expr &e) { return e->op == Op::kInt; }

Expr NormaliseNary(const Expr &e) {
  std::vector<Expr> flat;
  for (const Expr &a : e->args) {
    Expr n = normalise(a);
    if (n->op == e->op)
      flat.insert(flat.end(), n->args.begin(), n->args.end());
    else
      flat.push_back(n);
  }
  const bool arithmetic = e->op == Op::kAdd || e->op == Op::kMul;
  std::vector<Expr> rest;
  if (arithmetic) {
    const std::int64_t unit = e->op == Op::kAdd ? 0 : 1;
    std::optional<std::int64_t> folded;
    for (const Expr &a : flat) {
      if (!IsInt(a)) {
        rest.push_back(a);
      } else if (!folded) {
        folded = a->value;
      } else if (auto r = Arith(e->op, *folded, a->value)) {
        folded = r;
      } else {
        rest.push_back(a);
      }
    }
    if (folded && (*folded != unit || rest.empty()))
      rest.push_back(int_lit(*folded));
  } else {
    const bool unit = e->op == Op::kAnd;
    for (const Expr &a : flat)
      if (!(a->op == Op::kBool && (a->value != 0) == unit)) rest.push_back(a);
    if (rest.empty()) return bool_lit(unit);
  }
  std::vector<std::pair<std::string, Expr>> keyed;
  for (const Expr &a : rest) keyed.emplace_back(to_string(a), a);
  std::sort(keyed.begin(), keyed.end(),
            [](const auto &x, const auto &y) { return x.first < y.first; });
  if (!arithmetic)
    keyed.erase(std::unique(keyed.begin(), keyed.end(),
                            [](const auto &x, const auto &y) {
                              return x.first == y.first;
                            }),
                keyed.end());
  if (keyed.size() == 1) return keyed.front().second;
  std::vector<Expr> args;
  for (auto &[key, a] : keyed) args.push_back(a);
  return Nary(e->op, std::move(args));
}

}  // namespace

Expr normalise(const Expr &e) {
  switch (e->op) {
    case Op::kInt: case Op::kBool: case Op::kVar: return e;
    case Op::kNeg: {
      Expr a = normalise(e->args[0]);
      if (IsInt(a) && a->value != std::numeric_limits<std::int64_t>::min())
        return int_lit(-a->value);
      if (a->op == Op::kNeg) return a->args[0];
      return unary(Op::kNeg, a);
    }
    case Op::kNot: {
      Expr a = normalise(e->args[0]);
      if (a->op == Op::kBool) return bool_lit(a->value == 0);
      if (a->op == Op::kNot) return a->args[0];
      return unary(Op::kNot, a);
    }
    case Op::kSub: {
      Expr a = normalise(e->args[0]), b = normalise(e->args[1]);
      if (IsInt(a) && IsInt(b))
        if (auto r = Arith(Op::kSub, a->value, b->value)) return int_lit(*r);
      return binary(Op::kSub, a, b);
    }
    case Op::kAdd: case Op::kMul: case Op::kAnd: case Op::kOr:
      return NormaliseNary(e);
    case Op::kEq: case Op::kLt: case Op::kLe: case Op::kGt: case Op::kGe: {
      Expr a = normalise(e->args[0]), b = normalise(e->args[1]);
      Op op = e->op;
      if (op == Op::kGt || op == Op::kGe) {
        std::swap(a, b);
        op = op == Op::kGt ? Op::kLt : Op::kLe;
      }
      if (IsInt(a) && IsInt(b)) return bool_lit(Compare(op, a->value, b->value));
      if (op == Op::kEq && a->op == Op::kBool && b->op == Op::kBool)
        return bool_lit(a->value == b->value);
      if (op == Op::kEq && to_string(b) < to_string(a)) std::swap(a, b);
      return binary(op, a, b);
    }
  }
  return e;
}

namespace {

struct Outcome {
  bool failed = false;
  Value value;

  bool operator==(const Outcome &) const = default;
};

Outcome Try(const Expr &e, const Env &env) {
  try {
    return {false, eval(e, env)};
  } catch (const Error &) {
    return {true, false};
  }
}

}  // namespace

bool guard_equiv(const Expr &a, const Expr &b, EquivMode mode,
                 const Domain &domain) {
  auto any = [](const std::string &) { return true; };
  if (typecheck(a, any) != typecheck(b, any))
    throw Error(ErrorKind::kTypeError, "",
                "cannot compare '" + to_string(a) + "' with '" +
                    to_string(b) + "'");
  if (mode == EquivMode::kStructural)
    return to_string(normalise(a)) == to_string(normalise(b));

  std::set<std::string> vars = variables(a);
  vars.merge(variables(b));
  const std::vector<std::string> names(vars.begin(), vars.end());
  const double width = static_cast<double>(domain.hi - domain.lo + 1);
  double total = 1;
  for (std::size_t i = 0; i < names.size(); ++i) total *= width;
  if (domain.hi < domain.lo || total > 1e6)
    throw Error(ErrorKind::kResourceLimit, "",
                "too many assignments for bounded-semantic comparison");
  Env env;
  for (const std::string &n : names) env[n] = domain.lo;
  while (true) {
    if (!(Try(a, env) == Try(b, env))) return false;
    std::size_t i = 0;
    for (; i < names.size(); ++i) {
      std::int64_t &v = env[names[i]];
      if (v < domain.hi) {
        ++v;
        break;
      }
      v = domain.lo;
    }
    if (i == names.size()) return true;
  }
}

}  // namespace cohmin
