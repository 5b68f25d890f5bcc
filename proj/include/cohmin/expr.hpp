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

// Integer/boolean expression language for SFST guards and updates.
// Arithmetic is checked 64-bit; overflow is an error.

#ifndef COHMIN_EXPR_HPP_
#define COHMIN_EXPR_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace cohmin {

enum class Op {
  kInt,
  kBool,
  kVar,
  kNeg,
  kNot,
  kAdd,
  kSub,
  kMul,
  kEq,
  kLt,
  kLe,
  kGt,
  kGe,
  kAnd,
  kOr,
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

// kAdd, kMul, kAnd and kOr may carry more than two operands after
// normalisation; every other operator has fixed arity.
struct ExprNode {
  Op op;
  std::int64_t value = 0;  // kInt; kBool uses 0 / 1
  std::string name;        // kVar
  std::vector<Expr> args;
};

Expr int_lit(std::int64_t value);
Expr bool_lit(bool value);
Expr var(std::string name);
Expr unary(Op op, Expr operand);
Expr binary(Op op, Expr lhs, Expr rhs);

enum class Type { kInt, kBool };
using Value = std::variant<std::int64_t, bool>;

std::string to_string(const Expr &e);
std::string to_string(const Value &v);

// Free variable names.
std::set<std::string> variables(const Expr &e);
// Integer literals, in order of occurrence.
std::vector<std::int64_t> literals(const Expr &e);

// Variables are integer-typed. Throws Error(kTypeError), or
// Error(kUnboundReference) when `bound` rejects a name.
Type typecheck(const Expr &e,
               const std::function<bool(const std::string &)> &bound);

using Env = std::map<std::string, std::int64_t>;

// Throws Error(kUnboundReference), Error(kTypeError) or Error(kOverflow).
Value eval(const Expr &e, const Env &env);

// Structural normal form: nested +, *, and, or are flattened; operands of
// commutative operators are sorted; constants are folded where folding
// cannot overflow; a > b becomes b < a and a >= b becomes b <= a; double
// negations cancel.
Expr normalise(const Expr &e);

enum class EquivMode { kStructural, kBoundedSemantic };

struct Domain {
  std::int64_t lo = -4;
  std::int64_t hi = 4;
};

// Structural: equal normal forms. Bounded-semantic: equal outcome (value
// or error) on every assignment of the free variables drawn from `domain`.
// Throws Error(kTypeError) when the two sides have different types, and
// Error(kResourceLimit) past 10^6 assignments.
bool guard_equiv(const Expr &a, const Expr &b,
                 EquivMode mode = EquivMode::kStructural,
                 const Domain &domain = {});

}  // namespace cohmin

#endif  // COHMIN_EXPR_HPP_
