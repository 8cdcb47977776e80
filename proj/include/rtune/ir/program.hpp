// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rtune/domains/bound.hpp"

namespace rtune {

/// Index into a function's integer or boolean variable table.
using VarId = std::uint32_t;

/// c0 + sum(ci * vi); terms sorted by variable, coefficients non-zero.
struct LinExpr {
  std::vector<std::pair<VarId, Int>> terms;
  Int constant = 0;

  static LinExpr var(VarId v, Int coeff = 1);
  static LinExpr constant_of(Int c) { return LinExpr{{}, c}; }

  bool is_constant() const { return terms.empty(); }
  bool mentions(VarId v) const;
  Int coeff(VarId v) const;

  LinExpr operator+(const LinExpr& o) const;
  LinExpr operator-(const LinExpr& o) const;
  LinExpr scaled(Int c) const;

  bool operator==(const LinExpr&) const = default;
};

enum class RelOp { Lt, Le, Gt, Ge, Eq, Ne };

RelOp negate(RelOp op);
const char* to_string(RelOp op);

/// Boolean expression over comparisons of linear expressions and boolean variables.
struct BoolExpr {
  enum class Kind { Const, Var, Cmp, Not, And, Or };

  Kind kind = Kind::Const;
  bool value = true;  // Const
  VarId var = 0;      // Var
  RelOp op = RelOp::Eq;
  LinExpr lhs;  // Cmp
  LinExpr rhs;
  std::vector<BoolExpr> args;  // Not (one), And/Or (two or more)

  static BoolExpr constant(bool v);
  static BoolExpr variable(VarId v);
  static BoolExpr compare(LinExpr lhs, RelOp op, LinExpr rhs);
  static BoolExpr negation(BoolExpr e);
  static BoolExpr conjunction(std::vector<BoolExpr> args);
  static BoolExpr disjunction(std::vector<BoolExpr> args);

  bool operator==(const BoolExpr&) const = default;
};

enum class AssertionKind { DivZero, IntOverflow, BufOverflow, UseAfterFree };

inline constexpr AssertionKind kAllAssertionKinds[] = {AssertionKind::DivZero, AssertionKind::IntOverflow,
                                                       AssertionKind::BufOverflow, AssertionKind::UseAfterFree};

/// Long names: div-zero, int-overflow, buf-overflow, use-after-free.
const char* to_string(AssertionKind k);
/// Short keywords used in the textual IR: div, overflow, bounds, uaf.
const char* keyword(AssertionKind k);
/// Accepts both spellings.
std::optional<AssertionKind> parse_assertion_kind(const std::string& s);

enum class BinOpKind { Add, Sub, Mul, Div, Mod };
const char* to_string(BinOpKind op);

namespace stmt {

struct Assign {
  VarId dst;
  LinExpr expr;
  bool operator==(const Assign&) const = default;
};
/// dst = lhs op rhs where each operand is a variable or a constant.
struct BinOp {
  VarId dst;
  LinExpr lhs;
  BinOpKind op;
  LinExpr rhs;
  bool operator==(const BinOp&) const = default;
};
struct BoolAssign {
  VarId dst;
  BoolExpr expr;
  bool operator==(const BoolAssign&) const = default;
};
struct Havoc {
  VarId dst;
  Bound lo;
  Bound hi;
  bool operator==(const Havoc&) const = default;
};
struct Assume {
  BoolExpr cond;
  bool operator==(const Assume&) const = default;
};
struct Assert {
  AssertionKind kind;
  BoolExpr cond;
  int id;
  bool operator==(const Assert&) const = default;
};
struct ArrStore {
  std::uint32_t array;
  LinExpr index;
  LinExpr value;
  bool operator==(const ArrStore&) const = default;
};
struct ArrLoad {
  VarId dst;
  std::uint32_t array;
  LinExpr index;
  bool operator==(const ArrLoad&) const = default;
};
struct Alloc {
  std::uint32_t handle;
  bool operator==(const Alloc&) const = default;
};
struct Free {
  std::uint32_t handle;
  bool operator==(const Free&) const = default;
};
struct Deref {
  std::uint32_t handle;
  bool operator==(const Deref&) const = default;
};

}  // namespace stmt

using Stmt = std::variant<stmt::Assign, stmt::BinOp, stmt::BoolAssign, stmt::Havoc, stmt::Assume, stmt::Assert,
                          stmt::ArrStore, stmt::ArrLoad, stmt::Alloc, stmt::Free, stmt::Deref>;

namespace term {
struct Goto {
  std::uint32_t target;
  bool operator==(const Goto&) const = default;
};
struct Branch {
  BoolExpr cond;
  std::uint32_t then_target;
  std::uint32_t else_target;
  bool operator==(const Branch&) const = default;
};
struct Return {
  bool operator==(const Return&) const = default;
};
}  // namespace term

using Terminator = std::variant<term::Goto, term::Branch, term::Return>;

struct Block {
  std::string name;
  std::vector<Stmt> stmts;
  Terminator term;
  bool operator==(const Block&) const = default;
};

enum class IntVarRole {
  Program,  // declared by the source
  Status,   // allocation status of a region handle: 1 allocated, 0 otherwise
  Cell,     // smashed summary cell of an array
  Scratch,  // reserved for the analyzer
};

struct ArrayDecl {
  std::string name;
  VarId length;
  VarId cell;
  bool operator==(const ArrayDecl&) const = default;
};

struct HandleDecl {
  std::string name;
  VarId status;
  bool operator==(const HandleDecl&) const = default;
};

struct Function {
  std::string name;
  std::vector<VarId> params;
  std::vector<std::string> int_vars;
  std::vector<IntVarRole> int_roles;
  std::vector<std::string> bool_vars;
  std::vector<ArrayDecl> arrays;
  std::vector<HandleDecl> handles;
  std::vector<Block> blocks;
  std::uint32_t entry = 0;

  std::size_t num_ints() const { return int_vars.size(); }
  std::size_t num_bools() const { return bool_vars.size(); }
  VarId scratch() const;
  std::vector<std::uint32_t> successors(std::uint32_t block) const;

  bool operator==(const Function&) const = default;
};

struct Program {
  std::vector<Function> functions;

  /// All assertion ids in program order.
  std::vector<int> assertion_ids() const;
  int max_assertion_id() const;
  std::size_t count_assertions(std::optional<AssertionKind> kind = std::nullopt) const;

  bool operator==(const Program&) const = default;
};

/// Raised for malformed programs; carries the source line when known.
class ProgramError : public std::runtime_error {
 public:
  explicit ProgramError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Integer literals of a comparison as written: the constant of each side
/// that is either non-zero or has no variable terms.
std::vector<Int> comparison_constants(const BoolExpr& cmp);

}  // namespace rtune
