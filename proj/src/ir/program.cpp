// SPDX-License-Identifier: Apache-2.0
#include "rtune/ir/program.hpp"

#include <algorithm>
#include <map>

namespace rtune {

LinExpr LinExpr::var(VarId v, Int coeff) {
  LinExpr e;
  if (coeff != 0) e.terms.emplace_back(v, coeff);
  return e;
}

bool LinExpr::mentions(VarId v) const { return coeff(v) != 0; }

Int LinExpr::coeff(VarId v) const {
  for (const auto& [var, c] : terms) {
    if (var == v) return c;
  }
  return 0;
}

LinExpr LinExpr::operator+(const LinExpr& o) const {
  std::map<VarId, Int> acc;
  for (const auto& [v, c] : terms) acc[v] += c;
  for (const auto& [v, c] : o.terms) acc[v] += c;
  LinExpr r;
  r.constant = constant + o.constant;
  for (const auto& [v, c] : acc) {
    if (c != 0) r.terms.emplace_back(v, c);
  }
  return r;
}

LinExpr LinExpr::operator-(const LinExpr& o) const { return *this + o.scaled(-1); }

LinExpr LinExpr::scaled(Int c) const {
  LinExpr r;
  if (c == 0) return r;
  r.constant = constant * c;
  for (const auto& [v, k] : terms) r.terms.emplace_back(v, k * c);
  return r;
}

RelOp negate(RelOp op) {
  switch (op) {
    case RelOp::Lt:
      return RelOp::Ge;
    case RelOp::Le:
      return RelOp::Gt;
    case RelOp::Gt:
      return RelOp::Le;
    case RelOp::Ge:
      return RelOp::Lt;
    case RelOp::Eq:
      return RelOp::Ne;
    case RelOp::Ne:
      return RelOp::Eq;
  }
  return op;
}

const char* to_string(RelOp op) {
  switch (op) {
    case RelOp::Lt:
      return "<";
    case RelOp::Le:
      return "<=";
    case RelOp::Gt:
      return ">";
    case RelOp::Ge:
      return ">=";
    case RelOp::Eq:
      return "==";
    case RelOp::Ne:
      return "!=";
  }
  return "?";
}

BoolExpr BoolExpr::constant(bool v) {
  BoolExpr e;
  e.kind = Kind::Const;
  e.value = v;
  return e;
}

BoolExpr BoolExpr::variable(VarId v) {
  BoolExpr e;
  e.kind = Kind::Var;
  e.var = v;
  return e;
}

BoolExpr BoolExpr::compare(LinExpr lhs, RelOp op, LinExpr rhs) {
  BoolExpr e;
  e.kind = Kind::Cmp;
  e.op = op;
  e.lhs = std::move(lhs);
  e.rhs = std::move(rhs);
  return e;
}

BoolExpr BoolExpr::negation(BoolExpr inner) {
  BoolExpr e;
  e.kind = Kind::Not;
  e.args.push_back(std::move(inner));
  return e;
}

BoolExpr BoolExpr::conjunction(std::vector<BoolExpr> args) {
  BoolExpr e;
  e.kind = Kind::And;
  e.args = std::move(args);
  return e;
}

BoolExpr BoolExpr::disjunction(std::vector<BoolExpr> args) {
  BoolExpr e;
  e.kind = Kind::Or;
  e.args = std::move(args);
  return e;
}

const char* to_string(AssertionKind k) {
  switch (k) {
    case AssertionKind::DivZero:
      return "div-zero";
    case AssertionKind::IntOverflow:
      return "int-overflow";
    case AssertionKind::BufOverflow:
      return "buf-overflow";
    case AssertionKind::UseAfterFree:
      return "use-after-free";
  }
  return "?";
}

const char* keyword(AssertionKind k) {
  switch (k) {
    case AssertionKind::DivZero:
      return "div";
    case AssertionKind::IntOverflow:
      return "overflow";
    case AssertionKind::BufOverflow:
      return "bounds";
    case AssertionKind::UseAfterFree:
      return "uaf";
  }
  return "?";
}

std::optional<AssertionKind> parse_assertion_kind(const std::string& s) {
  for (AssertionKind k : kAllAssertionKinds) {
    if (s == to_string(k) || s == keyword(k)) return k;
  }
  return std::nullopt;
}

const char* to_string(BinOpKind op) {
  switch (op) {
    case BinOpKind::Add:
      return "+";
    case BinOpKind::Sub:
      return "-";
    case BinOpKind::Mul:
      return "*";
    case BinOpKind::Div:
      return "/";
    case BinOpKind::Mod:
      return "%";
  }
  return "?";
}

VarId Function::scratch() const {
  for (VarId v = 0; v < int_roles.size(); ++v) {
    if (int_roles[v] == IntVarRole::Scratch) return v;
  }
  throw std::logic_error("function '" + name + "' has no scratch variable");
}

std::vector<std::uint32_t> Function::successors(std::uint32_t block) const {
  const Terminator& t = blocks.at(block).term;
  if (const auto* g = std::get_if<term::Goto>(&t)) return {g->target};
  if (const auto* b = std::get_if<term::Branch>(&t)) return {b->then_target, b->else_target};
  return {};
}

std::vector<int> Program::assertion_ids() const {
  std::vector<int> ids;
  for (const Function& f : functions) {
    for (const Block& b : f.blocks) {
      for (const Stmt& s : b.stmts) {
        if (const auto* a = std::get_if<stmt::Assert>(&s)) ids.push_back(a->id);
      }
    }
  }
  return ids;
}

int Program::max_assertion_id() const {
  const auto ids = assertion_ids();
  return ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end());
}

std::size_t Program::count_assertions(std::optional<AssertionKind> kind) const {
  std::size_t n = 0;
  for (const Function& f : functions) {
    for (const Block& b : f.blocks) {
      for (const Stmt& s : b.stmts) {
        if (const auto* a = std::get_if<stmt::Assert>(&s)) {
          if (!kind || a->kind == *kind) ++n;
        }
      }
    }
  }
  return n;
}

std::vector<Int> comparison_constants(const BoolExpr& cmp) {
  std::vector<Int> out;
  for (const LinExpr* side : {&cmp.lhs, &cmp.rhs}) {
    if (side->constant != 0 || side->terms.empty()) out.push_back(side->constant);
  }
  return out;
}

}  // namespace rtune
