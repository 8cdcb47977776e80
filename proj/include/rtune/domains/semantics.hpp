// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rtune/domains/common.hpp"
#include "rtune/ir/program.hpp"

namespace rtune {

/// Domain-independent statement semantics, written against the primitive
/// operations every domain provides (assign, forget, add_constraint, ...).

struct TransferOptions {
  bool smashing = true;
};

inline VarLayout layout_of(const Function& f) { return {f.num_ints(), f.num_bools()}; }

/// Meets `s` with l op r.
template <class D>
void add_comparison(D& s, const LinExpr& l, RelOp op, const LinExpr& r) {
  if (s.is_bottom()) return;
  LinExpr e;
  ConstraintKind k = ConstraintKind::Le;
  switch (op) {
    case RelOp::Lt:
      e = l - r;
      e.constant += 1;
      break;
    case RelOp::Le:
      e = l - r;
      break;
    case RelOp::Gt:
      e = r - l;
      e.constant += 1;
      break;
    case RelOp::Ge:
      e = r - l;
      break;
    case RelOp::Eq:
      e = l - r;
      k = ConstraintKind::Eq;
      break;
    case RelOp::Ne:
      e = l - r;
      k = ConstraintKind::Ne;
      break;
  }
  if (e.is_constant()) {
    const bool holds = k == ConstraintKind::Le ? e.constant <= 0 : (k == ConstraintKind::Eq) == (e.constant == 0);
    if (!holds) s.set_bottom();
    return;
  }
  s.add_constraint(e, k);
}

/// Meets `s` with e (or with its negation when `positive` is false).
/// Conjunctions are applied in sequence, disjunctions are joined.
template <class D>
void assume(D& s, const BoolExpr& e, bool positive = true) {
  if (s.is_bottom()) return;
  switch (e.kind) {
    case BoolExpr::Kind::Const:
      if (e.value != positive) s.set_bottom();
      return;
    case BoolExpr::Kind::Var:
      s.assume_bool(e.var, positive);
      return;
    case BoolExpr::Kind::Not:
      assume(s, e.args[0], !positive);
      return;
    case BoolExpr::Kind::Cmp:
      add_comparison(s, e.lhs, positive ? e.op : negate(e.op), e.rhs);
      return;
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or: {
      const bool sequential = (e.kind == BoolExpr::Kind::And) == positive;
      if (sequential) {
        for (const BoolExpr& a : e.args) {
          assume(s, a, positive);
          if (s.is_bottom()) return;
        }
        return;
      }
      D acc = D::bottom(s.layout());
      for (const BoolExpr& a : e.args) {
        D branch = s;
        assume(branch, a, positive);
        acc = acc.join(branch);
      }
      s = std::move(acc);
      return;
    }
  }
}

/// s entails e iff s met with not-e is bottom.
template <class D>
bool entails(const D& s, const BoolExpr& e) {
  if (s.is_bottom()) return true;
  D c = s;
  assume(c, e, false);
  return c.is_bottom();
}

template <class D>
Tri evaluate(const D& s, const BoolExpr& e) {
  if (s.is_bottom()) return Tri::Bottom;
  switch (e.kind) {
    case BoolExpr::Kind::Const:
      return tri_of(e.value);
    case BoolExpr::Kind::Var:
      return s.bool_value(e.var);
    case BoolExpr::Kind::Not:
      return tri_not(evaluate(s, e.args[0]));
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or: {
      const bool conj = e.kind == BoolExpr::Kind::And;
      Tri acc = tri_of(conj);
      for (const BoolExpr& a : e.args) acc = conj ? tri_and(acc, evaluate(s, a)) : tri_or(acc, evaluate(s, a));
      return acc;
    }
    case BoolExpr::Kind::Cmp:
      if (entails(s, e)) return Tri::True;
      if (entails(s, BoolExpr::negation(e))) return Tri::False;
      return Tri::Top;
  }
  return Tri::Top;
}

inline bool is_linear(const stmt::BinOp& b) {
  return b.op == BinOpKind::Add || b.op == BinOpKind::Sub ||
         (b.op == BinOpKind::Mul && (b.lhs.is_constant() || b.rhs.is_constant()));
}

inline LinExpr linear_form(const stmt::BinOp& b) {
  switch (b.op) {
    case BinOpKind::Add:
      return b.lhs + b.rhs;
    case BinOpKind::Sub:
      return b.lhs - b.rhs;
    default:
      return b.lhs.is_constant() ? b.rhs.scaled(b.lhs.constant) : b.lhs.scaled(b.rhs.constant);
  }
}

template <class D>
void assume_in_bounds(D& s, const Function& f, std::uint32_t array, const LinExpr& index) {
  add_comparison(s, LinExpr::constant_of(0), RelOp::Le, index);
  add_comparison(s, index, RelOp::Lt, LinExpr::var(f.arrays[array].length));
}

/// Initial state: handle statuses and array cells are 0, all else unknown.
template <class D>
D entry_state(const Function& f) {
  D s = D::top(layout_of(f));
  for (VarId v = 0; v < f.num_ints(); ++v) {
    if (f.int_roles[v] == IntVarRole::Status || f.int_roles[v] == IntVarRole::Cell) {
      s.assign(v, LinExpr::constant_of(0));
    }
  }
  return s;
}

template <class D>
void transfer(D& s, const Function& f, const Stmt& st, const TransferOptions& opt) {
  if (s.is_bottom()) return;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, stmt::Assign>) {
          s.assign(x.dst, x.expr);
        } else if constexpr (std::is_same_v<T, stmt::BinOp>) {
          if (is_linear(x)) return s.assign(x.dst, linear_form(x));
          if (x.op == BinOpKind::Div || x.op == BinOpKind::Mod) {
            add_comparison(s, x.rhs, RelOp::Ne, LinExpr::constant_of(0));
            if (s.is_bottom()) return;
          }
          s.apply_binop(x.dst, x.lhs, x.op, x.rhs);
        } else if constexpr (std::is_same_v<T, stmt::BoolAssign>) {
          s.assign_bool(x.dst, evaluate(s, x.expr), x.expr);
        } else if constexpr (std::is_same_v<T, stmt::Havoc>) {
          s.assign_interval(x.dst, Interval(x.lo, x.hi));
        } else if constexpr (std::is_same_v<T, stmt::Assume>) {
          assume(s, x.cond);
        } else if constexpr (std::is_same_v<T, stmt::Assert>) {
          // Checked by the analyzer; execution continues either way.
        } else if constexpr (std::is_same_v<T, stmt::ArrStore>) {
          assume_in_bounds(s, f, x.array, x.index);
          if (!opt.smashing || s.is_bottom()) return;
          // Weak update of the summary cell.
          D written = s;
          written.assign(f.arrays[x.array].cell, x.value);
          s = s.join(written);
        } else if constexpr (std::is_same_v<T, stmt::ArrLoad>) {
          assume_in_bounds(s, f, x.array, x.index);
          if (opt.smashing) {
            s.copy_summary(x.dst, f.arrays[x.array].cell);
          } else {
            s.forget(x.dst);
          }
        } else if constexpr (std::is_same_v<T, stmt::Alloc>) {
          s.assign(f.handles[x.handle].status, LinExpr::constant_of(1));
        } else if constexpr (std::is_same_v<T, stmt::Free>) {
          s.assign(f.handles[x.handle].status, LinExpr::constant_of(0));
        } else if constexpr (std::is_same_v<T, stmt::Deref>) {
          add_comparison(s, LinExpr::var(f.handles[x.handle].status), RelOp::Eq, LinExpr::constant_of(1));
        }
      },
      st);
}

/// Pre-state of x := e given the post-state `s`.
template <class D>
void backward_assign(D& s, const Function& f, VarId x, const LinExpr& e) {
  if (!e.mentions(x)) {
    add_comparison(s, LinExpr::var(x), RelOp::Eq, e);
    s.forget(x);
    return;
  }
  const VarId tmp = f.scratch();
  s.assign(tmp, LinExpr::var(x));
  s.forget(x);
  add_comparison(s, LinExpr::var(tmp), RelOp::Eq, e);
  s.forget(tmp);
}

/// Necessary precondition: every store whose successor lies in `s`.
template <class D>
void backward_transfer(D& s, const Function& f, const Stmt& st, const TransferOptions& opt) {
  if (s.is_bottom()) return;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, stmt::Assign>) {
          backward_assign(s, f, x.dst, x.expr);
        } else if constexpr (std::is_same_v<T, stmt::BinOp>) {
          if (is_linear(x)) return backward_assign(s, f, x.dst, linear_form(x));
          s.forget(x.dst);
          if (x.op == BinOpKind::Div || x.op == BinOpKind::Mod) {
            add_comparison(s, x.rhs, RelOp::Ne, LinExpr::constant_of(0));
          }
        } else if constexpr (std::is_same_v<T, stmt::BoolAssign>) {
          const Tri v = s.bool_value(x.dst);
          s.forget_bool(x.dst);
          if (v == Tri::Bottom) return s.set_bottom();
          if (v != Tri::Top) assume(s, x.expr, v == Tri::True);
        } else if constexpr (std::is_same_v<T, stmt::Havoc>) {
          if (x.lo.is_finite()) add_comparison(s, LinExpr::var(x.dst), RelOp::Ge, LinExpr::constant_of(x.lo.value()));
          if (x.hi.is_finite()) add_comparison(s, LinExpr::var(x.dst), RelOp::Le, LinExpr::constant_of(x.hi.value()));
          s.forget(x.dst);
        } else if constexpr (std::is_same_v<T, stmt::Assume>) {
          assume(s, x.cond);
        } else if constexpr (std::is_same_v<T, stmt::Assert>) {
        } else if constexpr (std::is_same_v<T, stmt::ArrStore>) {
          if (opt.smashing) s.forget(f.arrays[x.array].cell);
          assume_in_bounds(s, f, x.array, x.index);
        } else if constexpr (std::is_same_v<T, stmt::ArrLoad>) {
          s.forget(x.dst);
          assume_in_bounds(s, f, x.array, x.index);
        } else if constexpr (std::is_same_v<T, stmt::Alloc> || std::is_same_v<T, stmt::Free>) {
          s.forget(f.handles[x.handle].status);
        } else if constexpr (std::is_same_v<T, stmt::Deref>) {
          add_comparison(s, LinExpr::var(f.handles[x.handle].status), RelOp::Eq, LinExpr::constant_of(1));
        }
      },
      st);
}

}  // namespace rtune
