// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <random>
#include <vector>

#include "rtune/domains/state.hpp"

namespace rtune::testing {

/// Three program integers x, y, z, the scratch variable and one boolean b.
inline Function small_function() {
  Function f;
  f.name = "f";
  f.int_vars = {"x", "y", "z", "$tmp"};
  f.int_roles = {IntVarRole::Program, IntVarRole::Program, IntVarRole::Program, IntVarRole::Scratch};
  f.bool_vars = {"b"};
  f.blocks.push_back(Block{"entry", {}, term::Return{}});
  return f;
}

inline constexpr VarId kX = 0, kY = 1, kZ = 2;
inline constexpr Int kBox = 8;

inline Int pick(std::mt19937_64& rng, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

inline LinExpr random_linexpr(std::mt19937_64& rng) {
  const VarId a = static_cast<VarId>(pick(rng, 0, 2));
  const VarId b = static_cast<VarId>(pick(rng, 0, 2));
  LinExpr e = LinExpr::var(a, pick(rng, 0, 1) ? 1 : -1) + LinExpr::constant_of(pick(rng, -6, 6));
  switch (pick(rng, 0, 3)) {
    case 0:
      return LinExpr::constant_of(pick(rng, -6, 6));
    case 1:
      return e;
    case 2:
      return e + LinExpr::var(b, pick(rng, 0, 1) ? 1 : -1);
    default:
      return e + LinExpr::var(b, pick(rng, -2, 2));
  }
}

inline BoolExpr random_condition(std::mt19937_64& rng) {
  static constexpr RelOp ops[] = {RelOp::Lt, RelOp::Le, RelOp::Gt, RelOp::Ge, RelOp::Eq, RelOp::Ne};
  BoolExpr c = BoolExpr::compare(random_linexpr(rng), ops[pick(rng, 0, 5)], random_linexpr(rng));
  switch (pick(rng, 0, 5)) {
    case 0:
      return BoolExpr::variable(0);
    case 1:
      return BoolExpr::disjunction({c, BoolExpr::compare(random_linexpr(rng), ops[pick(rng, 0, 5)],
                                                         random_linexpr(rng))});
    case 2:
      return BoolExpr::negation(c);
    default:
      return c;
  }
}

inline Stmt random_stmt(std::mt19937_64& rng) {
  const VarId x = static_cast<VarId>(pick(rng, 0, 2));
  static constexpr BinOpKind ops[] = {BinOpKind::Add, BinOpKind::Sub, BinOpKind::Mul, BinOpKind::Div,
                                      BinOpKind::Mod};
  auto atom = [&]() {
    return pick(rng, 0, 2) ? LinExpr::var(static_cast<VarId>(pick(rng, 0, 2)))
                           : LinExpr::constant_of(pick(rng, -4, 4));
  };
  switch (pick(rng, 0, 5)) {
    case 0:
      return stmt::Assign{x, random_linexpr(rng)};
    case 1:
      return stmt::BinOp{x, atom(), ops[pick(rng, 0, 4)], atom()};
    case 2: {
      const Int lo = pick(rng, -kBox, kBox);
      return stmt::Havoc{x, Bound(lo), Bound(pick(rng, lo, kBox))};
    }
    case 3:
      return stmt::BoolAssign{0, random_condition(rng)};
    default:
      return stmt::Assume{random_condition(rng)};
  }
}

/// A random state reached from top by a few statements, sometimes joined
/// with a second such state.
template <class D>
D random_state(std::mt19937_64& rng, const Function& f) {
  auto chain = [&]() {
    D s = D::top(layout_of(f));
    for (VarId v = 0; v < 3; ++v) {
      const Int lo = pick(rng, -kBox, kBox);
      s.assign_interval(v, Interval(lo, pick(rng, lo, kBox)));
    }
    const int n = static_cast<int>(pick(rng, 0, 4));
    for (int i = 0; i < n; ++i) {
      D next = s;
      transfer(next, f, random_stmt(rng), TransferOptions{});
      if (!next.is_bottom() || pick(rng, 0, 9) == 0) s = std::move(next);
    }
    return s;
  };
  D s = chain();
  if (pick(rng, 0, 2) == 0) s = s.join(chain());
  if (pick(rng, 0, 29) == 0) s.set_bottom();
  return s;
}

/// Calls fn on every point with x, y, z in [-kBox, kBox], scratch 0 and
/// both values of b.
inline void for_each_point(const std::function<void(const Point&)>& fn) {
  Point p{{0, 0, 0, 0}, {0}};
  for (Int x = -kBox; x <= kBox; ++x) {
    for (Int y = -kBox; y <= kBox; ++y) {
      for (Int z = -kBox; z <= kBox; ++z) {
        for (char b = 0; b < 2; ++b) {
          p.ints = {x, y, z, 0};
          p.bools = {b};
          fn(p);
        }
      }
    }
  }
}

inline Int eval(const LinExpr& e, const Point& p) {
  Int v = e.constant;
  for (const auto& [x, c] : e.terms) v += c * p.ints[x];
  return v;
}

inline bool eval(const BoolExpr& e, const Point& p) {
  switch (e.kind) {
    case BoolExpr::Kind::Const:
      return e.value;
    case BoolExpr::Kind::Var:
      return p.bools[e.var] != 0;
    case BoolExpr::Kind::Not:
      return !eval(e.args[0], p);
    case BoolExpr::Kind::And:
      for (const auto& a : e.args) {
        if (!eval(a, p)) return false;
      }
      return true;
    case BoolExpr::Kind::Or:
      for (const auto& a : e.args) {
        if (eval(a, p)) return true;
      }
      return false;
    case BoolExpr::Kind::Cmp: {
      const Int l = eval(e.lhs, p), r = eval(e.rhs, p);
      switch (e.op) {
        case RelOp::Lt:
          return l < r;
        case RelOp::Le:
          return l <= r;
        case RelOp::Gt:
          return l > r;
        case RelOp::Ge:
          return l >= r;
        case RelOp::Eq:
          return l == r;
        case RelOp::Ne:
          return l != r;
      }
    }
  }
  return false;
}

/// Concrete successors of p under one straight-line statement.
inline std::vector<Point> concrete_post(const Stmt& st, const Point& p) {
  std::vector<Point> out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        Point q = p;
        if constexpr (std::is_same_v<T, stmt::Assign>) {
          q.ints[s.dst] = eval(s.expr, p);
          out.push_back(q);
        } else if constexpr (std::is_same_v<T, stmt::BinOp>) {
          const Int l = eval(s.lhs, p), r = eval(s.rhs, p);
          switch (s.op) {
            case BinOpKind::Add:
              q.ints[s.dst] = l + r;
              break;
            case BinOpKind::Sub:
              q.ints[s.dst] = l - r;
              break;
            case BinOpKind::Mul:
              q.ints[s.dst] = l * r;
              break;
            case BinOpKind::Div:
              if (r == 0) return;
              q.ints[s.dst] = l / r;
              break;
            case BinOpKind::Mod:
              if (r == 0) return;
              q.ints[s.dst] = l % r;
              break;
          }
          out.push_back(q);
        } else if constexpr (std::is_same_v<T, stmt::Havoc>) {
          for (Int v = s.lo.value(); v <= s.hi.value(); ++v) {
            q.ints[s.dst] = v;
            out.push_back(q);
          }
        } else if constexpr (std::is_same_v<T, stmt::BoolAssign>) {
          q.bools[s.dst] = eval(s.expr, p);
          out.push_back(q);
        } else if constexpr (std::is_same_v<T, stmt::Assume>) {
          if (eval(s.cond, p)) out.push_back(q);
        } else {
          out.push_back(q);
        }
      },
      st);
  return out;
}

}  // namespace rtune::testing
