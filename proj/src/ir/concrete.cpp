// SPDX-License-Identifier: Apache-2.0
#include "rtune/ir/concrete.hpp"

#include <limits>
#include <unordered_map>

namespace rtune {

namespace {

using Wide = __int128;

struct State {
  std::vector<Int> ints;
  std::vector<char> bools;
  std::vector<std::unordered_map<Int, Int>> cells;
  std::uint32_t block = 0;
  std::size_t pc = 0;
  std::size_t steps = 0;
};

class Executor {
 public:
  Executor(const Function& f, std::size_t max_states, std::size_t step_cap, ConcreteVerdictSet& out)
      : f_(f), max_states_(max_states), step_cap_(step_cap), out_(out) {}

  void run_all() {
    if (!f_.params.empty()) throw ConcreteError("function '" + f_.name + "' has parameters");
    State s;
    s.ints.assign(f_.num_ints(), 0);
    s.bools.assign(f_.num_bools(), 0);
    s.cells.resize(f_.arrays.size());
    s.block = f_.entry;
    run(std::move(s));
  }

 private:
  static Int narrow(Wide v) {
    if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min()) {
      throw ConcreteError("value leaves 64-bit range");
    }
    return static_cast<Int>(v);
  }

  static Wide eval(const LinExpr& e, const State& s) {
    Wide v = e.constant;
    for (const auto& [var, c] : e.terms) v += static_cast<Wide>(c) * s.ints[var];
    return v;
  }

  static bool eval(const BoolExpr& e, const State& s) {
    switch (e.kind) {
      case BoolExpr::Kind::Const:
        return e.value;
      case BoolExpr::Kind::Var:
        return s.bools[e.var] != 0;
      case BoolExpr::Kind::Not:
        return !eval(e.args[0], s);
      case BoolExpr::Kind::And:
        for (const BoolExpr& a : e.args) {
          if (!eval(a, s)) return false;
        }
        return true;
      case BoolExpr::Kind::Or:
        for (const BoolExpr& a : e.args) {
          if (eval(a, s)) return true;
        }
        return false;
      case BoolExpr::Kind::Cmp: {
        const Wide l = eval(e.lhs, s), r = eval(e.rhs, s);
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

  void finish_run() {
    if (++out_.run_count > max_states_) throw ConcreteError("state budget exceeded");
  }

  bool valid_index(const State& s, std::uint32_t array, const LinExpr& index, Int& idx) const {
    const Wide i = eval(index, s);
    if (i < 0 || i >= s.ints[f_.arrays[array].length]) return false;
    idx = static_cast<Int>(i);
    return true;
  }

  // Runs to completion, forking at each havoc.
  void run(State s) {
    for (;;) {
      const Block& b = f_.blocks[s.block];
      if (++s.steps > step_cap_) throw ConcreteError("step cap exceeded in function '" + f_.name + "'");
      if (s.pc == b.stmts.size()) {
        if (const auto* g = std::get_if<term::Goto>(&b.term)) {
          s.block = g->target;
        } else if (const auto* br = std::get_if<term::Branch>(&b.term)) {
          s.block = eval(br->cond, s) ? br->then_target : br->else_target;
        } else {
          finish_run();
          return;
        }
        s.pc = 0;
        continue;
      }
      const Stmt& st = b.stmts[s.pc++];
      if (const auto* h = std::get_if<stmt::Havoc>(&st)) {
        if (!h->lo.is_finite() || !h->hi.is_finite()) throw ConcreteError("havoc with an infinite bound");
        const Int lo = h->lo.value(), hi = h->hi.value();
        if (hi - lo >= static_cast<Int>(max_states_)) throw ConcreteError("state budget exceeded");
        for (Int v = lo; v < hi; ++v) {
          State fork = s;
          fork.ints[h->dst] = v;
          run(std::move(fork));
        }
        s.ints[h->dst] = hi;
        continue;
      }
      if (!step(s, st)) {
        finish_run();
        return;
      }
    }
  }

  // Returns false when the run stops.
  bool step(State& s, const Stmt& st) {
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, stmt::Assign>) {
            s.ints[x.dst] = narrow(eval(x.expr, s));
          } else if constexpr (std::is_same_v<T, stmt::BinOp>) {
            const Wide l = narrow(eval(x.lhs, s)), r = narrow(eval(x.rhs, s));
            switch (x.op) {
              case BinOpKind::Add:
                s.ints[x.dst] = narrow(l + r);
                break;
              case BinOpKind::Sub:
                s.ints[x.dst] = narrow(l - r);
                break;
              case BinOpKind::Mul:
                s.ints[x.dst] = narrow(l * r);
                break;
              case BinOpKind::Div:
                if (r == 0) return false;
                s.ints[x.dst] = narrow(l / r);
                break;
              case BinOpKind::Mod:
                if (r == 0) return false;
                s.ints[x.dst] = narrow(l % r);
                break;
            }
          } else if constexpr (std::is_same_v<T, stmt::BoolAssign>) {
            s.bools[x.dst] = eval(x.expr, s);
          } else if constexpr (std::is_same_v<T, stmt::Assume>) {
            return eval(x.cond, s);
          } else if constexpr (std::is_same_v<T, stmt::Assert>) {
            if (!eval(x.cond, s)) out_.verdicts[x.id] = ConcreteVerdict::Violated;
          } else if constexpr (std::is_same_v<T, stmt::ArrStore>) {
            Int idx = 0;
            if (!valid_index(s, x.array, x.index, idx)) return false;
            s.cells[x.array][idx] = narrow(eval(x.value, s));
          } else if constexpr (std::is_same_v<T, stmt::ArrLoad>) {
            Int idx = 0;
            if (!valid_index(s, x.array, x.index, idx)) return false;
            const auto& cells = s.cells[x.array];
            const auto it = cells.find(idx);
            s.ints[x.dst] = it == cells.end() ? 0 : it->second;
          } else if constexpr (std::is_same_v<T, stmt::Alloc>) {
            s.ints[f_.handles[x.handle].status] = 1;
          } else if constexpr (std::is_same_v<T, stmt::Free>) {
            s.ints[f_.handles[x.handle].status] = 0;
          } else if constexpr (std::is_same_v<T, stmt::Deref>) {
            return s.ints[f_.handles[x.handle].status] == 1;
          }
          return true;
        },
        st);
  }

  const Function& f_;
  std::size_t max_states_;
  std::size_t step_cap_;
  ConcreteVerdictSet& out_;
};

}  // namespace

ConcreteVerdictSet concrete_run_all(const Program& p, std::size_t max_states, std::size_t step_cap) {
  ConcreteVerdictSet out;
  for (int id : p.assertion_ids()) out.verdicts[id] = ConcreteVerdict::HoldsOnAllRuns;
  for (const Function& f : p.functions) Executor(f, max_states, step_cap, out).run_all();
  return out;
}

}  // namespace rtune
