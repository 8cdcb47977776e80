// SPDX-License-Identifier: Apache-2.0
#include "rtune/ir/instrument.hpp"

#include <stdexcept>

namespace rtune {

namespace {

bool is_division(const stmt::BinOp& b) { return b.op == BinOpKind::Div || b.op == BinOpKind::Mod; }
bool may_overflow(const stmt::BinOp& b) { return b.op != BinOpKind::Mod; }

BoolExpr in_bounds(const Function& f, std::uint32_t array, const LinExpr& index) {
  return BoolExpr::conjunction({BoolExpr::compare(LinExpr::constant_of(0), RelOp::Le, index),
                                BoolExpr::compare(index, RelOp::Lt, LinExpr::var(f.arrays[array].length))});
}

}  // namespace

Program instrument(const Program& p, const std::set<AssertionKind>& kinds, int bit_width) {
  if (bit_width < 2 || bit_width > 62) throw std::invalid_argument("bit width must lie in [2, 62]");
  const Int max = (Int{1} << (bit_width - 1)) - 1;
  const Int min = -(Int{1} << (bit_width - 1));
  auto wants = [&](AssertionKind k) { return kinds.count(k) > 0; };
  int next_id = p.max_assertion_id() + 1;

  Program out = p;
  for (Function& f : out.functions) {
    for (Block& b : f.blocks) {
      std::vector<Stmt> stmts;
      stmts.reserve(b.stmts.size());
      auto guard = [&](AssertionKind k, BoolExpr cond) { stmts.push_back(stmt::Assert{k, std::move(cond), next_id++}); };
      for (Stmt& s : b.stmts) {
        std::optional<BoolExpr> after;
        if (const auto* op = std::get_if<stmt::BinOp>(&s)) {
          if (is_division(*op) && wants(AssertionKind::DivZero)) {
            guard(AssertionKind::DivZero, BoolExpr::compare(op->rhs, RelOp::Ne, LinExpr::constant_of(0)));
          }
          if (may_overflow(*op) && wants(AssertionKind::IntOverflow)) {
            const LinExpr dst = LinExpr::var(op->dst);
            after = BoolExpr::conjunction({BoolExpr::compare(LinExpr::constant_of(min), RelOp::Le, dst),
                                           BoolExpr::compare(dst, RelOp::Le, LinExpr::constant_of(max))});
          }
        } else if (const auto* st = std::get_if<stmt::ArrStore>(&s)) {
          if (wants(AssertionKind::BufOverflow)) guard(AssertionKind::BufOverflow, in_bounds(f, st->array, st->index));
        } else if (const auto* ld = std::get_if<stmt::ArrLoad>(&s)) {
          if (wants(AssertionKind::BufOverflow)) guard(AssertionKind::BufOverflow, in_bounds(f, ld->array, ld->index));
        } else if (const auto* d = std::get_if<stmt::Deref>(&s)) {
          if (wants(AssertionKind::UseAfterFree)) {
            guard(AssertionKind::UseAfterFree, BoolExpr::compare(LinExpr::var(f.handles[d->handle].status), RelOp::Eq,
                                                                 LinExpr::constant_of(1)));
          }
        }
        stmts.push_back(std::move(s));
        if (after) guard(AssertionKind::IntOverflow, std::move(*after));
      }
      b.stmts = std::move(stmts);
    }
  }
  return out;
}

std::size_t count_risky_operations(const Program& p, const std::set<AssertionKind>& kinds) {
  auto wants = [&](AssertionKind k) { return kinds.count(k) > 0; };
  std::size_t n = 0;
  for (const Function& f : p.functions) {
    for (const Block& b : f.blocks) {
      for (const Stmt& s : b.stmts) {
        if (const auto* op = std::get_if<stmt::BinOp>(&s)) {
          n += is_division(*op) && wants(AssertionKind::DivZero);
          n += may_overflow(*op) && wants(AssertionKind::IntOverflow);
        } else if (std::holds_alternative<stmt::ArrStore>(s) || std::holds_alternative<stmt::ArrLoad>(s)) {
          n += wants(AssertionKind::BufOverflow);
        } else if (std::holds_alternative<stmt::Deref>(s)) {
          n += wants(AssertionKind::UseAfterFree);
        }
      }
    }
  }
  return n;
}

}  // namespace rtune
