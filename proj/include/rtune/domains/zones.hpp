// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "rtune/domains/common.hpp"
#include "rtune/domains/dbm.hpp"
#include "rtune/ir/program.hpp"

namespace rtune {

/// Difference-bound matrix over the integer variables and a zero variable v0:
/// entry (i, j) bounds v_i - v_j, with variable x at index x + 1.
///
/// States are kept shortest-path closed except the results of widening, which
/// must stay unclosed for termination. Operations needing closure work on a
/// closed copy; mutating transfer functions close in place.
class ZoneDomain {
 public:
  static ZoneDomain top(VarLayout l) { return ZoneDomain(l, false); }
  static ZoneDomain bottom(VarLayout l) { return ZoneDomain(l, true); }

  const VarLayout& layout() const { return layout_; }
  bool is_bottom() const { return bottom_; }
  bool is_closed() const { return closed_; }
  void set_bottom();

  bool leq(const ZoneDomain& o) const;
  bool operator==(const ZoneDomain& o) const;
  ZoneDomain join(const ZoneDomain& o) const;
  ZoneDomain meet(const ZoneDomain& o) const;
  ZoneDomain widen(const ZoneDomain& o, Thresholds t) const;
  ZoneDomain narrow(const ZoneDomain& o) const;
  ZoneDomain closed() const;

  void forget(VarId x);
  void assign(VarId x, const LinExpr& e);
  void assign_interval(VarId x, const Interval& i);
  void copy_summary(VarId x, VarId cell) { assign_interval(x, bounds(cell)); }
  void apply_binop(VarId x, const LinExpr& l, BinOpKind op, const LinExpr& r);
  Interval interval_of(const LinExpr& e) const;
  void add_constraint(const LinExpr& e, ConstraintKind k);

  Tri bool_value(VarId) const { return bottom_ ? Tri::Bottom : Tri::Top; }
  void assign_bool(VarId, Tri v, const BoolExpr&) {
    if (v == Tri::Bottom) set_bottom();
  }
  void assume_bool(VarId, bool) {}
  void forget_bool(VarId) {}

  /// Bounds of x (closure of a copy when unclosed).
  Interval bounds(VarId x) const;
  /// Upper bound of v_i - v_j as stored (i, j are matrix indices).
  Int entry(std::size_t i, std::size_t j) const { return m_[i * dim_ + j]; }
  std::size_t dim() const { return dim_; }

  bool contains(const Point& p) const;
  std::string to_string(const Function* f = nullptr) const;

  /// Full Floyd-Warshall closure; detects emptiness.
  void close();

 private:
  ZoneDomain(VarLayout l, bool bottom);
  Int& at(std::size_t i, std::size_t j) { return m_[i * dim_ + j]; }
  Int at(std::size_t i, std::size_t j) const { return m_[i * dim_ + j]; }
  /// Adds v_i - v_j <= c to a closed matrix and restores closure.
  void add_edge(std::size_t i, std::size_t j, Int c);
  void add_le(const LinExpr& e);
  void add_ne(const LinExpr& e);
  void shift(VarId x, Int k);
  Interval bounds_closed(VarId x) const;
  Interval eval_closed(const LinExpr& e) const;

  VarLayout layout_;
  std::size_t dim_;
  bool bottom_;
  bool closed_ = true;
  std::vector<Int> m_;
};

}  // namespace rtune
