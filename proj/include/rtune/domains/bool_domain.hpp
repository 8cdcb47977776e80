// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "rtune/domains/common.hpp"
#include "rtune/domains/interval.hpp"
#include "rtune/ir/program.hpp"

namespace rtune {

/// Tracks each boolean variable as true, false or unknown. Integer variables
/// are not tracked, so numeric statements leave the store unchanged.
class BoolDomain {
 public:
  static BoolDomain top(VarLayout l) { return BoolDomain(l, false); }
  static BoolDomain bottom(VarLayout l) { return BoolDomain(l, true); }

  const VarLayout& layout() const { return layout_; }
  bool is_bottom() const { return bottom_; }
  void set_bottom();

  bool leq(const BoolDomain& o) const;
  bool operator==(const BoolDomain& o) const = default;
  BoolDomain join(const BoolDomain& o) const;
  BoolDomain meet(const BoolDomain& o) const;
  BoolDomain widen(const BoolDomain& o, Thresholds) const { return join(o); }
  BoolDomain narrow(const BoolDomain& o) const { return meet(o); }

  void forget(VarId) {}
  void assign(VarId, const LinExpr&) {}
  void assign_interval(VarId, const Interval& i) {
    if (i.is_bottom()) set_bottom();
  }
  void copy_summary(VarId, VarId) {}
  void apply_binop(VarId, const LinExpr&, BinOpKind, const LinExpr&) {}
  Interval interval_of(const LinExpr&) const { return bottom_ ? Interval::bottom() : Interval::top(); }
  void add_constraint(const LinExpr&, ConstraintKind) {}

  Tri bool_value(VarId b) const { return values_[b]; }
  void assign_bool(VarId b, Tri v, const BoolExpr&) { set(b, v); }
  void assume_bool(VarId b, bool v) { set(b, tri_meet(values_[b], tri_of(v))); }
  void forget_bool(VarId b) { set(b, Tri::Top); }
  void set(VarId b, Tri v);

  bool contains(const Point& p) const;
  std::string to_string(const Function* f = nullptr) const;

 private:
  BoolDomain(VarLayout l, bool bottom);

  VarLayout layout_;
  bool bottom_;
  std::vector<Tri> values_;
};

}  // namespace rtune
