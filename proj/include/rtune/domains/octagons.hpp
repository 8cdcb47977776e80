// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "rtune/domains/common.hpp"
#include "rtune/domains/dbm.hpp"
#include "rtune/ir/program.hpp"

namespace rtune {

/// Octagon over the integer variables in the usual 2n encoding: V_{2k} = +x_k,
/// V_{2k+1} = -x_k, and entry (i, j) bounds V_j - V_i. Non-widened states are
/// tightly closed (shortest paths, even unary bounds, strengthening).
class OctagonDomain {
 public:
  static OctagonDomain top(VarLayout l) { return OctagonDomain(l, false); }
  static OctagonDomain bottom(VarLayout l) { return OctagonDomain(l, true); }

  const VarLayout& layout() const { return layout_; }
  bool is_bottom() const { return bottom_; }
  bool is_closed() const { return closed_; }
  void set_bottom();

  bool leq(const OctagonDomain& o) const;
  bool operator==(const OctagonDomain& o) const;
  OctagonDomain join(const OctagonDomain& o) const;
  OctagonDomain meet(const OctagonDomain& o) const;
  OctagonDomain widen(const OctagonDomain& o, Thresholds t) const;
  OctagonDomain narrow(const OctagonDomain& o) const;
  OctagonDomain closed() const;

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

  Interval bounds(VarId x) const;
  Int entry(std::size_t i, std::size_t j) const { return m_[i * dim_ + j]; }
  std::size_t dim() const { return dim_; }

  bool contains(const Point& p) const;
  std::string to_string(const Function* f = nullptr) const;

  /// Full tight closure; detects emptiness.
  void close();

 private:
  OctagonDomain(VarLayout l, bool bottom);
  Int& at(std::size_t i, std::size_t j) { return m_[i * dim_ + j]; }
  Int at(std::size_t i, std::size_t j) const { return m_[i * dim_ + j]; }
  /// Adds V_j - V_i <= c (and its coherent twin) to a closed matrix.
  void add_edge(std::size_t i, std::size_t j, Int c);
  /// a*x + b*y <= c with a, b in {-1, +1}; y == x for unary constraints.
  void add_octagonal(VarId x, Int a, VarId y, Int b, Int c);
  void tighten_and_strengthen();
  void add_le(const LinExpr& e);
  void add_ne(const LinExpr& e);
  void shift(VarId x, Int k);
  void negate(VarId x);
  Interval bounds_closed(VarId x) const;
  Interval eval_closed(const LinExpr& e) const;

  VarLayout layout_;
  std::size_t dim_;
  bool bottom_;
  bool closed_ = true;
  std::vector<Int> m_;
};

}  // namespace rtune
