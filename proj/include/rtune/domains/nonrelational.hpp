// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "rtune/domains/common.hpp"
#include "rtune/domains/interval.hpp"
#include "rtune/ir/program.hpp"

namespace rtune {

/// A map from integer variables to values of a non-relational lattice V.
/// Boolean variables are not tracked. A single bottom value makes the whole
/// state bottom.
template <class V>
class NonRelational {
 public:
  static NonRelational top(VarLayout l) { return NonRelational(l, false); }
  static NonRelational bottom(VarLayout l) { return NonRelational(l, true); }

  const VarLayout& layout() const { return layout_; }
  bool is_bottom() const { return bottom_; }
  void set_bottom() {
    bottom_ = true;
    std::fill(values_.begin(), values_.end(), V::bottom());
  }

  const V& value(VarId x) const { return values_[x]; }
  void set_value(VarId x, const V& v) {
    if (bottom_) return;
    values_[x] = v;
    if (v.is_bottom()) set_bottom();
  }

  bool leq(const NonRelational& o) const {
    check_layout(layout_, o.layout_);
    if (bottom_) return true;
    if (o.bottom_) return false;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!values_[i].leq(o.values_[i])) return false;
    }
    return true;
  }
  bool operator==(const NonRelational& o) const = default;

  NonRelational join(const NonRelational& o) const {
    return combine(o, true, [](const V& a, const V& b) { return a.join(b); });
  }
  NonRelational meet(const NonRelational& o) const {
    check_layout(layout_, o.layout_);
    if (bottom_ || o.bottom_) return bottom(layout_);
    return combine(o, false, [](const V& a, const V& b) { return a.meet(b); });
  }
  NonRelational widen(const NonRelational& o, Thresholds t) const {
    return combine(o, true, [t](const V& a, const V& b) { return a.widen(b, t); });
  }
  NonRelational narrow(const NonRelational& o) const {
    check_layout(layout_, o.layout_);
    if (bottom_ || o.bottom_) return bottom(layout_);
    return combine(o, false, [](const V& a, const V& b) { return a.narrow(b); });
  }

  void forget(VarId x) {
    if (!bottom_) values_[x] = V::top();
  }
  void assign(VarId x, const LinExpr& e) { set_value(x, eval(e)); }
  void assign_interval(VarId x, const Interval& i) { set_value(x, V::of(i)); }
  void copy_summary(VarId x, VarId cell) { set_value(x, values_[cell]); }

  void apply_binop(VarId x, const LinExpr& l, BinOpKind op, const LinExpr& r) {
    if (bottom_) return;
    const V a = eval(l), b = eval(r);
    switch (op) {
      case BinOpKind::Add:
        return set_value(x, a.add(b));
      case BinOpKind::Sub:
        return set_value(x, a.add(-b));
      case BinOpKind::Mul:
        return set_value(x, a.mul(b));
      case BinOpKind::Div:
        return set_value(x, a.div(b));
      case BinOpKind::Mod:
        return set_value(x, a.rem(b));
    }
  }

  Interval interval_of(const LinExpr& e) const { return bottom_ ? Interval::bottom() : eval(e).hull(); }

  void add_constraint(const LinExpr& e, ConstraintKind k) {
    if (bottom_) return;
    switch (k) {
      case ConstraintKind::Le:
        return add_le(e);
      case ConstraintKind::Eq:
        add_eq(e);
        add_le(e);
        add_le(e.scaled(-1));
        return;
      case ConstraintKind::Ne:
        return add_ne(e);
    }
  }

  Tri bool_value(VarId) const { return bottom_ ? Tri::Bottom : Tri::Top; }
  void assign_bool(VarId, Tri v, const BoolExpr&) {
    if (v == Tri::Bottom) set_bottom();
  }
  void assume_bool(VarId, bool) {}
  void forget_bool(VarId) {}

  bool contains(const Point& p) const {
    if (bottom_) return false;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!values_[i].contains(p.ints[i])) return false;
    }
    return true;
  }

  std::string to_string(const Function* f = nullptr) const {
    if (bottom_) return "_|_";
    static const std::vector<std::string> kNone;
    const auto& names = f ? f->int_vars : kNone;
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i].is_top()) continue;
      s += (first ? "" : ", ") + (i < names.size() ? names[i] : "v" + std::to_string(i)) + ": " +
           values_[i].to_string();
      first = false;
    }
    return s + "}";
  }

 private:
  NonRelational(VarLayout l, bool bottom)
      : layout_(l), bottom_(bottom), values_(l.ints, bottom ? V::bottom() : V::top()) {}

  template <class Op>
  NonRelational combine(const NonRelational& o, bool absorb_bottom, Op op) const {
    check_layout(layout_, o.layout_);
    if (absorb_bottom) {
      if (bottom_) return o;
      if (o.bottom_) return *this;
    }
    NonRelational r(layout_, false);
    for (std::size_t i = 0; i < values_.size(); ++i) {
      r.values_[i] = op(values_[i], o.values_[i]);
      if (r.values_[i].is_bottom()) return bottom(layout_);
    }
    return r;
  }

  V eval(const LinExpr& e) const {
    V acc = V::constant(e.constant);
    for (const auto& [v, c] : e.terms) acc = acc.add(values_[v].scale(c));
    return acc;
  }

  V eval_without(const LinExpr& e, std::size_t skip) const {
    V acc = V::constant(e.constant);
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
      if (i != skip) acc = acc.add(values_[e.terms[i].first].scale(e.terms[i].second));
    }
    return acc;
  }

  // c*x + rest <= 0 bounds each x by the smallest value of its rest.
  void add_le(const LinExpr& e) {
    for (std::size_t i = 0; i < e.terms.size() && !bottom_; ++i) {
      const auto [x, c] = e.terms[i];
      const Interval rest = eval_without(e, i).hull();
      if (rest.is_bottom()) return set_bottom();
      if (rest.lo().is_minus_infinity()) continue;
      const Interval cx(kMinusInf, -rest.lo());
      set_value(x, values_[x].meet(V::of(cx.unscale(c))));
    }
  }

  // Unit coefficients allow exact propagation of the remaining value.
  void add_eq(const LinExpr& e) {
    for (std::size_t i = 0; i < e.terms.size() && !bottom_; ++i) {
      const auto [x, c] = e.terms[i];
      if (c != 1 && c != -1) continue;
      const V rest = eval_without(e, i);
      set_value(x, values_[x].meet(c == 1 ? -rest : rest));
    }
  }

  void add_ne(const LinExpr& e) {
    if (e.terms.size() == 1) {
      const auto [x, c] = e.terms[0];
      if (e.constant % c == 0) set_value(x, values_[x].exclude(-e.constant / c));
      return;
    }
    if (auto v = eval(e).hull().singleton(); v && *v == 0) set_bottom();
  }

  VarLayout layout_;
  bool bottom_;
  std::vector<V> values_;
};

}  // namespace rtune
