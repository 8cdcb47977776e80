// SPDX-License-Identifier: Apache-2.0
#include "rtune/domains/product.hpp"

#include <algorithm>

#include "rtune/domains/semantics.hpp"

namespace rtune {

namespace {

bool mentions_int(const BoolExpr& e, VarId x) {
  if (e.kind == BoolExpr::Kind::Cmp) return e.lhs.mentions(x) || e.rhs.mentions(x);
  return std::any_of(e.args.begin(), e.args.end(), [x](const BoolExpr& a) { return mentions_int(a, x); });
}

bool mentions_bool(const BoolExpr& e, VarId b) {
  if (e.kind == BoolExpr::Kind::Var) return e.var == b;
  return std::any_of(e.args.begin(), e.args.end(), [b](const BoolExpr& a) { return mentions_bool(a, b); });
}

bool purely_numeric(const BoolExpr& e) {
  if (e.kind == BoolExpr::Kind::Var) return false;
  return std::all_of(e.args.begin(), e.args.end(), purely_numeric);
}

Int eval(const LinExpr& e, const Point& p) {
  Int v = e.constant;
  for (const auto& [x, c] : e.terms) v += c * p.ints[x];
  return v;
}

bool eval(const BoolExpr& e, const Point& p) {
  switch (e.kind) {
    case BoolExpr::Kind::Const:
      return e.value;
    case BoolExpr::Kind::Var:
      return p.bools[e.var] != 0;
    case BoolExpr::Kind::Not:
      return !eval(e.args[0], p);
    case BoolExpr::Kind::And:
      return std::all_of(e.args.begin(), e.args.end(), [&](const BoolExpr& a) { return eval(a, p); });
    case BoolExpr::Kind::Or:
      return std::any_of(e.args.begin(), e.args.end(), [&](const BoolExpr& a) { return eval(a, p); });
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

bool has_link(const BoolZoneProduct::Links& links, const std::pair<VarId, BoolZoneProduct::Link>& l) {
  return std::any_of(links.begin(), links.end(),
                     [&](const auto& m) { return m.first == l.first && same_link(m.second, l.second); });
}

}  // namespace

bool same_link(const BoolZoneProduct::Link& a, const BoolZoneProduct::Link& b) { return a == b || *a == *b; }

BoolZoneProduct::BoolZoneProduct(BoolDomain b, ZoneDomain z) : bools_(std::move(b)), zones_(std::move(z)) {
  check_layout(bools_.layout(), zones_.layout());
  normalize();
}

void BoolZoneProduct::normalize() {
  if (zones_.is_bottom() || bools_.is_bottom()) {
    zones_.set_bottom();
    bools_.set_bottom();
    links_.clear();
  }
}

void BoolZoneProduct::set_bottom() {
  zones_.set_bottom();
  normalize();
}

bool BoolZoneProduct::leq(const BoolZoneProduct& o) const {
  check_layout(layout(), o.layout());
  if (is_bottom()) return true;
  if (o.is_bottom()) return false;
  if (!bools_.leq(o.bools_) || !zones_.leq(o.zones_)) return false;
  return std::all_of(o.links_.begin(), o.links_.end(), [&](const auto& l) { return has_link(links_, l); });
}

bool BoolZoneProduct::operator==(const BoolZoneProduct& o) const {
  if (!(bools_ == o.bools_) || !(zones_ == o.zones_) || links_.size() != o.links_.size()) return false;
  return std::all_of(o.links_.begin(), o.links_.end(), [&](const auto& l) { return has_link(links_, l); });
}

BoolZoneProduct BoolZoneProduct::join(const BoolZoneProduct& o) const {
  check_layout(layout(), o.layout());
  if (is_bottom()) return o;
  if (o.is_bottom()) return *this;
  BoolZoneProduct r(bools_.join(o.bools_), zones_.join(o.zones_));
  for (const auto& l : links_) {
    if (has_link(o.links_, l)) r.links_.push_back(l);
  }
  return r;
}

BoolZoneProduct BoolZoneProduct::meet(const BoolZoneProduct& o) const {
  check_layout(layout(), o.layout());
  BoolZoneProduct r(bools_.meet(o.bools_), zones_.meet(o.zones_));
  if (r.is_bottom()) return r;
  r.links_ = links_;
  for (const auto& l : o.links_) {
    if (!has_link(r.links_, l)) r.links_.push_back(l);
  }
  r.reduce();
  return r;
}

BoolZoneProduct BoolZoneProduct::widen(const BoolZoneProduct& o, Thresholds t) const {
  check_layout(layout(), o.layout());
  if (is_bottom()) return o;
  if (o.is_bottom()) return *this;
  BoolZoneProduct r(bools_.widen(o.bools_, t), zones_.widen(o.zones_, t));
  for (const auto& l : links_) {
    if (has_link(o.links_, l)) r.links_.push_back(l);
  }
  return r;
}

BoolZoneProduct BoolZoneProduct::narrow(const BoolZoneProduct& o) const {
  check_layout(layout(), o.layout());
  if (is_bottom() || o.is_bottom()) return bottom(layout());
  BoolZoneProduct r(bools_.narrow(o.bools_), zones_.narrow(o.zones_));
  if (!r.is_bottom()) r.links_ = links_;
  return r;
}

void BoolZoneProduct::drop_links_on_int(VarId x) {
  std::erase_if(links_, [x](const auto& l) { return mentions_int(*l.second, x); });
}

void BoolZoneProduct::drop_links_on_bool(VarId b) {
  std::erase_if(links_, [b](const auto& l) { return l.first == b || mentions_bool(*l.second, b); });
}

void BoolZoneProduct::forget(VarId x) {
  zones_.forget(x);
  drop_links_on_int(x);
  normalize();
}

void BoolZoneProduct::assign(VarId x, const LinExpr& e) {
  zones_.assign(x, e);
  drop_links_on_int(x);
  normalize();
}

void BoolZoneProduct::assign_interval(VarId x, const Interval& i) {
  zones_.assign_interval(x, i);
  drop_links_on_int(x);
  normalize();
}

void BoolZoneProduct::copy_summary(VarId x, VarId cell) {
  zones_.copy_summary(x, cell);
  drop_links_on_int(x);
  normalize();
}

void BoolZoneProduct::apply_binop(VarId x, const LinExpr& l, BinOpKind op, const LinExpr& r) {
  zones_.apply_binop(x, l, op, r);
  drop_links_on_int(x);
  normalize();
}

void BoolZoneProduct::add_constraint(const LinExpr& e, ConstraintKind k) {
  zones_.add_constraint(e, k);
  normalize();
  if (!links_.empty()) reduce();
}

void BoolZoneProduct::assign_bool(VarId b, Tri v, const BoolExpr& e) {
  if (is_bottom()) return;
  bools_.set(b, v);
  drop_links_on_bool(b);
  normalize();
  if (is_bottom() || mentions_bool(e, b)) return;
  links_.emplace_back(b, std::make_shared<const BoolExpr>(e));
}

void BoolZoneProduct::assume_bool(VarId b, bool v) {
  if (is_bottom()) return;
  bools_.assume_bool(b, v);
  normalize();
  if (is_bottom()) return;
  const Links linked = links_;
  for (const auto& [var, cond] : linked) {
    if (var != b) continue;
    if (purely_numeric(*cond)) {
      rtune::assume(zones_, *cond, v);
    } else {
      rtune::assume(*this, *cond, v);
    }
    normalize();
    if (is_bottom()) return;
  }
  reduce();
}

void BoolZoneProduct::forget_bool(VarId b) {
  bools_.forget_bool(b);
  drop_links_on_bool(b);
}

void BoolZoneProduct::reduce() {
  for (int round = 0; round < 2 && !is_bottom(); ++round) {
    for (const auto& [b, cond] : links_) {
      if (!purely_numeric(*cond)) continue;
      const Tri v = bools_.bool_value(b);
      if (v == Tri::True || v == Tri::False) {
        rtune::assume(zones_, *cond, v == Tri::True);
      } else if (entails(zones_, *cond)) {
        bools_.set(b, Tri::True);
      } else if (entails(zones_, BoolExpr::negation(*cond))) {
        bools_.set(b, Tri::False);
      }
      normalize();
      if (is_bottom()) return;
    }
  }
}

bool BoolZoneProduct::contains(const Point& p) const {
  if (!bools_.contains(p) || !zones_.contains(p)) return false;
  return std::all_of(links_.begin(), links_.end(),
                     [&](const auto& l) { return eval(*l.second, p) == (p.bools[l.first] != 0); });
}

std::string BoolZoneProduct::to_string(const Function* f) const {
  if (is_bottom()) return "_|_";
  return "(" + bools_.to_string(f) + ", " + zones_.to_string(f) + ", " + std::to_string(links_.size()) + " links)";
}

}  // namespace rtune
