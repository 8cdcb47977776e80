// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rtune/domains/bool_domain.hpp"
#include "rtune/domains/zones.hpp"

namespace rtune {

/// Reduced product of BoolDomain and ZoneDomain. A boolean variable assigned
/// a condition keeps a link b <-> cond while the variables of cond are
/// unchanged; knowing b refines the zone and a zone deciding cond fixes b.
/// Links are kept as a set: join intersects, meet unites.
class BoolZoneProduct {
 public:
  using Link = std::shared_ptr<const BoolExpr>;
  using Links = std::vector<std::pair<VarId, Link>>;

  static BoolZoneProduct top(VarLayout l) { return BoolZoneProduct(BoolDomain::top(l), ZoneDomain::top(l)); }
  static BoolZoneProduct bottom(VarLayout l) {
    return BoolZoneProduct(BoolDomain::bottom(l), ZoneDomain::bottom(l));
  }
  BoolZoneProduct(BoolDomain b, ZoneDomain z);

  const VarLayout& layout() const { return zones_.layout(); }
  bool is_bottom() const { return zones_.is_bottom() || bools_.is_bottom(); }
  void set_bottom();

  const BoolDomain& bools() const { return bools_; }
  const ZoneDomain& zones() const { return zones_; }
  const Links& links() const { return links_; }

  bool leq(const BoolZoneProduct& o) const;
  bool operator==(const BoolZoneProduct& o) const;
  BoolZoneProduct join(const BoolZoneProduct& o) const;
  BoolZoneProduct meet(const BoolZoneProduct& o) const;
  BoolZoneProduct widen(const BoolZoneProduct& o, Thresholds t) const;
  BoolZoneProduct narrow(const BoolZoneProduct& o) const;

  void forget(VarId x);
  void assign(VarId x, const LinExpr& e);
  void assign_interval(VarId x, const Interval& i);
  void copy_summary(VarId x, VarId cell);
  void apply_binop(VarId x, const LinExpr& l, BinOpKind op, const LinExpr& r);
  Interval interval_of(const LinExpr& e) const { return zones_.interval_of(e); }
  void add_constraint(const LinExpr& e, ConstraintKind k);

  Tri bool_value(VarId b) const { return bools_.bool_value(b); }
  void assign_bool(VarId b, Tri v, const BoolExpr& e);
  void assume_bool(VarId b, bool v);
  void forget_bool(VarId b);

  /// Propagates linked booleans into the zone and decided conditions back.
  void reduce();

  bool contains(const Point& p) const;
  std::string to_string(const Function* f = nullptr) const;

 private:
  void drop_links_on_int(VarId x);
  void drop_links_on_bool(VarId b);
  void normalize();

  BoolDomain bools_;
  ZoneDomain zones_;
  Links links_;
};

bool same_link(const BoolZoneProduct::Link& a, const BoolZoneProduct::Link& b);

}  // namespace rtune
