// SPDX-License-Identifier: Apache-2.0
#include "rtune/domains/bool_domain.hpp"

#include <algorithm>

namespace rtune {

BoolDomain::BoolDomain(VarLayout l, bool bottom)
    : layout_(l), bottom_(bottom), values_(l.bools, bottom ? Tri::Bottom : Tri::Top) {}

void BoolDomain::set_bottom() {
  bottom_ = true;
  std::fill(values_.begin(), values_.end(), Tri::Bottom);
}

void BoolDomain::set(VarId b, Tri v) {
  if (bottom_) return;
  values_[b] = v;
  if (v == Tri::Bottom) set_bottom();
}

bool BoolDomain::leq(const BoolDomain& o) const {
  check_layout(layout_, o.layout_);
  if (bottom_) return true;
  if (o.bottom_) return false;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!tri_leq(values_[i], o.values_[i])) return false;
  }
  return true;
}

BoolDomain BoolDomain::join(const BoolDomain& o) const {
  check_layout(layout_, o.layout_);
  if (bottom_) return o;
  if (o.bottom_) return *this;
  BoolDomain r = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] = tri_join(values_[i], o.values_[i]);
  return r;
}

BoolDomain BoolDomain::meet(const BoolDomain& o) const {
  check_layout(layout_, o.layout_);
  BoolDomain r = *this;
  if (o.bottom_) r.set_bottom();
  for (std::size_t i = 0; i < values_.size() && !r.bottom_; ++i) r.set(static_cast<VarId>(i), tri_meet(values_[i], o.values_[i]));
  return r;
}

bool BoolDomain::contains(const Point& p) const {
  if (bottom_) return false;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!tri_contains(values_[i], p.bools[i] != 0)) return false;
  }
  return true;
}

std::string BoolDomain::to_string(const Function* f) const {
  if (bottom_) return "_|_";
  static const std::vector<std::string> kNone;
  const auto& names = f ? f->bool_vars : kNone;
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == Tri::Top) continue;
    s += (first ? "" : ", ") + (i < names.size() ? names[i] : "b" + std::to_string(i)) + ": " +
         rtune::to_string(values_[i]);
    first = false;
  }
  return s + "}";
}

}  // namespace rtune
