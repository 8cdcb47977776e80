// SPDX-License-Identifier: Apache-2.0
#include "rtune/domains/disjunctive.hpp"

#include <algorithm>

namespace rtune {

namespace {

// Number of integers strictly between two sorted, disjoint intervals.
Bound gap(const Interval& a, const Interval& b) {
  return Bound::add(Bound::add(b.lo(), -a.hi(), Round::Up), Bound(-1), Round::Up);
}

}  // namespace

DisjunctiveInterval::DisjunctiveInterval(const Interval& i) {
  if (!i.is_bottom()) parts_.push_back(i);
}

DisjunctiveInterval DisjunctiveInterval::from_parts(std::vector<Interval> parts) {
  std::erase_if(parts, [](const Interval& i) { return i.is_bottom(); });
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });
  DisjunctiveInterval r;
  for (const Interval& p : parts) {
    // Overlapping or adjacent intervals are fused.
    if (!r.parts_.empty() && gap(r.parts_.back(), p) <= Bound(0)) {
      r.parts_.back() = r.parts_.back().join(p);
    } else {
      r.parts_.push_back(p);
    }
  }
  while (r.parts_.size() > kMaxDisjuncts) {
    std::size_t best = 0;
    for (std::size_t i = 1; i + 1 < r.parts_.size(); ++i) {
      if (gap(r.parts_[i], r.parts_[i + 1]) < gap(r.parts_[best], r.parts_[best + 1])) best = i;
    }
    r.parts_[best] = r.parts_[best].join(r.parts_[best + 1]);
    r.parts_.erase(r.parts_.begin() + static_cast<std::ptrdiff_t>(best) + 1);
  }
  return r;
}

Interval DisjunctiveInterval::hull() const {
  if (parts_.empty()) return Interval::bottom();
  return Interval(parts_.front().lo(), parts_.back().hi());
}

bool DisjunctiveInterval::contains(Int v) const {
  return std::any_of(parts_.begin(), parts_.end(), [v](const Interval& i) { return i.contains(v); });
}

bool DisjunctiveInterval::leq(const DisjunctiveInterval& o) const {
  return std::all_of(parts_.begin(), parts_.end(), [&](const Interval& p) {
    return std::any_of(o.parts_.begin(), o.parts_.end(), [&](const Interval& q) { return p.leq(q); });
  });
}

DisjunctiveInterval DisjunctiveInterval::join(const DisjunctiveInterval& o) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), o.parts_.begin(), o.parts_.end());
  return from_parts(std::move(all));
}

DisjunctiveInterval DisjunctiveInterval::meet(const DisjunctiveInterval& o) const {
  return pairwise(o, [](const Interval& a, const Interval& b) { return a.meet(b); });
}

DisjunctiveInterval DisjunctiveInterval::widen(const DisjunctiveInterval& o, Thresholds thresholds) const {
  if (o.leq(*this)) return *this;
  if (is_bottom()) return o;
  const DisjunctiveInterval j = join(o);
  bool inner_stable = j.parts_.size() == parts_.size();
  for (std::size_t i = 0; inner_stable && i < parts_.size(); ++i) {
    if (i > 0 && j.parts_[i].lo() != parts_[i].lo()) inner_stable = false;
    if (i + 1 < parts_.size() && j.parts_[i].hi() != parts_[i].hi()) inner_stable = false;
  }
  if (!inner_stable) return DisjunctiveInterval(hull().widen(j.hull(), thresholds));
  const Interval outer = hull().widen(j.hull(), thresholds);
  DisjunctiveInterval r = *this;
  r.parts_.front() = Interval(outer.lo(), r.parts_.front().hi());
  r.parts_.back() = Interval(r.parts_.back().lo(), outer.hi());
  return r;
}

DisjunctiveInterval DisjunctiveInterval::narrow(const DisjunctiveInterval& o) const {
  if (is_bottom() || o.is_bottom()) return bottom();
  // Only the infinite outer bounds are refined.
  DisjunctiveInterval r = *this;
  const Interval h = o.hull();
  if (r.parts_.front().lo().is_minus_infinity()) {
    r.parts_.front() = Interval(std::min(h.lo(), r.parts_.front().hi()), r.parts_.front().hi());
  }
  if (r.parts_.back().hi().is_plus_infinity()) {
    r.parts_.back() = Interval(r.parts_.back().lo(), std::max(h.hi(), r.parts_.back().lo()));
  }
  return r;
}

template <class Op>
DisjunctiveInterval DisjunctiveInterval::pairwise(const DisjunctiveInterval& o, Op op) const {
  std::vector<Interval> out;
  out.reserve(parts_.size() * o.parts_.size());
  for (const Interval& a : parts_) {
    for (const Interval& b : o.parts_) out.push_back(op(a, b));
  }
  return from_parts(std::move(out));
}

DisjunctiveInterval DisjunctiveInterval::operator-() const {
  std::vector<Interval> out;
  for (const Interval& p : parts_) out.push_back(-p);
  return from_parts(std::move(out));
}

DisjunctiveInterval DisjunctiveInterval::add(const DisjunctiveInterval& o) const {
  return pairwise(o, [](const Interval& a, const Interval& b) { return a.add(b); });
}

DisjunctiveInterval DisjunctiveInterval::scale(Int c) const {
  std::vector<Interval> out;
  for (const Interval& p : parts_) out.push_back(p.scale(c));
  return from_parts(std::move(out));
}

DisjunctiveInterval DisjunctiveInterval::mul(const DisjunctiveInterval& o) const {
  return pairwise(o, [](const Interval& a, const Interval& b) { return a.mul(b); });
}

DisjunctiveInterval DisjunctiveInterval::div(const DisjunctiveInterval& o) const {
  return pairwise(o, [](const Interval& a, const Interval& b) { return a.div(b); });
}

DisjunctiveInterval DisjunctiveInterval::rem(const DisjunctiveInterval& o) const {
  return pairwise(o, [](const Interval& a, const Interval& b) { return a.rem(b); });
}

DisjunctiveInterval DisjunctiveInterval::exclude(Int v) const {
  std::vector<Interval> out;
  for (const Interval& p : parts_) {
    if (!p.contains(v)) {
      out.push_back(p);
      continue;
    }
    out.push_back(p.meet(Interval(kMinusInf, Bound(v - 1))));
    out.push_back(p.meet(Interval(Bound(v + 1), kPlusInf)));
  }
  return from_parts(std::move(out));
}

std::string DisjunctiveInterval::to_string() const {
  if (parts_.empty()) return "_|_";
  std::string s = "{";
  for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? ", " : "") + parts_[i].to_string();
  return s + "}";
}

}  // namespace rtune
