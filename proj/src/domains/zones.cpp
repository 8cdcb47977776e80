// SPDX-License-Identifier: Apache-2.0
#include "rtune/domains/zones.hpp"

#include <algorithm>

namespace rtune {

using dbm::kInf;

ZoneDomain::ZoneDomain(VarLayout l, bool bottom)
    : layout_(l), dim_(l.ints + 1), bottom_(bottom), m_(dim_ * dim_, kInf) {
  for (std::size_t i = 0; i < dim_; ++i) at(i, i) = 0;
}

void ZoneDomain::set_bottom() {
  bottom_ = true;
  closed_ = true;
  std::fill(m_.begin(), m_.end(), kInf);
  for (std::size_t i = 0; i < dim_; ++i) at(i, i) = 0;
}

void ZoneDomain::close() {
  if (bottom_ || closed_) return;
  const std::size_t n = dim_;
  for (std::size_t k = 0; k < n; ++k) {
    const Int* rk = &m_[k * n];
    for (std::size_t i = 0; i < n; ++i) {
      const Int ik = at(i, k);
      if (ik == kInf) continue;
      Int* ri = &m_[i * n];
      for (std::size_t j = 0; j < n; ++j) {
        const Int v = dbm::add(ik, rk[j]);
        if (v < ri[j]) ri[j] = v;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i, i) < 0) return set_bottom();
  }
  closed_ = true;
}

ZoneDomain ZoneDomain::closed() const {
  ZoneDomain c = *this;
  c.close();
  return c;
}

void ZoneDomain::add_edge(std::size_t i, std::size_t j, Int c) {
  if (bottom_ || c >= at(i, j)) return;
  if (dbm::add(c, at(j, i)) < 0) return set_bottom();
  const std::size_t n = dim_;
  // Any new shortest path p -> q runs p -> i -> j -> q.
  std::vector<Int> to_i(n), from_j(n);
  for (std::size_t p = 0; p < n; ++p) {
    to_i[p] = at(p, i);
    from_j[p] = at(j, p);
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (to_i[p] == kInf) continue;
    const Int pij = dbm::add(to_i[p], c);
    Int* rp = &m_[p * n];
    for (std::size_t q = 0; q < n; ++q) {
      const Int v = dbm::add(pij, from_j[q]);
      if (v < rp[q]) rp[q] = v;
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (at(p, p) < 0) return set_bottom();
  }
}

bool ZoneDomain::leq(const ZoneDomain& o) const {
  check_layout(layout_, o.layout_);
  if (bottom_) return true;
  const ZoneDomain a = closed_ ? *this : closed();
  if (a.bottom_) return true;
  if (o.bottom_) return false;
  for (std::size_t k = 0; k < m_.size(); ++k) {
    if (a.m_[k] > o.m_[k]) return false;
  }
  return true;
}

bool ZoneDomain::operator==(const ZoneDomain& o) const {
  return layout_ == o.layout_ && bottom_ == o.bottom_ && m_ == o.m_;
}

ZoneDomain ZoneDomain::join(const ZoneDomain& o) const {
  check_layout(layout_, o.layout_);
  const ZoneDomain a = closed(), b = o.closed();
  if (a.bottom_) return b;
  if (b.bottom_) return a;
  ZoneDomain r = a;
  for (std::size_t k = 0; k < m_.size(); ++k) r.m_[k] = std::max(a.m_[k], b.m_[k]);
  return r;
}

ZoneDomain ZoneDomain::meet(const ZoneDomain& o) const {
  check_layout(layout_, o.layout_);
  if (bottom_ || o.bottom_) return bottom(layout_);
  ZoneDomain r = *this;
  for (std::size_t k = 0; k < m_.size(); ++k) r.m_[k] = std::min(m_[k], o.m_[k]);
  r.closed_ = false;
  r.close();
  return r;
}

ZoneDomain ZoneDomain::widen(const ZoneDomain& o, Thresholds t) const {
  check_layout(layout_, o.layout_);
  if (bottom_) return o.closed();
  const ZoneDomain b = o.closed();
  if (b.bottom_) return *this;
  ZoneDomain r = *this;
  bool changed = false;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (i == j) continue;
      // Row 0 holds negated lower bounds.
      const int sign = i == 0 ? -1 : 1;
      const Int w = dbm::widen_entry(at(i, j), b.at(i, j), t, sign, 1);
      if (w != at(i, j)) {
        r.at(i, j) = w;
        changed = true;
      }
    }
  }
  if (changed) r.closed_ = false;
  return r;
}

ZoneDomain ZoneDomain::narrow(const ZoneDomain& o) const {
  check_layout(layout_, o.layout_);
  if (bottom_ || o.bottom_) return bottom(layout_);
  const ZoneDomain b = o.closed();
  if (b.bottom_) return bottom(layout_);
  ZoneDomain r = *this;
  for (std::size_t k = 0; k < m_.size(); ++k) {
    if (r.m_[k] == kInf) r.m_[k] = b.m_[k];
  }
  r.closed_ = false;
  r.close();
  return r;
}

void ZoneDomain::forget(VarId x) {
  if (bottom_) return;
  close();
  if (bottom_) return;
  const std::size_t v = x + 1;
  for (std::size_t k = 0; k < dim_; ++k) {
    at(v, k) = kInf;
    at(k, v) = kInf;
  }
  at(v, v) = 0;
}

Interval ZoneDomain::bounds_closed(VarId x) const {
  if (bottom_) return Interval::bottom();
  return Interval(dbm::to_lower_negated(at(0, x + 1)), dbm::to_upper(at(x + 1, 0)));
}

Interval ZoneDomain::bounds(VarId x) const { return closed_ ? bounds_closed(x) : closed().bounds_closed(x); }

Interval ZoneDomain::eval_closed(const LinExpr& e) const {
  if (bottom_) return Interval::bottom();
  if (e.terms.size() == 2 && e.terms[0].second == -e.terms[1].second &&
      (e.terms[0].second == 1 || e.terms[0].second == -1)) {
    // Difference x - y read directly from the matrix.
    const auto [x, cx] = e.terms[0];
    const VarId y = e.terms[1].first;
    const std::size_t p = (cx == 1 ? x : y) + 1, q = (cx == 1 ? y : x) + 1;
    return Interval(dbm::to_lower_negated(at(q, p)), dbm::to_upper(at(p, q))).add(Interval::constant(e.constant));
  }
  Interval acc = Interval::constant(e.constant);
  for (const auto& [v, c] : e.terms) acc = acc.add(bounds_closed(v).scale(c));
  return acc;
}

Interval ZoneDomain::interval_of(const LinExpr& e) const {
  return closed_ ? eval_closed(e) : closed().eval_closed(e);
}

void ZoneDomain::shift(VarId x, Int k) {
  const std::size_t v = x + 1;
  for (std::size_t j = 0; j < dim_; ++j) {
    if (j == v) continue;
    at(v, j) = dbm::add(at(v, j), k);
    at(j, v) = dbm::add(at(j, v), -k);
  }
}

void ZoneDomain::assign(VarId x, const LinExpr& e) {
  if (bottom_) return;
  close();
  if (bottom_) return;
  if (e.terms.size() == 1 && e.terms[0].first == x && e.terms[0].second == 1) {
    shift(x, e.constant);
    return;
  }
  const Interval range = eval_closed(e);
  std::vector<std::pair<VarId, Interval>> diffs;
  for (const auto& [y, c] : e.terms) {
    if (y != x && c == 1) diffs.emplace_back(y, eval_closed(e - LinExpr::var(y)));
  }
  forget(x);
  assign_interval(x, range);
  for (const auto& [y, d] : diffs) {
    add_edge(x + 1, y + 1, dbm::from_upper(d.hi()));
    add_edge(y + 1, x + 1, dbm::from_upper(-d.lo()));
  }
}

void ZoneDomain::assign_interval(VarId x, const Interval& i) {
  if (bottom_) return;
  if (i.is_bottom()) return set_bottom();
  forget(x);
  add_edge(x + 1, 0, dbm::from_upper(i.hi()));
  add_edge(0, x + 1, dbm::from_upper(-i.lo()));
}

void ZoneDomain::apply_binop(VarId x, const LinExpr& l, BinOpKind op, const LinExpr& r) {
  if (bottom_) return;
  switch (op) {
    case BinOpKind::Add:
      return assign(x, l + r);
    case BinOpKind::Sub:
      return assign(x, l - r);
    case BinOpKind::Mul:
      if (l.is_constant()) return assign(x, r.scaled(l.constant));
      if (r.is_constant()) return assign(x, l.scaled(r.constant));
      return assign_interval(x, interval_of(l).mul(interval_of(r)));
    case BinOpKind::Div:
      return assign_interval(x, interval_of(l).div(interval_of(r)));
    case BinOpKind::Mod:
      return assign_interval(x, interval_of(l).rem(interval_of(r)));
  }
}

void ZoneDomain::add_constraint(const LinExpr& e, ConstraintKind k) {
  if (bottom_) return;
  close();
  switch (k) {
    case ConstraintKind::Le:
      return add_le(e);
    case ConstraintKind::Eq:
      add_le(e);
      return add_le(e.scaled(-1));
    case ConstraintKind::Ne:
      return add_ne(e);
  }
}

void ZoneDomain::add_le(const LinExpr& e) {
  if (bottom_) return;
  const Int bound = dbm::from_upper(Bound(-e.constant));
  if (e.terms.size() == 1 && (e.terms[0].second == 1 || e.terms[0].second == -1)) {
    const std::size_t v = e.terms[0].first + 1;
    return e.terms[0].second == 1 ? add_edge(v, 0, bound) : add_edge(0, v, bound);
  }
  if (e.terms.size() == 2 && e.terms[0].second == -e.terms[1].second &&
      (e.terms[0].second == 1 || e.terms[0].second == -1)) {
    const std::size_t a = e.terms[0].first + 1, b = e.terms[1].first + 1;
    return e.terms[0].second == 1 ? add_edge(a, b, bound) : add_edge(b, a, bound);
  }
  // General case: derive unary bounds and unit differences from the rest.
  std::vector<Interval> parts;
  for (const auto& [v, c] : e.terms) parts.push_back(bounds_closed(v).scale(c));
  auto rest_lo = [&](std::size_t skip1, std::size_t skip2) {
    Interval acc = Interval::constant(e.constant);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i != skip1 && i != skip2) acc = acc.add(parts[i]);
    }
    return acc.lo();
  };
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Int>> edges;
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    const Bound lo = rest_lo(i, i);
    if (lo.is_minus_infinity()) continue;
    const auto [v, c] = e.terms[i];
    const Interval cx = Interval(kMinusInf, -lo).unscale(c);
    if (cx.is_bottom()) return set_bottom();
    if (cx.hi().is_finite()) edges.push_back({{v + 1, 0}, dbm::from_upper(cx.hi())});
    if (cx.lo().is_finite()) edges.push_back({{0, v + 1}, dbm::from_upper(-cx.lo())});
  }
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    for (std::size_t j = 0; j < e.terms.size(); ++j) {
      if (e.terms[i].second != 1 || e.terms[j].second != -1) continue;
      const Bound lo = rest_lo(i, j);
      if (lo.is_minus_infinity()) continue;
      edges.push_back({{e.terms[i].first + 1, e.terms[j].first + 1}, dbm::from_upper(-lo)});
    }
  }
  for (const auto& [ij, c] : edges) add_edge(ij.first, ij.second, c);
}

void ZoneDomain::add_ne(const LinExpr& e) {
  if (bottom_) return;
  const Int k = e.constant;
  if (e.terms.size() == 1) {
    const auto [x, c] = e.terms[0];
    if (k % c != 0) return;
    const Int v = -k / c;
    const Interval b = bounds_closed(x);
    if (b.lo() == Bound(v)) add_edge(0, x + 1, dbm::from_upper(Bound(-(v + 1))));
    if (b.hi() == Bound(v)) add_edge(x + 1, 0, dbm::from_upper(Bound(v - 1)));
    return;
  }
  if (e.terms.size() == 2 && e.terms[0].second == -e.terms[1].second &&
      (e.terms[0].second == 1 || e.terms[0].second == -1)) {
    // p - q != -k
    const std::size_t p = (e.terms[0].second == 1 ? e.terms[0].first : e.terms[1].first) + 1;
    const std::size_t q = (e.terms[0].second == 1 ? e.terms[1].first : e.terms[0].first) + 1;
    if (at(p, q) == -k) add_edge(p, q, -k - 1);
    if (at(q, p) != kInf && -at(q, p) == -k) add_edge(q, p, k - 1);
    return;
  }
  if (auto s = eval_closed(e).singleton(); s && *s == 0) set_bottom();
}

bool ZoneDomain::contains(const Point& p) const {
  if (bottom_) return false;
  auto val = [&](std::size_t i) -> Int { return i == 0 ? 0 : p.ints[i - 1]; };
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (at(i, j) != kInf && val(i) - val(j) > at(i, j)) return false;
    }
  }
  return true;
}

std::string ZoneDomain::to_string(const Function* f) const {
  if (bottom_) return "_|_";
  const ZoneDomain c = closed();
  if (c.bottom_) return "_|_";
  auto name = [&](std::size_t i) {
    return f && i - 1 < f->int_vars.size() ? f->int_vars[i - 1] : "v" + std::to_string(i - 1);
  };
  std::string s = "{";
  bool first = true;
  auto emit = [&](const std::string& t) {
    s += (first ? "" : ", ") + t;
    first = false;
  };
  for (std::size_t i = 1; i < dim_; ++i) {
    const Interval b = c.bounds_closed(static_cast<VarId>(i - 1));
    if (!b.is_top()) emit(name(i) + " in " + b.to_string());
    for (std::size_t j = 1; j < dim_; ++j) {
      if (i != j && c.at(i, j) != kInf) emit(name(i) + " - " + name(j) + " <= " + std::to_string(c.at(i, j)));
    }
  }
  return s + "}";
}

}  // namespace rtune
