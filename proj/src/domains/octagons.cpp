// SPDX-License-Identifier: Apache-2.0
#include "rtune/domains/octagons.hpp"

#include <algorithm>

namespace rtune {

using dbm::kInf;

namespace {

std::size_t bar(std::size_t i) { return i ^ 1U; }
std::size_t pos(VarId x) { return 2 * static_cast<std::size_t>(x); }
std::size_t neg(VarId x) { return 2 * static_cast<std::size_t>(x) + 1; }

bool unit(Int c) { return c == 1 || c == -1; }

}  // namespace

OctagonDomain::OctagonDomain(VarLayout l, bool bottom)
    : layout_(l), dim_(2 * l.ints), bottom_(bottom), m_(dim_ * dim_, kInf) {
  for (std::size_t i = 0; i < dim_; ++i) at(i, i) = 0;
}

void OctagonDomain::set_bottom() {
  bottom_ = true;
  closed_ = true;
  std::fill(m_.begin(), m_.end(), kInf);
  for (std::size_t i = 0; i < dim_; ++i) at(i, i) = 0;
}

void OctagonDomain::tighten_and_strengthen() {
  const std::size_t n = dim_;
  for (std::size_t i = 0; i < n; ++i) {
    Int& u = at(i, bar(i));
    if (u != kInf) u = 2 * floor_div(u, 2);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Int ui = at(i, bar(i));
    if (ui == kInf) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const Int uj = at(bar(j), j);
      if (uj == kInf) continue;
      const Int s = dbm::add(ui, uj);
      const Int v = s == kInf ? kInf : floor_div(s, 2);
      if (v < at(i, j)) at(i, j) = v;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i, i) < 0) return set_bottom();
  }
}

void OctagonDomain::close() {
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
  tighten_and_strengthen();
  if (!bottom_) closed_ = true;
}

OctagonDomain OctagonDomain::closed() const {
  OctagonDomain c = *this;
  c.close();
  return c;
}

void OctagonDomain::add_edge(std::size_t i, std::size_t j, Int c) {
  if (bottom_ || c >= at(i, j)) return;
  if (dbm::add(c, at(j, i)) < 0) return set_bottom();
  const std::size_t n = dim_;
  auto relax_through = [&](std::size_t a, std::size_t b) {
    std::vector<Int> to_a(n), from_b(n);
    for (std::size_t p = 0; p < n; ++p) {
      to_a[p] = at(p, a);
      from_b[p] = at(b, p);
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (to_a[p] == kInf) continue;
      const Int pab = dbm::add(to_a[p], c);
      Int* rp = &m_[p * n];
      for (std::size_t q = 0; q < n; ++q) {
        const Int v = dbm::add(pab, from_b[q]);
        if (v < rp[q]) rp[q] = v;
      }
    }
  };
  at(i, j) = std::min(at(i, j), c);
  at(bar(j), bar(i)) = std::min(at(bar(j), bar(i)), c);
  relax_through(i, j);
  if (bar(j) != i) relax_through(bar(j), bar(i));
  for (std::size_t p = 0; p < n; ++p) {
    if (at(p, p) < 0) return set_bottom();
  }
  tighten_and_strengthen();
}

void OctagonDomain::add_octagonal(VarId x, Int a, VarId y, Int b, Int c) {
  if (bottom_) return;
  if (x == y) {
    if (a + b == 0) {
      if (c < 0) set_bottom();
      return;
    }
    // 2*a*x <= c
    const std::size_t p = a == 1 ? pos(x) : neg(x);
    return add_edge(bar(p), p, c == kInf ? kInf : dbm::clamp(2 * floor_div(c, 2)));
  }
  // V_p - V_q <= c with V_p = a*x and V_q = -b*y.
  const std::size_t p = a == 1 ? pos(x) : neg(x);
  const std::size_t q = b == 1 ? neg(y) : pos(y);
  add_edge(q, p, c);
}

bool OctagonDomain::leq(const OctagonDomain& o) const {
  check_layout(layout_, o.layout_);
  if (bottom_) return true;
  const OctagonDomain a = closed_ ? *this : closed();
  if (a.bottom_) return true;
  if (o.bottom_) return false;
  for (std::size_t k = 0; k < m_.size(); ++k) {
    if (a.m_[k] > o.m_[k]) return false;
  }
  return true;
}

bool OctagonDomain::operator==(const OctagonDomain& o) const {
  return layout_ == o.layout_ && bottom_ == o.bottom_ && m_ == o.m_;
}

OctagonDomain OctagonDomain::join(const OctagonDomain& o) const {
  check_layout(layout_, o.layout_);
  const OctagonDomain a = closed(), b = o.closed();
  if (a.bottom_) return b;
  if (b.bottom_) return a;
  OctagonDomain r = a;
  for (std::size_t k = 0; k < m_.size(); ++k) r.m_[k] = std::max(a.m_[k], b.m_[k]);
  return r;
}

OctagonDomain OctagonDomain::meet(const OctagonDomain& o) const {
  check_layout(layout_, o.layout_);
  if (bottom_ || o.bottom_) return bottom(layout_);
  OctagonDomain r = *this;
  for (std::size_t k = 0; k < m_.size(); ++k) r.m_[k] = std::min(m_[k], o.m_[k]);
  r.closed_ = false;
  r.close();
  return r;
}

OctagonDomain OctagonDomain::widen(const OctagonDomain& o, Thresholds t) const {
  check_layout(layout_, o.layout_);
  if (bottom_) return o.closed();
  const OctagonDomain b = o.closed();
  if (b.bottom_) return *this;
  OctagonDomain r = *this;
  bool changed = false;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (i == j) continue;
      Int w;
      if (j == bar(i)) {
        // (2k+1, 2k) bounds 2x; (2k, 2k+1) bounds -2x.
        w = dbm::widen_entry(at(i, j), b.at(i, j), t, (i & 1U) ? 1 : -1, 2);
      } else {
        w = dbm::widen_entry(at(i, j), b.at(i, j), t, 1, 1);
      }
      if (w != at(i, j)) {
        r.at(i, j) = w;
        changed = true;
      }
    }
  }
  if (changed) r.closed_ = false;
  return r;
}

OctagonDomain OctagonDomain::narrow(const OctagonDomain& o) const {
  check_layout(layout_, o.layout_);
  if (bottom_ || o.bottom_) return bottom(layout_);
  const OctagonDomain b = o.closed();
  if (b.bottom_) return bottom(layout_);
  OctagonDomain r = *this;
  for (std::size_t k = 0; k < m_.size(); ++k) {
    if (r.m_[k] == kInf) r.m_[k] = b.m_[k];
  }
  r.closed_ = false;
  r.close();
  return r;
}

void OctagonDomain::forget(VarId x) {
  if (bottom_) return;
  close();
  if (bottom_) return;
  for (std::size_t v : {pos(x), neg(x)}) {
    for (std::size_t k = 0; k < dim_; ++k) {
      at(v, k) = kInf;
      at(k, v) = kInf;
    }
    at(v, v) = 0;
  }
}

Interval OctagonDomain::bounds_closed(VarId x) const {
  if (bottom_) return Interval::bottom();
  const Int up = at(neg(x), pos(x));
  const Int down = at(pos(x), neg(x));
  return Interval(down == kInf ? kMinusInf : Bound(-floor_div(down, 2)), up == kInf ? kPlusInf : Bound(floor_div(up, 2)));
}

Interval OctagonDomain::bounds(VarId x) const { return closed_ ? bounds_closed(x) : closed().bounds_closed(x); }

Interval OctagonDomain::eval_closed(const LinExpr& e) const {
  if (bottom_) return Interval::bottom();
  if (e.terms.size() == 2 && unit(e.terms[0].second) && unit(e.terms[1].second)) {
    // a*x + b*y = V_p - V_q
    const auto [x, a] = e.terms[0];
    const auto [y, b] = e.terms[1];
    const std::size_t p = a == 1 ? pos(x) : neg(x);
    const std::size_t q = b == 1 ? neg(y) : pos(y);
    const Interval r(dbm::to_lower_negated(at(p, q)), dbm::to_upper(at(q, p)));
    return r.add(Interval::constant(e.constant));
  }
  Interval acc = Interval::constant(e.constant);
  for (const auto& [v, c] : e.terms) acc = acc.add(bounds_closed(v).scale(c));
  return acc;
}

Interval OctagonDomain::interval_of(const LinExpr& e) const {
  return closed_ ? eval_closed(e) : closed().eval_closed(e);
}

void OctagonDomain::shift(VarId x, Int k) {
  // V_{2x} grows by k and V_{2x+1} shrinks by k.
  const std::size_t p = pos(x), q = neg(x);
  for (std::size_t j = 0; j < dim_; ++j) {
    at(p, j) = dbm::add(at(p, j), -k);
    at(q, j) = dbm::add(at(q, j), k);
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    at(i, p) = dbm::add(at(i, p), k);
    at(i, q) = dbm::add(at(i, q), -k);
  }
}

void OctagonDomain::negate(VarId x) {
  const std::size_t p = pos(x), q = neg(x);
  for (std::size_t j = 0; j < dim_; ++j) std::swap(at(p, j), at(q, j));
  for (std::size_t i = 0; i < dim_; ++i) std::swap(at(i, p), at(i, q));
}

void OctagonDomain::assign(VarId x, const LinExpr& e) {
  if (bottom_) return;
  close();
  if (bottom_) return;
  if (e.terms.size() == 1 && e.terms[0].first == x && unit(e.terms[0].second)) {
    if (e.terms[0].second == -1) negate(x);
    shift(x, e.constant);
    return;
  }
  const Interval range = eval_closed(e);
  // x - c*y equals the rest of e for each other unit term c*y.
  std::vector<std::tuple<VarId, Int, Interval>> rels;
  for (const auto& [y, c] : e.terms) {
    if (y != x && unit(c)) rels.emplace_back(y, c, eval_closed(e - LinExpr::var(y, c)));
  }
  forget(x);
  assign_interval(x, range);
  for (const auto& [y, c, d] : rels) {
    add_octagonal(x, 1, y, -c, dbm::from_upper(d.hi()));
    add_octagonal(x, -1, y, c, dbm::from_upper(-d.lo()));
  }
}

void OctagonDomain::assign_interval(VarId x, const Interval& i) {
  if (bottom_) return;
  if (i.is_bottom()) return set_bottom();
  forget(x);
  if (i.hi().is_finite()) add_octagonal(x, 1, x, 1, dbm::from_upper(Bound::mul(i.hi(), Bound(2), Round::Up)));
  if (i.lo().is_finite()) add_octagonal(x, -1, x, -1, dbm::from_upper(Bound::mul(-i.lo(), Bound(2), Round::Up)));
}

void OctagonDomain::apply_binop(VarId x, const LinExpr& l, BinOpKind op, const LinExpr& r) {
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

void OctagonDomain::add_constraint(const LinExpr& e, ConstraintKind k) {
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

void OctagonDomain::add_le(const LinExpr& e) {
  if (bottom_) return;
  const Int bound = dbm::from_upper(Bound(-e.constant));
  if (e.terms.size() == 1 && unit(e.terms[0].second)) {
    const auto [x, a] = e.terms[0];
    return add_octagonal(x, a, x, a, bound == kInf ? kInf : dbm::clamp(2 * bound));
  }
  if (e.terms.size() == 2 && unit(e.terms[0].second) && unit(e.terms[1].second)) {
    return add_octagonal(e.terms[0].first, e.terms[0].second, e.terms[1].first, e.terms[1].second, bound);
  }
  std::vector<Interval> parts;
  for (const auto& [v, c] : e.terms) parts.push_back(bounds_closed(v).scale(c));
  auto rest_lo = [&](std::size_t skip1, std::size_t skip2) {
    Interval acc = Interval::constant(e.constant);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i != skip1 && i != skip2) acc = acc.add(parts[i]);
    }
    return acc.lo();
  };
  struct Pending {
    VarId x;
    Int a;
    VarId y;
    Int b;
    Int c;
  };
  std::vector<Pending> pending;
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    const Bound lo = rest_lo(i, i);
    if (lo.is_minus_infinity()) continue;
    const auto [v, c] = e.terms[i];
    const Interval cx = Interval(kMinusInf, -lo).unscale(c);
    if (cx.is_bottom()) return set_bottom();
    if (cx.hi().is_finite()) pending.push_back({v, 1, v, 1, dbm::from_upper(Bound::mul(cx.hi(), Bound(2), Round::Up))});
    if (cx.lo().is_finite()) pending.push_back({v, -1, v, -1, dbm::from_upper(Bound::mul(-cx.lo(), Bound(2), Round::Up))});
  }
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    for (std::size_t j = i + 1; j < e.terms.size(); ++j) {
      if (!unit(e.terms[i].second) || !unit(e.terms[j].second)) continue;
      const Bound lo = rest_lo(i, j);
      if (lo.is_minus_infinity()) continue;
      pending.push_back({e.terms[i].first, e.terms[i].second, e.terms[j].first, e.terms[j].second, dbm::from_upper(-lo)});
    }
  }
  for (const Pending& p : pending) add_octagonal(p.x, p.a, p.y, p.b, p.c);
}

void OctagonDomain::add_ne(const LinExpr& e) {
  if (bottom_) return;
  const Int k = e.constant;
  if (e.terms.size() == 1) {
    const auto [x, c] = e.terms[0];
    if (k % c != 0) return;
    const Int v = -k / c;
    const Interval b = bounds_closed(x);
    if (b.lo() == Bound(v)) add_octagonal(x, -1, x, -1, dbm::clamp(-2 * (v + 1)));
    if (b.hi() == Bound(v)) add_octagonal(x, 1, x, 1, dbm::clamp(2 * (v - 1)));
    return;
  }
  if (e.terms.size() == 2 && unit(e.terms[0].second) && unit(e.terms[1].second)) {
    const auto [x, a] = e.terms[0];
    const auto [y, b] = e.terms[1];
    const Interval r = eval_closed(LinExpr{e.terms, 0});
    if (r.hi() == Bound(-k)) add_octagonal(x, a, y, b, -k - 1);
    if (r.lo() == Bound(-k)) add_octagonal(x, -a, y, -b, k - 1);
    return;
  }
  if (auto s = eval_closed(e).singleton(); s && *s == 0) set_bottom();
}

bool OctagonDomain::contains(const Point& p) const {
  if (bottom_) return false;
  auto val = [&](std::size_t i) -> Int { return (i & 1U) ? -p.ints[i / 2] : p.ints[i / 2]; };
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (at(i, j) != kInf && val(j) - val(i) > at(i, j)) return false;
    }
  }
  return true;
}

std::string OctagonDomain::to_string(const Function* f) const {
  if (bottom_) return "_|_";
  const OctagonDomain c = closed();
  if (c.bottom_) return "_|_";
  auto name = [&](std::size_t v) { return f && v < f->int_vars.size() ? f->int_vars[v] : "v" + std::to_string(v); };
  auto term = [&](std::size_t i) { return std::string((i & 1U) ? "-" : "+") + name(i / 2); };
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (i == j || c.at(i, j) == kInf) continue;
      if (j != bar(i) && (j / 2 < i / 2)) continue;
      s += (first ? "" : ", ") + term(j) + " " + term(bar(i)) + " <= " + std::to_string(c.at(i, j));
      first = false;
    }
  }
  return s + "}";
}

}  // namespace rtune
