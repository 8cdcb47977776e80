// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <type_traits>
#include <variant>

#include "rtune/domains/bool_domain.hpp"
#include "rtune/domains/disjunctive.hpp"
#include "rtune/domains/domain_id.hpp"
#include "rtune/domains/nonrelational.hpp"
#include "rtune/domains/octagons.hpp"
#include "rtune/domains/product.hpp"
#include "rtune/domains/ric.hpp"
#include "rtune/domains/semantics.hpp"
#include "rtune/domains/zones.hpp"

namespace rtune {

using IntervalDomain = NonRelational<Interval>;
using RicDomain = NonRelational<IntervalCongruence>;
using DisIntDomain = NonRelational<DisjunctiveInterval>;

template <class D>
struct DomainTag {
  using type = D;
};

/// Calls fn(DomainTag<D>{}) with the class implementing `d`.
template <class F>
decltype(auto) with_domain(DomainId d, F&& fn) {
  switch (d) {
    case DomainId::Bool:
      return fn(DomainTag<BoolDomain>{});
    case DomainId::Intervals:
      return fn(DomainTag<IntervalDomain>{});
    case DomainId::Ric:
      return fn(DomainTag<RicDomain>{});
    case DomainId::DisInt:
      return fn(DomainTag<DisIntDomain>{});
    case DomainId::Zones:
      return fn(DomainTag<ZoneDomain>{});
    case DomainId::Octagons:
      return fn(DomainTag<OctagonDomain>{});
    case DomainId::BoolZones:
      return fn(DomainTag<BoolZoneProduct>{});
    default:
      throw UnimplementedDomain(d);
  }
}

class DomainMismatch : public std::invalid_argument {
 public:
  DomainMismatch() : std::invalid_argument("abstract states of different domains") {}
};

/// A state of any implemented domain.
class AbstractState {
 public:
  using Value = std::variant<BoolDomain, IntervalDomain, RicDomain, DisIntDomain, ZoneDomain, OctagonDomain,
                             BoolZoneProduct>;

  template <class D>
  explicit AbstractState(D s) : value_(std::move(s)) {}

  static AbstractState top(DomainId d, VarLayout l) {
    return with_domain(d, [&](auto tag) { return AbstractState(decltype(tag)::type::top(l)); });
  }
  static AbstractState bottom(DomainId d, VarLayout l) {
    return with_domain(d, [&](auto tag) { return AbstractState(decltype(tag)::type::bottom(l)); });
  }

  DomainId domain() const { return static_cast<DomainId>(value_.index()); }
  const Value& value() const { return value_; }
  Value& value() { return value_; }
  template <class D>
  const D& as() const {
    return std::get<D>(value_);
  }

  bool is_bottom() const {
    return std::visit([](const auto& s) { return s.is_bottom(); }, value_);
  }
  const VarLayout& layout() const {
    return std::visit([](const auto& s) -> const VarLayout& { return s.layout(); }, value_);
  }
  bool contains(const Point& p) const {
    return std::visit([&](const auto& s) { return s.contains(p); }, value_);
  }
  std::string to_string(const Function* f = nullptr) const {
    return std::visit([&](const auto& s) { return s.to_string(f); }, value_);
  }

  /// Applies fn(a, b) to the two same-domain alternatives.
  template <class F>
  static decltype(auto) binary(const AbstractState& a, const AbstractState& b, F&& fn) {
    if (a.value_.index() != b.value_.index()) throw DomainMismatch();
    return std::visit(
        [&](const auto& x) -> decltype(auto) {
          using D = std::decay_t<decltype(x)>;
          return fn(x, std::get<D>(b.value_));
        },
        a.value_);
  }

 private:
  Value value_;
};

static_assert(std::is_same_v<std::variant_alternative_t<static_cast<std::size_t>(DomainId::BoolZones),
                                                        AbstractState::Value>,
                             BoolZoneProduct>);

bool leq(const AbstractState& a, const AbstractState& b);
AbstractState join(const AbstractState& a, const AbstractState& b);
AbstractState meet(const AbstractState& a, const AbstractState& b);
AbstractState widen(const AbstractState& a, const AbstractState& b, Thresholds t);
/// Throws std::invalid_argument unless b <= a.
AbstractState narrow(const AbstractState& a, const AbstractState& b);
AbstractState transfer(const AbstractState& s, const Function& f, const Stmt& st, TransferOptions opt = {});
AbstractState backward_transfer(const AbstractState& post, const Function& f, const Stmt& st,
                                TransferOptions opt = {});
/// Re-establishes the reduced form of ric and product states; identity otherwise.
AbstractState reduce(const AbstractState& s);

}  // namespace rtune
