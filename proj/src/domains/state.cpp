// SPDX-License-Identifier: Apache-2.0
#include "rtune/domains/state.hpp"

namespace rtune {

bool leq(const AbstractState& a, const AbstractState& b) {
  return AbstractState::binary(a, b, [](const auto& x, const auto& y) { return x.leq(y); });
}

AbstractState join(const AbstractState& a, const AbstractState& b) {
  return AbstractState::binary(a, b, [](const auto& x, const auto& y) { return AbstractState(x.join(y)); });
}

AbstractState meet(const AbstractState& a, const AbstractState& b) {
  return AbstractState::binary(a, b, [](const auto& x, const auto& y) { return AbstractState(x.meet(y)); });
}

AbstractState widen(const AbstractState& a, const AbstractState& b, Thresholds t) {
  return AbstractState::binary(a, b, [t](const auto& x, const auto& y) { return AbstractState(x.widen(y, t)); });
}

AbstractState narrow(const AbstractState& a, const AbstractState& b) {
  if (!leq(b, a)) throw std::invalid_argument("narrowing requires the second state below the first");
  return AbstractState::binary(a, b, [](const auto& x, const auto& y) { return AbstractState(x.narrow(y)); });
}

AbstractState transfer(const AbstractState& s, const Function& f, const Stmt& st, TransferOptions opt) {
  return std::visit(
      [&](const auto& x) {
        auto r = x;
        rtune::transfer(r, f, st, opt);
        return AbstractState(std::move(r));
      },
      s.value());
}

AbstractState backward_transfer(const AbstractState& post, const Function& f, const Stmt& st, TransferOptions opt) {
  return std::visit(
      [&](const auto& x) {
        auto r = x;
        rtune::backward_transfer(r, f, st, opt);
        return AbstractState(std::move(r));
      },
      post.value());
}

AbstractState reduce(const AbstractState& s) {
  return std::visit(
      [&](const auto& x) {
        using D = std::decay_t<decltype(x)>;
        D r = x;
        if constexpr (std::is_same_v<D, BoolZoneProduct>) r.reduce();
        return AbstractState(std::move(r));
      },
      s.value());
}

}  // namespace rtune
