// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rtune {

/// Abstract domains known to the tool. The last four may appear in a poset
/// but cannot be analyzed with. Declaration order is the canonical order.
enum class DomainId { Bool, Intervals, Ric, DisInt, Zones, Octagons, BoolZones, Polyhedra, TermInt, TermDisInt, Boxes };

inline constexpr DomainId kAllDomains[] = {DomainId::Bool,      DomainId::Intervals, DomainId::Ric,
                                           DomainId::DisInt,    DomainId::Zones,     DomainId::Octagons,
                                           DomainId::BoolZones, DomainId::Polyhedra, DomainId::TermInt,
                                           DomainId::TermDisInt, DomainId::Boxes};

/// bool, intervals, ric, disInt, zones, octagons, prod(bool,zones), polyhedra,
/// term_int, term_disInt, boxes.
const char* to_string(DomainId d);
/// Inverse of to_string; whitespace is ignored.
std::optional<DomainId> parse_domain(std::string_view s);
bool has_implementation(DomainId d);

class UnimplementedDomain : public std::runtime_error {
 public:
  explicit UnimplementedDomain(DomainId d)
      : std::runtime_error(std::string("domain declared but unimplemented: ") + to_string(d)) {}
};

}  // namespace rtune
