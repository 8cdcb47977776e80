// SPDX-License-Identifier: Apache-2.0
#include "rtune/domains/domain_id.hpp"

#include <cctype>

namespace rtune {

const char* to_string(DomainId d) {
  switch (d) {
    case DomainId::Bool:
      return "bool";
    case DomainId::Intervals:
      return "intervals";
    case DomainId::Ric:
      return "ric";
    case DomainId::DisInt:
      return "disInt";
    case DomainId::Zones:
      return "zones";
    case DomainId::Octagons:
      return "octagons";
    case DomainId::BoolZones:
      return "prod(bool,zones)";
    case DomainId::Polyhedra:
      return "polyhedra";
    case DomainId::TermInt:
      return "term_int";
    case DomainId::TermDisInt:
      return "term_disInt";
    case DomainId::Boxes:
      return "boxes";
  }
  return "?";
}

std::optional<DomainId> parse_domain(std::string_view s) {
  std::string compact;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  for (DomainId d : kAllDomains) {
    if (compact == to_string(d)) return d;
  }
  return std::nullopt;
}

bool has_implementation(DomainId d) { return d <= DomainId::BoolZones; }

}  // namespace rtune
