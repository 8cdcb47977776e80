// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rtune/domains/domain_id.hpp"

namespace rtune {

class PosetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precision order on domains: an edge lower < upper means upper is at least
/// as precise. Text format, one item per line, `#` starts a comment:
///
///   domain zones
///   domain polyhedra unimplemented
///   intervals < zones
class DomainPoset {
 public:
  static DomainPoset default_poset();
  static const char* default_text();
  static DomainPoset parse(std::string_view text);
  static DomainPoset from_file(const std::string& path);

  bool contains(DomainId d) const;
  /// Declared and backed by an implementation.
  bool is_implemented(DomainId d) const;
  /// Implemented nodes in canonical order.
  std::vector<DomainId> implemented() const;
  const std::vector<DomainId>& nodes() const { return nodes_; }
  const std::vector<std::pair<DomainId, DomainId>>& edges() const { return edges_; }

  /// a = b or b is reachable from a. Throws PosetError for unknown ids.
  bool below(DomainId a, DomainId b) const;
  bool comparable(DomainId a, DomainId b) const;
  /// True iff the domains are pairwise incomparable (and hence distinct).
  bool compatible(const std::vector<DomainId>& ds) const;

  /// Immediate successors and predecessors among implemented domains.
  std::vector<DomainId> successors(DomainId d) const;
  std::vector<DomainId> predecessors(DomainId d) const;
  /// Minimal and maximal elements of `s` under the induced order.
  std::vector<DomainId> minimal(const std::vector<DomainId>& s) const;
  std::vector<DomainId> maximal(const std::vector<DomainId>& s) const;

 private:
  void add_node(DomainId d, bool implemented);
  void close();
  std::size_t index(DomainId d) const;

  std::vector<DomainId> nodes_;
  std::set<DomainId> unimplemented_;
  std::vector<std::pair<DomainId, DomainId>> edges_;
  std::vector<std::vector<char>> reach_;
};

}  // namespace rtune
