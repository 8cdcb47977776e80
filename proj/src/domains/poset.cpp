// SPDX-License-Identifier: Apache-2.0
#include "rtune/domains/poset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rtune {

namespace {

constexpr const char* kDefaultPoset = R"(domain bool
domain intervals
domain ric
domain disInt
domain zones
domain octagons
domain prod(bool,zones)
domain polyhedra unimplemented
domain term_int unimplemented
domain term_disInt unimplemented
domain boxes unimplemented
intervals < ric
intervals < disInt
intervals < zones
zones < octagons
bool < prod(bool,zones)
zones < prod(bool,zones)
octagons < polyhedra
intervals < term_int
disInt < term_disInt
disInt < boxes
)";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

DomainId domain_or_throw(const std::string& name, int line) {
  const auto d = parse_domain(name);
  if (!d) throw PosetError("poset line " + std::to_string(line) + ": unknown domain '" + name + "'");
  return *d;
}

}  // namespace

const char* DomainPoset::default_text() { return kDefaultPoset; }

DomainPoset DomainPoset::default_poset() { return parse(kDefaultPoset); }

DomainPoset DomainPoset::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PosetError("cannot read poset file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

DomainPoset DomainPoset::parse(std::string_view text) {
  DomainPoset p;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string l = trim(raw);
    if (l.empty()) continue;
    if (l.rfind("domain ", 0) == 0) {
      std::string rest = trim(std::string_view(l).substr(7));
      bool implemented = true;
      const std::string suffix = "unimplemented";
      if (rest.size() > suffix.size() && rest.compare(rest.size() - suffix.size(), suffix.size(), suffix) == 0) {
        implemented = false;
        rest = trim(std::string_view(rest).substr(0, rest.size() - suffix.size()));
      }
      p.add_node(domain_or_throw(rest, line), implemented);
      continue;
    }
    const auto lt = l.find('<');
    if (lt == std::string::npos) throw PosetError("poset line " + std::to_string(line) + ": expected 'a < b'");
    const DomainId a = domain_or_throw(trim(std::string_view(l).substr(0, lt)), line);
    const DomainId b = domain_or_throw(trim(std::string_view(l).substr(lt + 1)), line);
    if (a == b) throw PosetError("poset line " + std::to_string(line) + ": self edge");
    p.add_node(a, true);
    p.add_node(b, true);
    p.edges_.emplace_back(a, b);
  }
  if (p.nodes_.empty()) throw PosetError("empty poset");
  p.close();
  return p;
}

void DomainPoset::add_node(DomainId d, bool implemented) {
  if (std::find(nodes_.begin(), nodes_.end(), d) == nodes_.end()) nodes_.push_back(d);
  if (!implemented) unimplemented_.insert(d);
}

void DomainPoset::close() {
  std::sort(nodes_.begin(), nodes_.end());
  const std::size_t n = nodes_.size();
  reach_.assign(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) reach_[i][i] = 1;
  for (const auto& [a, b] : edges_) reach_[index(a)][index(b)] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach_[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach_[k][j]) reach_[i][j] = 1;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (reach_[i][j] && reach_[j][i]) {
        throw PosetError(std::string("poset has a cycle through ") + to_string(nodes_[i]) + " and " +
                         to_string(nodes_[j]));
      }
    }
  }
}

std::size_t DomainPoset::index(DomainId d) const {
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), d);
  if (it == nodes_.end() || *it != d) throw PosetError(std::string("domain not in poset: ") + to_string(d));
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool DomainPoset::contains(DomainId d) const { return std::binary_search(nodes_.begin(), nodes_.end(), d); }

bool DomainPoset::is_implemented(DomainId d) const {
  return contains(d) && has_implementation(d) && unimplemented_.count(d) == 0;
}

std::vector<DomainId> DomainPoset::implemented() const {
  std::vector<DomainId> out;
  for (DomainId d : nodes_) {
    if (is_implemented(d)) out.push_back(d);
  }
  return out;
}

bool DomainPoset::below(DomainId a, DomainId b) const { return reach_[index(a)][index(b)] != 0; }

bool DomainPoset::comparable(DomainId a, DomainId b) const { return below(a, b) || below(b, a); }

bool DomainPoset::compatible(const std::vector<DomainId>& ds) const {
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = i + 1; j < ds.size(); ++j) {
      if (comparable(ds[i], ds[j])) return false;
    }
  }
  return true;
}

std::vector<DomainId> DomainPoset::successors(DomainId d) const {
  std::vector<DomainId> above;
  for (DomainId e : implemented()) {
    if (e != d && below(d, e)) above.push_back(e);
  }
  return minimal(above);
}

std::vector<DomainId> DomainPoset::predecessors(DomainId d) const {
  std::vector<DomainId> under;
  for (DomainId e : implemented()) {
    if (e != d && below(e, d)) under.push_back(e);
  }
  return maximal(under);
}

std::vector<DomainId> DomainPoset::minimal(const std::vector<DomainId>& s) const {
  std::vector<DomainId> out;
  for (DomainId d : s) {
    const bool dominated = std::any_of(s.begin(), s.end(), [&](DomainId e) { return e != d && below(e, d); });
    if (!dominated) out.push_back(d);
  }
  return out;
}

std::vector<DomainId> DomainPoset::maximal(const std::vector<DomainId>& s) const {
  std::vector<DomainId> out;
  for (DomainId d : s) {
    const bool dominated = std::any_of(s.begin(), s.end(), [&](DomainId e) { return e != d && below(d, e); });
    if (!dominated) out.push_back(d);
  }
  return out;
}

}  // namespace rtune
