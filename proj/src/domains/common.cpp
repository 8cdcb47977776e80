// SPDX-License-Identifier: Apache-2.0
#include "rtune/domains/common.hpp"

namespace rtune {

Tri tri_not(Tri a) {
  switch (a) {
    case Tri::True:
      return Tri::False;
    case Tri::False:
      return Tri::True;
    default:
      return a;
  }
}

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::Bottom || b == Tri::Bottom) return Tri::Bottom;
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::True && b == Tri::True) return Tri::True;
  return Tri::Top;
}

Tri tri_or(Tri a, Tri b) { return tri_not(tri_and(tri_not(a), tri_not(b))); }

const char* to_string(Tri t) {
  switch (t) {
    case Tri::Bottom:
      return "_|_";
    case Tri::True:
      return "true";
    case Tri::False:
      return "false";
    case Tri::Top:
      return "T";
  }
  return "?";
}

}  // namespace rtune
