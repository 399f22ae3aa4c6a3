#pragma once

// Small mixed quiver settings shared by the tests.

#include <string>
#include <vector>

#include "mqinv/quiver.hpp"

namespace fixtures {

using namespace mqinv;

struct ArrowSpec {
  std::string id;
  int tail;
  int head;
  ArrowKind kind = ArrowKind::M;
};

inline MixedQuiverSetting make_setting(std::vector<int> dim, std::vector<Group> group, std::vector<int> involution,
                                       const std::vector<ArrowSpec>& arrows) {
  MixedQuiverSetting s;
  s.quiver.vertex_count = static_cast<int>(dim.size());
  s.dim = std::move(dim);
  s.group = std::move(group);
  s.involution = std::move(involution);
  for (const auto& a : arrows) {
    s.quiver.arrows.push_back({a.id, a.tail, a.head});
    s.kind.push_back(a.kind);
  }
  return s;
}

/// One vertex with `loops` M loops.
inline MixedQuiverSetting one_vertex(Group g, int n, int loops = 1) {
  std::vector<ArrowSpec> arrows;
  for (int k = 1; k <= loops; ++k) arrows.push_back({"x" + std::to_string(k), 1, 1});
  return make_setting({n}, {g}, {1}, arrows);
}

/// A GL pair 1 <-> 2 with two arrows 2 -> 1 of the given kind (pairs of bilinear forms).
inline MixedQuiverSetting bilinear_forms(int n, ArrowKind kind) {
  return make_setting({n, n}, {Group::GL, Group::GL}, {2, 1}, {{"a", 2, 1, kind}, {"b", 2, 1, kind}});
}

/// Vertices 1,2 SL(n) twins, 3 an O(m) vertex; a: 3->1 (M), b: 1->2 (S+), c: 2->3 (M).
inline MixedQuiverSetting sl_sl_o(int n, int m) {
  return make_setting({n, n, m}, {Group::SL, Group::SL, Group::O}, {2, 1, 3},
                      {{"a", 3, 1}, {"b", 1, 2, ArrowKind::SymPlus}, {"c", 2, 3}});
}

/// Five vertices: GL pair (1,2), SL pair (3,4), O vertex 5; alpha: 1->2, beta: 2->1 (S+),
/// gamma: 3->1, delta: 5->3.
inline MixedQuiverSetting five_vertex(int n12 = 2, int n34 = 2, int n5 = 2) {
  return make_setting({n12, n12, n34, n34, n5}, {Group::GL, Group::GL, Group::SL, Group::SL, Group::O},
                      {2, 1, 4, 3, 5},
                      {{"alpha", 1, 2}, {"beta", 2, 1, ArrowKind::SymPlus}, {"gamma", 3, 1}, {"delta", 5, 3}});
}

/// Every group label, every arrow kind.
inline std::vector<MixedQuiverSetting> battery() {
  return {
      one_vertex(Group::GL, 3, 2),
      one_vertex(Group::SL, 2),
      one_vertex(Group::O, 3),
      one_vertex(Group::SO, 2),
      one_vertex(Group::Sp, 4),
      bilinear_forms(2, ArrowKind::SymPlus),
      bilinear_forms(3, ArrowKind::SymMinus),
      sl_sl_o(2, 3),
      five_vertex(),
      make_setting({4}, {Group::Sp}, {1}, {{"l", 1, 1, ArrowKind::LPlus}, {"m", 1, 1, ArrowKind::LMinus}}),
      make_setting({3}, {Group::O}, {1}, {{"s", 1, 1, ArrowKind::SymPlus}, {"k", 1, 1, ArrowKind::SymMinus}}),
      make_setting({2, 4}, {Group::SO, Group::Sp}, {1, 2}, {{"a", 1, 2}, {"b", 2, 1}}),
  };
}

}  // namespace fixtures
