/// @file layout.hpp
/// Layered top-down layout on a fixed unit grid.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fta/core/types.hpp"
#include "fta/core/validate.hpp"

namespace fta::render {

inline constexpr double kNodeWidth = 160;
inline constexpr double kNodeHeight = 40;
inline constexpr double kGap = 24;
inline constexpr double kGateSize = 48;
inline constexpr double kLevelPitch = 160;
inline constexpr double kMargin = 24;

struct Point {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned box given by its corners.
struct Box {
  double left, top, right, bottom;

  bool overlaps(const Box& o) const {
    return left < o.right && o.left < right && top < o.bottom && o.top < bottom;
  }
  bool on_boundary(Point p, double eps = 1e-9) const {
    bool inside = p.x >= left - eps && p.x <= right + eps && p.y >= top - eps && p.y <= bottom + eps;
    bool edge = std::abs(p.x - left) < eps || std::abs(p.x - right) < eps ||
                std::abs(p.y - top) < eps || std::abs(p.y - bottom) < eps;
    return inside && edge;
  }
};

struct Layout {
  /// Event box centers.
  std::map<std::string, Point, std::less<>> positions;
  /// Event depth: longest distance from the top.
  std::map<std::string, int, std::less<>> level;
  /// Gate glyph centers, keyed by the owning event id. A gate sits half a
  /// level below its event.
  std::map<std::string, Point, std::less<>> gate_positions;
  double width = 0;
  double height = 0;

  Box event_box(std::string_view id) const {
    auto p = positions.find(id)->second;
    return {p.x - kNodeWidth / 2, p.y - kNodeHeight / 2, p.x + kNodeWidth / 2, p.y + kNodeHeight / 2};
  }
  Box gate_box(std::string_view owner) const {
    auto p = gate_positions.find(owner)->second;
    return {p.x - kGateSize / 2, p.y - kGateSize / 2, p.x + kGateSize / 2, p.y + kGateSize / 2};
  }
};

namespace detail {

inline std::vector<std::string> successors(const EventNode& node) {
  std::vector<std::string> next;
  if (!node.gate) return next;
  next = node.gate->children;
  if (node.gate->condition) next.push_back(*node.gate->condition);
  return next;
}

}  // namespace detail

/// Depth is the longest path from the top, so every parent sits above all
/// of its children. Each event is placed under one layout parent (the
/// first, in preorder, one level up); subtrees are packed left to right
/// in declaration order with kGap between them, and parents are centered
/// over their subtree. An INHIBIT condition is placed after the input.
/// Throws InvalidTree.
inline Layout layout_tree(const FaultTree& tree) {
  require_valid(tree);
  const auto order = preorder_ids(tree);
  Layout out;

  // Longest-path depth via relaxation in topological order.
  std::map<std::string, int, std::less<>> indegree;
  for (const auto& id : order) {
    indegree.try_emplace(id, 0);
    for (const auto& c : detail::successors(tree.at(id))) ++indegree[c];
  }
  std::vector<std::string> topo;
  std::vector<std::string> ready{tree.top};
  std::map<std::string, int, std::less<>> depth{{tree.top, 0}};
  while (!ready.empty()) {
    auto id = ready.back();
    ready.pop_back();
    topo.push_back(id);
    for (const auto& c : detail::successors(tree.at(id))) {
      depth[c] = std::max(depth[c], depth[id] + 1);
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }

  // Spanning tree: each node adopted by its first parent one level up.
  std::map<std::string, std::vector<std::string>, std::less<>> adopted;
  std::map<std::string, bool, std::less<>> placed{{tree.top, true}};
  for (const auto& id : order) {
    for (const auto& c : detail::successors(tree.at(id))) {
      if (!placed[c] && depth[c] == depth[id] + 1) {
        placed[c] = true;
        adopted[id].push_back(c);
      }
    }
  }

  std::map<std::string, double, std::less<>> span;
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    double total = 0;
    const auto& kids = adopted[*it];
    for (const auto& c : kids) total += span[c];
    if (!kids.empty()) total += kGap * static_cast<double>(kids.size() - 1);
    span[*it] = std::max(kNodeWidth, total);
  }

  int max_depth = 0;
  std::vector<std::pair<std::string, double>> stack{{tree.top, kMargin}};
  while (!stack.empty()) {
    auto [id, left] = stack.back();
    stack.pop_back();
    const int d = depth[id];
    max_depth = std::max(max_depth, d);
    const double x = left + span[id] / 2;
    const double y = kMargin + kNodeHeight / 2 + d * kLevelPitch;
    out.positions[id] = {x, y};
    out.level[id] = d;
    if (tree.at(id).has_children()) {
      out.gate_positions[id] = {x, y + kNodeHeight / 2 + (kLevelPitch - kNodeHeight) / 2};
    }
    const auto& kids = adopted[id];
    double used = 0;
    for (const auto& c : kids) used += span[c];
    if (!kids.empty()) used += kGap * static_cast<double>(kids.size() - 1);
    double cursor = left + (span[id] - used) / 2;
    for (const auto& c : kids) {
      stack.emplace_back(c, cursor);
      cursor += span[c] + kGap;
    }
  }
  out.width = span[tree.top] + 2 * kMargin;
  out.height = 2 * kMargin + kNodeHeight + max_depth * kLevelPitch;
  return out;
}

}  // namespace fta::render
