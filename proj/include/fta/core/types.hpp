/// @file types.hpp
/// Fault-tree data model: event and gate taxonomy, nodes, trees.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fta {

/// Event symbols of the standard FTA shape catalog.
enum class EventKind {
  Basic,
  External,
  Undeveloped,
  Conditioning,
  Intermediate,
  TopEvent,
  TransferIn,
  TransferOut,
};

/// Logic gate symbols. PriorityAnd inputs are ordered by declaration.
enum class GateKind { And, Or, Xor, PriorityAnd, Inhibit };

inline constexpr std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Basic: return "Basic";
    case EventKind::External: return "External";
    case EventKind::Undeveloped: return "Undeveloped";
    case EventKind::Conditioning: return "Conditioning";
    case EventKind::Intermediate: return "Intermediate";
    case EventKind::TopEvent: return "TopEvent";
    case EventKind::TransferIn: return "TransferIn";
    case EventKind::TransferOut: return "TransferOut";
  }
  return "?";
}

inline constexpr std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::And: return "And";
    case GateKind::Or: return "Or";
    case GateKind::Xor: return "Xor";
    case GateKind::PriorityAnd: return "PriorityAnd";
    case GateKind::Inhibit: return "Inhibit";
  }
  return "?";
}

inline std::optional<EventKind> parse_event_kind(std::string_view text) {
  for (auto kind : {EventKind::Basic, EventKind::External, EventKind::Undeveloped,
                    EventKind::Conditioning, EventKind::Intermediate, EventKind::TopEvent,
                    EventKind::TransferIn, EventKind::TransferOut}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

inline std::optional<GateKind> parse_gate_kind(std::string_view text) {
  for (auto kind : {GateKind::And, GateKind::Or, GateKind::Xor, GateKind::PriorityAnd,
                    GateKind::Inhibit}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

/// Leaves that take a truth value / probability from the caller.
inline constexpr bool is_variable(EventKind kind) {
  return kind == EventKind::Basic || kind == EventKind::External ||
         kind == EventKind::Undeveloped || kind == EventKind::Conditioning;
}

/// Kinds that may own a gate.
inline constexpr bool may_have_gate(EventKind kind) {
  return kind == EventKind::Intermediate || kind == EventKind::TopEvent;
}

/// Minimum number of gate inputs before a gate is flagged.
inline constexpr std::size_t min_inputs(GateKind kind) {
  return kind == GateKind::Inhibit ? 1 : 2;
}

struct GateSpec {
  GateKind kind = GateKind::Or;
  std::vector<std::string> children;
  /// Conditioning event id; Inhibit only.
  std::optional<std::string> condition;

  friend bool operator==(const GateSpec&, const GateSpec&) = default;
};

struct EventNode {
  std::string id;
  std::string label;
  EventKind kind = EventKind::Basic;
  /// Name of the referenced tree; TransferIn only.
  std::string transfer_target;
  std::optional<GateSpec> gate;
  /// Diagram name of the gate node, kept for round trips (e.g. "MainOR").
  std::optional<std::string> gate_alias;
  std::optional<double> probability;

  bool has_children() const { return gate && !gate->children.empty(); }

  friend bool operator==(const EventNode&, const EventNode&) = default;
};

struct FaultTree {
  std::string title;
  std::string top;
  std::map<std::string, EventNode, std::less<>> nodes;
  GateKind default_gate = GateKind::Or;

  const EventNode* find(std::string_view id) const {
    auto it = nodes.find(id);
    return it == nodes.end() ? nullptr : &it->second;
  }

  const EventNode& at(std::string_view id) const { return nodes.find(id)->second; }

  /// Inserts or replaces the node keyed by its id.
  EventNode& put(EventNode node) {
    auto id = node.id;
    return nodes.insert_or_assign(std::move(id), std::move(node)).first->second;
  }

  friend bool operator==(const FaultTree&, const FaultTree&) = default;
};

/// Equality on logical structure: ids, labels, kinds, gates and transfer
/// targets. Presentation data (gate_alias) and annotations (probability)
/// are ignored.
inline bool structurally_equal(const FaultTree& a, const FaultTree& b) {
  if (a.title != b.title || a.top != b.top || a.default_gate != b.default_gate ||
      a.nodes.size() != b.nodes.size()) {
    return false;
  }
  return std::equal(a.nodes.begin(), a.nodes.end(), b.nodes.begin(), [](auto& x, auto& y) {
    const EventNode& l = x.second;
    const EventNode& r = y.second;
    return l.id == r.id && l.label == r.label && l.kind == r.kind &&
           l.transfer_target == r.transfer_target && l.gate == r.gate;
  });
}

/// Ids in depth-first preorder from the top (children, then condition),
/// followed by any unreachable nodes in id order.
inline std::vector<std::string> preorder_ids(const FaultTree& tree) {
  std::vector<std::string> order;
  std::map<std::string_view, bool, std::less<>> seen;
  std::vector<std::string_view> stack;
  if (tree.find(tree.top)) stack.push_back(tree.top);
  while (!stack.empty()) {
    auto id = stack.back();
    stack.pop_back();
    if (seen[id]) continue;
    seen[id] = true;
    const EventNode* node = tree.find(id);
    order.emplace_back(id);
    if (!node || !node->gate) continue;
    if (node->gate->condition && tree.find(*node->gate->condition)) {
      stack.push_back(*node->gate->condition);
    }
    for (auto it = node->gate->children.rbegin(); it != node->gate->children.rend(); ++it) {
      if (tree.find(*it)) stack.push_back(*it);
    }
  }
  for (const auto& [id, node] : tree.nodes) {
    if (!seen[id]) order.push_back(id);
  }
  return order;
}

}  // namespace fta
