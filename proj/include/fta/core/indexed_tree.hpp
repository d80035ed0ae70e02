/// @file indexed_tree.hpp
/// Integer-indexed view of a valid tree for the analysis algorithms.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "fta/core/errors.hpp"
#include "fta/core/types.hpp"
#include "fta/core/validate.hpp"

namespace fta::detail {

struct IndexedTree {
  std::vector<const EventNode*> nodes;  // reachable nodes, preorder
  std::map<std::string, int, std::less<>> index;
  std::vector<std::vector<int>> children;
  std::vector<int> condition;  // -1 when absent
  std::vector<int> variables;  // Basic/External/Undeveloped/Conditioning, in id order
  int top = 0;

  bool is_gate(int i) const { return nodes[i]->has_children(); }
  GateKind gate_kind(int i) const { return nodes[i]->gate->kind; }

  /// Number of distinct parents (children and condition references).
  std::vector<int> parent_counts() const {
    std::vector<int> counts(nodes.size(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (int c : children[i]) ++counts[c];
      if (condition[i] >= 0) ++counts[condition[i]];
    }
    return counts;
  }
};

/// Builds the view. Validates first and throws InvalidTree on errors;
/// throws UnresolvedTransfer when a reachable TransferIn remains.
inline IndexedTree index_tree(const FaultTree& tree) {
  require_valid(tree);
  IndexedTree out;
  for (const auto& id : preorder_ids(tree)) {
    out.index.emplace(id, static_cast<int>(out.nodes.size()));
    out.nodes.push_back(&tree.at(id));
  }
  out.children.resize(out.nodes.size());
  out.condition.assign(out.nodes.size(), -1);
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    const EventNode& node = *out.nodes[i];
    if (node.kind == EventKind::TransferIn) throw UnresolvedTransfer(node.transfer_target);
    if (!node.gate) continue;
    for (const auto& c : node.gate->children) out.children[i].push_back(out.index.at(c));
    if (node.gate->condition) out.condition[i] = out.index.at(*node.gate->condition);
  }
  for (const auto& [id, i] : out.index) {
    if (is_variable(out.nodes[i]->kind)) out.variables.push_back(i);
  }
  out.top = 0;
  return out;
}

}  // namespace fta::detail
