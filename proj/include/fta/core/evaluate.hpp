/// @file evaluate.hpp
/// Boolean evaluation of the top event under a leaf assignment.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "fta/core/indexed_tree.hpp"

namespace fta {

using Assignment = std::map<std::string, bool, std::less<>>;

namespace detail {

/// Evaluates node `i` given truth values for variable nodes in `value`
/// (indexed like `t.nodes`). Gate results are memoized in `value` too;
/// `done` tracks which entries are final.
inline bool evaluate_node(const IndexedTree& t, int i, std::vector<char>& value,
                          std::vector<char>& done) {
  if (done[i]) return value[i];
  bool result = false;
  if (t.is_gate(i)) {
    const auto& kids = t.children[i];
    switch (t.gate_kind(i)) {
      case GateKind::Or:
        for (int c : kids) result = evaluate_node(t, c, value, done) || result;
        break;
      case GateKind::And:
      case GateKind::PriorityAnd:
        result = true;
        for (int c : kids) result = evaluate_node(t, c, value, done) && result;
        break;
      case GateKind::Xor: {
        int count = 0;
        for (int c : kids) count += evaluate_node(t, c, value, done) ? 1 : 0;
        result = count == 1;
        break;
      }
      case GateKind::Inhibit:
        result = evaluate_node(t, kids.front(), value, done) &&
                 evaluate_node(t, t.condition[i], value, done);
        break;
    }
  }
  // Non-gate, non-variable nodes (TransferOut, a lone TopEvent) are false.
  value[i] = result;
  done[i] = 1;
  return result;
}

/// Evaluates the top; `variable_values` holds the truth of each variable node.
inline bool evaluate_with(const IndexedTree& t, const std::vector<char>& variable_values) {
  std::vector<char> value = variable_values;
  std::vector<char> done(t.nodes.size(), 0);
  for (int v : t.variables) done[v] = 1;
  return evaluate_node(t, t.top, value, done);
}

}  // namespace detail

/// Evaluates the top event. OR fires on any input, AND and PAND on all,
/// XOR on exactly one, INHIBIT on its input together with its condition.
/// PAND has no timing model here and behaves as AND.
///
/// Every Basic/External/Undeveloped/Conditioning event needs an entry in
/// `assignment`; a single event tree whose top is a leaf-like TopEvent
/// evaluates to false. Throws MissingAssignment, UnresolvedTransfer or
/// InvalidTree.
inline bool evaluate_boolean(const FaultTree& tree, const Assignment& assignment) {
  auto t = detail::index_tree(tree);
  std::vector<char> values(t.nodes.size(), 0);
  for (int v : t.variables) {
    auto it = assignment.find(t.nodes[v]->id);
    if (it == assignment.end()) throw MissingAssignment(t.nodes[v]->id);
    values[v] = it->second;
  }
  return detail::evaluate_with(t, values);
}

}  // namespace fta
