/// @file validate.hpp
/// Structural validation of fault trees.
#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fta/core/errors.hpp"
#include "fta/core/types.hpp"
#include "fta/diagnostic.hpp"

namespace fta {

namespace detail {

inline bool is_token(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

inline Diagnostic finding(std::string node, std::string rule, Severity severity = Severity::Error) {
  Diagnostic d;
  d.offending_text = node;
  d.node = std::move(node);
  d.message = std::move(rule);
  d.severity = severity;
  return d;
}

}  // namespace detail

/// Checks every node, gate and tree invariant. Returns one finding per
/// violation; an empty list means the tree is valid. Single-input AND/OR/
/// XOR/PAND gates are reported as warnings since they act as pass-throughs.
inline std::vector<Diagnostic> validate_tree(const FaultTree& tree) {
  using detail::finding;
  std::vector<Diagnostic> out;

  std::set<std::string, std::less<>> used_as_child;
  std::set<std::string, std::less<>> used_as_condition;

  for (const auto& [key, node] : tree.nodes) {
    if (key != node.id || !detail::is_token(node.id)) out.push_back(finding(key, "invalid-id"));
    if (node.label.empty()) out.push_back(finding(key, "empty-label"));
    if (node.probability && !(*node.probability >= 0.0 && *node.probability <= 1.0)) {
      out.push_back(finding(key, "probability-range"));
    }
    if (node.kind == EventKind::TransferIn && node.transfer_target.empty()) {
      out.push_back(finding(key, "transfer-target"));
    }
    if (node.kind != EventKind::TransferIn && !node.transfer_target.empty()) {
      out.push_back(finding(key, "transfer-target"));
    }
    if (node.kind == EventKind::TopEvent && key != tree.top) {
      out.push_back(finding(key, "multiple-top"));
    }
    if (node.kind == EventKind::Intermediate && !node.has_children()) {
      out.push_back(finding(key, "missing-gate"));
    }
    if (!node.gate) continue;

    const GateSpec& gate = *node.gate;
    if (!may_have_gate(node.kind)) out.push_back(finding(key, "leaf-has-gate"));
    if (gate.children.empty()) {
      out.push_back(finding(key, "empty-gate"));
    } else if (gate.kind == GateKind::Inhibit && gate.children.size() != 1) {
      out.push_back(finding(key, "arity"));
    } else if (gate.children.size() < min_inputs(gate.kind)) {
      out.push_back(finding(key, "arity", Severity::Warning));
    }

    std::set<std::string_view> seen;
    for (const auto& child : gate.children) {
      if (!seen.insert(child).second) out.push_back(finding(key, "duplicate-child"));
      const EventNode* target = tree.find(child);
      if (!target) {
        out.push_back(finding(key, "unknown-reference"));
      } else if (target->kind == EventKind::Conditioning) {
        out.push_back(finding(child, "conditioning-misplaced"));
      }
      used_as_child.insert(child);
    }

    if (gate.kind == GateKind::Inhibit) {
      if (!gate.condition) {
        out.push_back(finding(key, "inhibit-condition"));
      } else if (const EventNode* cond = tree.find(*gate.condition); !cond) {
        out.push_back(finding(key, "unknown-reference"));
      } else if (cond->kind != EventKind::Conditioning) {
        out.push_back(finding(key, "inhibit-condition"));
      } else {
        used_as_condition.insert(*gate.condition);
      }
    } else if (gate.condition) {
      out.push_back(finding(key, "condition-not-allowed"));
    }
  }

  const EventNode* top = tree.find(tree.top);
  if (!top) {
    out.push_back(finding(tree.top, "missing-top"));
    return out;
  }
  if (top->kind != EventKind::TopEvent) out.push_back(finding(tree.top, "top-kind"));

  // Cycle and reachability search over child and condition references.
  enum class Mark { White, Grey, Black };
  std::map<std::string_view, Mark, std::less<>> mark;
  std::set<std::pair<std::string, std::string>> back_edges;
  struct Frame {
    std::string_view id;
    std::vector<std::string_view> next;
    std::size_t pos = 0;
  };
  auto successors = [&](std::string_view id) {
    std::vector<std::string_view> next;
    const EventNode* node = tree.find(id);
    if (node && node->gate) {
      for (const auto& c : node->gate->children) {
        if (tree.find(c)) next.push_back(c);
      }
      if (node->gate->condition && tree.find(*node->gate->condition)) {
        next.push_back(*node->gate->condition);
      }
    }
    return next;
  };
  std::vector<Frame> stack;
  stack.push_back({tree.top, successors(tree.top)});
  mark[tree.top] = Mark::Grey;
  while (!stack.empty()) {
    Frame& frame = stack.back();
    if (frame.pos == frame.next.size()) {
      mark[frame.id] = Mark::Black;
      stack.pop_back();
      continue;
    }
    auto child = frame.next[frame.pos++];
    auto& m = mark[child];
    if (m == Mark::Grey) {
      back_edges.emplace(std::string(frame.id), std::string(child));
    } else if (m == Mark::White) {
      m = Mark::Grey;
      stack.push_back({child, successors(child)});
    }
  }
  for (const auto& [parent, child] : back_edges) {
    auto d = finding(parent, "cycle");
    d.offending_text = parent + " -> " + child;
    out.push_back(std::move(d));
  }
  for (const auto& [key, node] : tree.nodes) {
    if (mark[key] == Mark::White) out.push_back(finding(key, "orphan"));
  }
  return out;
}

/// Throws InvalidTree when validation reports any Error finding.
inline void require_valid(const FaultTree& tree) {
  auto findings = validate_tree(tree);
  if (has_errors(findings)) throw InvalidTree(std::move(findings));
}

}  // namespace fta
