/// @file emit.hpp
/// Writes fault trees as PlantUML in two styles: Flat (rectangles joined
/// by `--`, gates implied by edge labels) and Gated (one `circle` per gate
/// between an event and its inputs).
#pragma once

#include <set>
#include <string>
#include <vector>

#include "fta/core/errors.hpp"
#include "fta/core/types.hpp"
#include "fta/core/validate.hpp"
#include "fta/puml/parse.hpp"

namespace fta::puml {

enum class Style { Flat, Gated };

namespace detail {

inline std::string_view keyword_for(const EventNode& node) {
  switch (node.kind) {
    case EventKind::Undeveloped: return "card";
    case EventKind::External: return "cloud";
    case EventKind::TransferIn:
    case EventKind::TransferOut: return "file";
    default: return "rectangle";
  }
}

inline void check_representable(const FaultTree& tree) {
  std::vector<Diagnostic> findings;
  for (const auto& [id, node] : tree.nodes) {
    if (node.label.find_first_of("\"\n") != std::string::npos) {
      findings.push_back(fta::detail::finding(id, "unrepresentable-label"));
    }
    if (node.transfer_target.find("]]") != std::string::npos) {
      findings.push_back(fta::detail::finding(id, "unrepresentable-target"));
    }
  }
  if (tree.title.find('\n') != std::string::npos) {
    findings.push_back(fta::detail::finding(tree.top, "unrepresentable-title"));
  }
  if (!findings.empty()) throw InvalidTree(std::move(findings));
}

inline std::string declaration(const EventNode& node) {
  std::string line = std::string(keyword_for(node)) + " \"" + node.label + "\" as " + node.id;
  if (node.kind == EventKind::TransferIn) line += " [[" + node.transfer_target + "]]";
  return line + "\n";
}

inline std::string header(const FaultTree& tree) {
  return tree.title.empty() ? "@startuml\n" : "@startuml " + tree.title + "\n";
}

}  // namespace detail

/// Deterministic PlantUML for a valid tree. Nodes are written in preorder
/// from the top. Throws InvalidTree when validation reports errors or a
/// label cannot be written (it contains a quote or a newline).
inline std::string emit_plantuml(const FaultTree& tree, Style style) {
  require_valid(tree);
  detail::check_representable(tree);
  const auto order = preorder_ids(tree);

  std::set<GateKind> kinds;
  for (const auto& id : order) {
    if (const auto& n = tree.at(id); n.has_children()) kinds.insert(n.gate->kind);
  }

  std::string out = detail::header(tree);

  if (style == Style::Flat) {
    out += "skinparam packageStyle rectangle\nskinparam linetype ortho\n\n";
    for (const auto& id : order) out += detail::declaration(tree.at(id));
    for (const auto& id : order) {
      const EventNode& node = tree.at(id);
      if (!node.gate) continue;
      out += "\n";
      const bool labeled = node.gate->kind != tree.default_gate;
      for (const auto& child : node.gate->children) {
        out += id + " -- " + child;
        if (labeled) out += " : " + std::string(gate_label(node.gate->kind));
        out += "\n";
      }
      if (node.gate->condition) out += id + " -- " + *node.gate->condition + " : COND\n";
    }
    if (!kinds.empty()) {
      out += "\nnote bottom of " + tree.top + "\n";
      if (kinds == std::set{GateKind::Or} && tree.default_gate == GateKind::Or) {
        out += "  All connections represent OR gates\n"
               "  Any lower-level event can cause\n"
               "  the higher-level failure\n";
      } else {
        out += "  Unlabeled connections represent " + std::string(gate_label(tree.default_gate)) +
               " gates\n"
               "  Labeled connections name their gate\n";
      }
      out += "end note\n";
    }
    out += "\n@enduml\n";
    return out;
  }

  // Gated: circle aliases keep gate_alias when usable, else "<parent><KIND>".
  std::set<std::string> taken;
  for (const auto& [id, node] : tree.nodes) taken.insert(id);
  std::map<std::string, std::string> alias_of;
  for (const auto& id : order) {
    const EventNode& node = tree.at(id);
    if (!node.gate) continue;
    std::string base = node.gate_alias && fta::detail::is_token(*node.gate_alias)
                           ? *node.gate_alias
                           : id + std::string(gate_label(node.gate->kind));
    std::string alias = base;
    for (int n = 2; taken.count(alias); ++n) alias = base + "_" + std::to_string(n);
    taken.insert(alias);
    alias_of[id] = alias;
  }

  out += "\nskinparam rectangle {\n    roundCorner 25\n}\n\n";
  for (const auto& id : order) out += detail::declaration(tree.at(id));
  if (!alias_of.empty()) {
    out += "\n";
    for (const auto& id : order) {
      if (alias_of.count(id)) out += "circle " + alias_of[id] + "\n";
    }
  }
  for (const auto& id : order) {
    const EventNode& node = tree.at(id);
    if (!node.gate) continue;
    const auto& alias = alias_of[id];
    out += "\n" + id + " -down-> " + alias + " : " + std::string(gate_label(node.gate->kind)) + "\n";
    for (const auto& child : node.gate->children) out += alias + " -down-> " + child + "\n";
    if (node.gate->condition) out += alias + " -down-> " + *node.gate->condition + " : COND\n";
  }
  if (!kinds.empty()) {
    out += "\nnote right of " + tree.top + "\n";
    for (auto kind : {GateKind::Or, GateKind::And, GateKind::Xor, GateKind::PriorityAnd, GateKind::Inhibit}) {
      if (!kinds.count(kind)) continue;
      auto label = std::string(gate_label(kind));
      out += "  Circles labeled '" + label + "' represent " + label + " gates\n";
    }
    out += "end note\n";
  }
  out += "\n@enduml\n";
  return out;
}

}  // namespace fta::puml
