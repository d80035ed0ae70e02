/// @file json_io.hpp
/// Canonical JSON persistence of fault trees.
///
///     {"title": ..., "top": ..., "default_gate": "Or",
///      "nodes": [{"id", "label", "kind", "target"?,
///                 "gate": {"kind", "children", "condition"?}?,
///                 "gate_alias"?, "probability"?}]}
///
/// "target" carries the referenced tree title of a TransferIn event.
/// Unknown fields are rejected.
#pragma once

#include "json.hpp"

#include <set>
#include <string>
#include <string_view>

#include "fta/core/types.hpp"
#include "fta/parse_result.hpp"

namespace fta {

inline nlohmann::ordered_json to_json(const FaultTree& tree) {
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (const auto& id : preorder_ids(tree)) {
    const EventNode& node = tree.at(id);
    nlohmann::ordered_json n;
    n["id"] = node.id;
    n["label"] = node.label;
    n["kind"] = to_string(node.kind);
    if (node.kind == EventKind::TransferIn || !node.transfer_target.empty()) {
      n["target"] = node.transfer_target;
    }
    if (node.gate) {
      nlohmann::ordered_json g;
      g["kind"] = to_string(node.gate->kind);
      g["children"] = node.gate->children;
      if (node.gate->condition) g["condition"] = *node.gate->condition;
      n["gate"] = std::move(g);
    }
    if (node.gate_alias) n["gate_alias"] = *node.gate_alias;
    if (node.probability) n["probability"] = *node.probability;
    nodes.push_back(std::move(n));
  }
  nlohmann::ordered_json doc;
  doc["title"] = tree.title;
  doc["top"] = tree.top;
  doc["default_gate"] = to_string(tree.default_gate);
  doc["nodes"] = std::move(nodes);
  return doc;
}

inline std::string write_tree_json(const FaultTree& tree) { return to_json(tree).dump(2) + "\n"; }

namespace detail {

class JsonReader {
 public:
  explicit JsonReader(std::string_view source) : lines_(fta::detail::split_lines(source)) {}

  /// Reports at the first line containing `needle` (line 1 when absent).
  void report(std::string rule, std::string_view needle, std::string node = {}) {
    int line = 1;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      if (!needle.empty() && lines_[i].find(needle) != std::string::npos) {
        line = static_cast<int>(i) + 1;
        break;
      }
    }
    report_at(std::move(rule), line, std::move(node));
  }

  void report_at(std::string rule, int line, std::string node = {}) {
    Diagnostic d;
    d.diagram_line = d.file_line = line;
    if (line >= 1 && static_cast<std::size_t>(line) <= lines_.size()) d.offending_text = lines_[line - 1];
    d.message = std::move(rule);
    d.node = std::move(node);
    diagnostics.push_back(std::move(d));
  }

  bool check_fields(const nlohmann::json& obj, std::initializer_list<std::string_view> allowed,
                    std::initializer_list<std::string_view> required, std::string_view where) {
    bool ok = true;
    if (!obj.is_object()) {
      report("type-mismatch", where);
      return false;
    }
    for (const auto& [key, value] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        report("unknown-field", "\"" + key + "\"");
        ok = false;
      }
    }
    for (auto key : required) {
      if (!obj.contains(key)) {
        report("missing-field:" + std::string(key), where);
        ok = false;
      }
    }
    return ok;
  }

  std::optional<std::string> string_field(const nlohmann::json& obj, std::string_view key) {
    auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    if (!it->is_string()) {
      report("type-mismatch:" + std::string(key), "\"" + std::string(key) + "\"");
      return std::nullopt;
    }
    return it->get<std::string>();
  }

  std::vector<Diagnostic> diagnostics;

 private:
  std::vector<std::string> lines_;
};

}  // namespace detail

/// Reads the canonical JSON form. Structural invariants are not checked
/// here; run validate_tree on the result.
inline ParseResult read_tree_json(std::string_view text) {
  detail::JsonReader reader(text);
  ParseResult result;

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto prefix = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
    int line = 1 + static_cast<int>(std::count(prefix.begin(), prefix.end(), '\n'));
    if (!prefix.empty() && prefix.back() == '\n' && e.byte > text.size()) --line;
    reader.report_at("json-syntax", line);
    result.diagnostics = std::move(reader.diagnostics);
    return result;
  }

  FaultTree tree;
  if (reader.check_fields(doc, {"title", "top", "default_gate", "nodes"}, {"top", "nodes"}, "{")) {
    tree.title = reader.string_field(doc, "title").value_or("");
    tree.top = reader.string_field(doc, "top").value_or("");
    if (auto g = reader.string_field(doc, "default_gate")) {
      if (auto kind = parse_gate_kind(*g)) {
        tree.default_gate = *kind;
      } else {
        reader.report("unknown-kind", "\"default_gate\"");
      }
    }
    const auto& nodes = doc["nodes"];
    if (!nodes.is_array()) reader.report("type-mismatch:nodes", "\"nodes\"");
    for (const auto& n : nodes.is_array() ? nodes : nlohmann::json::array()) {
      if (!reader.check_fields(n, {"id", "label", "kind", "target", "gate", "gate_alias", "probability"},
                               {"id", "label", "kind"}, "\"nodes\"")) {
        continue;
      }
      EventNode node;
      node.id = reader.string_field(n, "id").value_or("");
      const std::string id_needle = "\"" + node.id + "\"";
      node.label = reader.string_field(n, "label").value_or("");
      auto kind_text = reader.string_field(n, "kind").value_or("");
      if (auto kind = parse_event_kind(kind_text)) {
        node.kind = *kind;
      } else {
        reader.report("unknown-kind", "\"" + kind_text + "\"", node.id);
      }
      node.transfer_target = reader.string_field(n, "target").value_or("");
      node.gate_alias = reader.string_field(n, "gate_alias");
      if (auto p = n.find("probability"); p != n.end()) {
        if (p->is_number()) {
          node.probability = p->get<double>();
        } else {
          reader.report("type-mismatch:probability", id_needle, node.id);
        }
      }
      if (auto g = n.find("gate"); g != n.end()) {
        if (reader.check_fields(*g, {"kind", "children", "condition"}, {"kind", "children"}, id_needle)) {
          GateSpec gate;
          auto gk = reader.string_field(*g, "kind").value_or("");
          if (auto kind = parse_gate_kind(gk)) {
            gate.kind = *kind;
          } else {
            reader.report("unknown-kind", "\"" + gk + "\"", node.id);
          }
          const auto& children = (*g)["children"];
          if (children.is_array() &&
              std::all_of(children.begin(), children.end(), [](auto& c) { return c.is_string(); })) {
            gate.children = children.get<std::vector<std::string>>();
          } else {
            reader.report("type-mismatch:children", id_needle, node.id);
          }
          gate.condition = reader.string_field(*g, "condition");
          node.gate = std::move(gate);
        }
      }
      if (tree.find(node.id)) {
        reader.report("duplicate-id", id_needle, node.id);
        continue;
      }
      tree.put(std::move(node));
    }
  }

  result.diagnostics = std::move(reader.diagnostics);
  if (!has_errors(result.diagnostics)) result.tree = std::move(tree);
  return result;
}

}  // namespace fta
