/// @file parse.hpp
/// Reconstructs a fault tree from PlantUML text.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fta/core/types.hpp"
#include "fta/core/validate.hpp"
#include "fta/parse_result.hpp"
#include "fta/puml/document.hpp"

namespace fta::puml {

/// Gate kind named by an edge label or by a circle alias suffix.
inline std::optional<GateKind> gate_kind_from_label(std::string_view upper_label) {
  if (upper_label == "AND") return GateKind::And;
  if (upper_label == "OR") return GateKind::Or;
  if (upper_label == "XOR") return GateKind::Xor;
  if (upper_label == "PAND") return GateKind::PriorityAnd;
  if (upper_label == "INHIBIT") return GateKind::Inhibit;
  return std::nullopt;
}

inline constexpr std::string_view gate_label(GateKind kind) {
  switch (kind) {
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    case GateKind::Xor: return "XOR";
    case GateKind::PriorityAnd: return "PAND";
    case GateKind::Inhibit: return "INHIBIT";
  }
  return "?";
}

/// Longest matching suffix wins, so "PAND" is not read as "AND" and "XOR"
/// not as "OR".
inline std::optional<GateKind> gate_kind_from_alias(std::string_view alias) {
  auto up = detail::upper(alias);
  for (auto kind : {GateKind::Inhibit, GateKind::PriorityAnd, GateKind::Xor, GateKind::And,
                    GateKind::Or}) {
    auto suffix = gate_label(kind);
    if (up.size() >= suffix.size() && up.compare(up.size() - suffix.size(), suffix.size(), suffix) == 0) {
      return kind;
    }
  }
  return std::nullopt;
}

/// Turns a display label into an id token: runs of other characters
/// collapse to '_'.
inline std::string id_from_label(std::string_view label) {
  std::string out;
  bool gap = false;
  for (char c : label) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      if (gap && !out.empty()) out += '_';
      out += c;
      gap = false;
    } else {
      gap = true;
    }
  }
  return out.empty() ? "node" : out;
}

namespace detail {

struct Vertex {
  std::string id;
  std::string label;
  std::optional<Keyword> keyword;  // nullopt for implicit nodes
  std::optional<std::string> link;
  int line = 0;  // first appearance, 0-based file index
  bool is_gate = false;

  // event vertices
  std::vector<int> direct_children;
  std::vector<int> gate_vertices;
  std::vector<int> conditions;
  std::optional<GateKind> edge_kind;  // from labels on direct edges
  int parents = 0;
  bool condition_target = false;

  // gate vertices
  std::vector<int> gate_parents;
  std::optional<GateKind> incoming_kind;
  std::vector<int> outputs;
};

class TreeBuilder {
 public:
  TreeBuilder(const PumlDocument& doc, GateKind default_gate) : doc_(doc), default_gate_(default_gate) {}

  ParseResult build() {
    register_declarations();
    for (const auto& st : doc_.statements) {
      if (const auto* e = std::get_if<Edge>(&st)) add_edge(*e);
      if (const auto* n = std::get_if<NoteBlock>(&st)) check_note(*n);
    }
    ParseResult result;
    if (diagnostics_.empty()) assemble(result);
    for (auto& d : diagnostics_) result.diagnostics.push_back(std::move(d));
    std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.file_line < b.file_line; });
    if (has_errors(result.diagnostics)) result.tree.reset();
    return result;
  }

 private:
  void error(int line, std::string rule, std::string node = {}) {
    auto d = doc_.diagnostic(line, std::move(rule));
    d.node = std::move(node);
    diagnostics_.push_back(std::move(d));
  }

  bool id_taken(const std::string& id) const { return by_alias_.count(id) || implicit_ids_.count(id); }

  std::string fresh_id(const std::string& base) {
    std::string id = base;
    for (int n = 2; id_taken(id); ++n) id = base + "_" + std::to_string(n);
    implicit_ids_.insert(id);
    return id;
  }

  void declare(const NodeDecl& decl, const std::string& alias) {
    if (by_alias_.count(alias)) {
      error(decl.line, "duplicate-alias", alias);
      return;
    }
    Vertex v;
    v.id = alias;
    v.label = decl.label;
    v.keyword = decl.keyword;
    v.link = decl.link;
    v.line = decl.line;
    v.is_gate = decl.keyword == Keyword::Circle;
    by_alias_[alias] = static_cast<int>(vertices_.size());
    vertices_.push_back(std::move(v));
  }

  /// Aliased declarations first, so ids derived from labels of unaliased
  /// ones cannot shadow an alias declared further down.
  void register_declarations() {
    std::vector<const NodeDecl*> unaliased;
    for (const auto& st : doc_.statements) {
      const NodeDecl* d = std::get_if<NodeDecl>(&st);
      if (const auto* p = std::get_if<PackageBlock>(&st)) d = &p->decl;
      if (!d) continue;
      if (d->alias.empty()) {
        unaliased.push_back(d);
      } else {
        declare(*d, d->alias);
      }
    }
    for (const NodeDecl* d : unaliased) {
      if (labeled_.count(d->label)) {
        error(d->line, "duplicate-alias", d->label);
        continue;
      }
      auto id = fresh_id(id_from_label(d->label));
      declare(*d, id);
      labeled_[d->label] = by_alias_.at(id);
    }
  }

  std::optional<int> resolve(const Endpoint& ep, int line) {
    switch (ep.form) {
      case Endpoint::Form::Alias:
        if (auto it = by_alias_.find(ep.text); it != by_alias_.end()) return it->second;
        error(line, "undeclared-alias", ep.text);
        return std::nullopt;
      case Endpoint::Form::Quoted:
        if (auto it = labeled_.find(ep.text); it != labeled_.end()) return it->second;
        [[fallthrough]];
      case Endpoint::Form::Parenthesized: {
        if (ep.text.empty()) {
          error(line, "empty-label");
          return std::nullopt;
        }
        if (auto it = implicit_by_label_.find(ep.text); it != implicit_by_label_.end()) return it->second;
        Vertex v;
        v.id = fresh_id(id_from_label(ep.text));
        v.label = ep.text;
        v.line = line;
        int index = static_cast<int>(vertices_.size());
        vertices_.push_back(std::move(v));
        implicit_by_label_[ep.text] = index;
        return index;
      }
    }
    return std::nullopt;
  }

  void add_edge(const Edge& e) {
    auto from = resolve(e.from, e.line);
    auto to = resolve(e.to, e.line);
    if (!from || !to) return;
    Vertex& src = vertices_[*from];
    Vertex& dst = vertices_[*to];
    const bool cond = e.label == "COND";
    std::optional<GateKind> kind = e.label ? gate_kind_from_label(*e.label) : std::nullopt;

    if (src.is_gate && dst.is_gate) {
      error(e.line, "gate-to-gate", src.id);
    } else if (dst.is_gate) {
      if (cond) {
        error(e.line, "misplaced-condition", dst.id);
        return;
      }
      dst.gate_parents.push_back(*from);
      if (kind) dst.incoming_kind = kind;
      src.gate_vertices.push_back(*to);
    } else if (src.is_gate) {
      if (e.label && !cond) {
        error(e.line, "misplaced-gate-label", src.id);
        return;
      }
      src.outputs.push_back(*to);
      if (cond) dst.condition_target = true;
      if (cond) condition_edges_.insert({*from, *to});
      ++dst.parents;
    } else {
      ++dst.parents;
      if (cond) {
        src.conditions.push_back(*to);
        dst.condition_target = true;
        return;
      }
      src.direct_children.push_back(*to);
      if (kind) {
        if (src.edge_kind && *src.edge_kind != *kind) {
          error(e.line, "conflicting-gate-labels", src.id);
        }
        src.edge_kind = kind;
      }
    }
  }

  void check_note(const NoteBlock& note) {
    if (!by_alias_.count(note.target)) error(note.line, "undeclared-alias", note.target);
  }

  EventKind leaf_kind(const Vertex& v) const {
    if (v.keyword == Keyword::Card) return EventKind::Undeveloped;
    if (v.keyword == Keyword::Cloud) return EventKind::External;
    if (v.keyword == Keyword::File) return v.link ? EventKind::TransferIn : EventKind::TransferOut;
    if (v.condition_target) return EventKind::Conditioning;
    return EventKind::Basic;
  }

  bool is_leaf_keyword(const Vertex& v) const {
    return v.keyword == Keyword::Card || v.keyword == Keyword::Cloud || v.keyword == Keyword::File;
  }

  void assemble(ParseResult& result) {
    FaultTree tree;
    tree.title = doc_.title;
    tree.default_gate = default_gate_;

    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      Vertex& g = vertices_[i];
      if (!g.is_gate) continue;
      if (g.gate_parents.size() != 1) error(g.line, "gate-parents", g.id);
    }

    std::vector<int> roots;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const Vertex& v = vertices_[i];
      if (v.is_gate) continue;
      EventNode node;
      node.id = v.id;
      node.label = v.label;
      if (v.link) node.transfer_target = *v.link;

      GateSpec gate;
      bool has_gate = false;
      if (!v.gate_vertices.empty()) {
        if (v.gate_vertices.size() > 1) error(vertices_[v.gate_vertices[1]].line, "multiple-gates", v.id);
        if (!v.direct_children.empty() || !v.conditions.empty()) error(v.line, "mixed-gate-children", v.id);
        const Vertex& g = vertices_[v.gate_vertices.front()];
        gate.kind = g.incoming_kind.value_or(gate_kind_from_alias(g.id).value_or(default_gate_));
        for (int out : g.outputs) {
          if (condition_edges_.count({v.gate_vertices.front(), out})) {
            if (gate.condition) error(g.line, "multiple-conditions", g.id);
            gate.condition = vertices_[out].id;
          } else {
            gate.children.push_back(vertices_[out].id);
          }
        }
        node.gate_alias = g.id;
        has_gate = true;
      } else if (!v.direct_children.empty() || !v.conditions.empty()) {
        gate.kind = v.edge_kind.value_or(default_gate_);
        for (int c : v.direct_children) gate.children.push_back(vertices_[c].id);
        if (v.conditions.size() > 1) error(v.line, "multiple-conditions", v.id);
        if (!v.conditions.empty()) gate.condition = vertices_[v.conditions.front()].id;
        has_gate = true;
      }

      if (has_gate) {
        node.kind = is_leaf_keyword(v) ? leaf_kind(v) : EventKind::Intermediate;
        node.gate = std::move(gate);
      } else {
        node.kind = leaf_kind(v);
      }
      if (v.parents == 0 && !v.condition_target) roots.push_back(static_cast<int>(i));
      tree.put(std::move(node));
    }

    if (roots.empty()) {
      error(doc_.start_index, "no-top-event");
    } else {
      std::stable_sort(roots.begin(), roots.end(),
                       [&](int a, int b) { return vertices_[a].line < vertices_[b].line; });
      const Vertex& top = vertices_[roots.front()];
      tree.top = top.id;
      EventNode& node = tree.nodes.at(top.id);
      if (!is_leaf_keyword(top)) node.kind = EventKind::TopEvent;
      for (std::size_t k = 1; k < roots.size(); ++k) {
        error(vertices_[roots[k]].line, "multiple-top-events", vertices_[roots[k]].id);
      }
    }
    if (!diagnostics_.empty()) return;

    // Structural findings are reported at the node's first appearance.
    std::map<std::string, int, std::less<>> line_of;
    for (const auto& v : vertices_) {
      if (!v.is_gate) line_of[v.id] = v.line;
    }
    for (const auto& f : validate_tree(tree)) {
      auto it = line_of.find(f.node);
      auto d = doc_.diagnostic(it == line_of.end() ? doc_.start_index : it->second, f.message, f.severity);
      d.node = f.node;
      result.diagnostics.push_back(std::move(d));
    }
    result.tree = std::move(tree);
  }

  const PumlDocument& doc_;
  GateKind default_gate_;
  std::vector<Vertex> vertices_;
  std::map<std::string, int, std::less<>> by_alias_;
  std::map<std::string, int, std::less<>> labeled_;  // unaliased declarations
  std::map<std::string, int, std::less<>> implicit_by_label_;
  std::set<std::string, std::less<>> implicit_ids_;
  std::set<std::pair<int, int>> condition_edges_;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace detail

/// Parses PlantUML text into a fault tree.
///
/// Edge sources are parents. Packages become intermediate events named by
/// their label. A `circle` is a gate owned by its single parent event; its
/// kind comes from the label on the incoming edge (`: AND`, `: OR`, ...)
/// or else from its alias suffix (MainOR, HardwareAND), or else from
/// `default_gate`. Events whose direct edges carry a gate label get that
/// gate; unlabeled ones get `default_gate`. `: COND` marks the condition
/// of an INHIBIT gate. `card`, `cloud` and `file` declare undeveloped,
/// external and transfer events (`file ... [[Tree]]` transfers in).
/// Childless events are basic; the single parentless event is the top.
///
/// Line-level errors stop the reconstruction; otherwise reconstruction
/// errors and validate_tree findings are reported at the line where the
/// node first appears.
inline ParseResult parse_plantuml(std::string_view source, GateKind default_gate = GateKind::Or) {
  auto [doc, diagnostics] = read_document(source);
  if (has_errors(diagnostics)) return ParseResult{std::nullopt, std::move(diagnostics)};
  auto result = detail::TreeBuilder(doc, default_gate).build();
  diagnostics.insert(diagnostics.end(), result.diagnostics.begin(), result.diagnostics.end());
  result.diagnostics = std::move(diagnostics);
  return result;
}

}  // namespace fta::puml
