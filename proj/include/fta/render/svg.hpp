/// @file svg.hpp
/// Standalone SVG output for a laid-out fault tree.
#pragma once

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "fta/core/errors.hpp"
#include "fta/core/types.hpp"
#include "fta/render/catalog.hpp"
#include "fta/render/layout.hpp"

namespace fta::render {

class LayoutMismatch : public Error {
 public:
  explicit LayoutMismatch(const std::string& id)
      : Error("LayoutMismatch: layout does not match tree at '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

struct RenderOptions {
  /// Multiplier from layout units to the SVG width/height attributes.
  double scale = 1.0;
};

namespace detail {

inline std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

inline std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default:
        // Control characters are not allowed in XML 1.0.
        if (static_cast<unsigned char>(c) < 0x20 && c != '\t') out += ' ';
        else out += c;
    }
  }
  return out;
}

/// Label lines split at real newlines and at the two-character `\n`.
inline std::vector<std::string> label_lines(std::string_view label) {
  std::vector<std::string> lines(1);
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (label[i] == '\n') {
      lines.emplace_back();
    } else if (label[i] == '\\' && i + 1 < label.size() && label[i + 1] == 'n') {
      lines.emplace_back();
      ++i;
    } else {
      lines.back() += label[i];
    }
  }
  return lines;
}

inline std::string text_block(std::string_view label, double x, double first_baseline) {
  auto lines = label_lines(label);
  std::string out = "<text x=\"" + num(x) + "\" y=\"" + num(first_baseline) + "\" text-anchor=\"middle\">";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out += "<tspan x=\"" + num(x) + "\"";
    if (i > 0) out += " dy=\"14\"";
    out += ">" + xml_escape(lines[i]) + "</tspan>";
  }
  return out + "</text>";
}

inline std::string points(const std::vector<Point>& pts) {
  std::string out;
  for (const auto& p : pts) {
    if (!out.empty()) out += ' ';
    out += num(p.x) + "," + num(p.y);
  }
  return out;
}

inline std::string polygon(const std::vector<Point>& pts) {
  return "<polygon points=\"" + points(pts) + "\"/>";
}

inline std::string event_shape(Glyph g, Point c) {
  const double hw = kNodeWidth / 2, hh = kNodeHeight / 2;
  switch (g) {
    case Glyph::Rectangle:
      return "<rect x=\"" + num(c.x - hw) + "\" y=\"" + num(c.y - hh) + "\" width=\"" + num(kNodeWidth) +
             "\" height=\"" + num(kNodeHeight) + "\" rx=\"4\"/>";
    case Glyph::Circle:
      return "<circle cx=\"" + num(c.x) + "\" cy=\"" + num(c.y) + "\" r=\"" + num(hh) + "\"/>";
    case Glyph::Diamond:
      return polygon({{c.x, c.y - hh}, {c.x + 28, c.y}, {c.x, c.y + hh}, {c.x - 28, c.y}});
    case Glyph::House:
      return polygon({{c.x, c.y - hh}, {c.x + 24, c.y - 8}, {c.x + 24, c.y + hh}, {c.x - 24, c.y + hh}, {c.x - 24, c.y - 8}});
    case Glyph::Oval:
      return "<ellipse cx=\"" + num(c.x) + "\" cy=\"" + num(c.y) + "\" rx=\"" + num(hw * 0.75) + "\" ry=\"" +
             num(hh) + "\"/>";
    case Glyph::Triangle:
      return polygon({{c.x, c.y - hh}, {c.x + 24, c.y + hh}, {c.x - 24, c.y + hh}});
    default:
      return {};
  }
}

inline std::string gate_shape(Glyph g, Point c) {
  const double h = kGateSize / 2;
  const double l = c.x - h, r = c.x + h, t = c.y - h, b = c.y + h;
  auto P = [](double x, double y) { return num(x) + "," + num(y); };
  // Shield with a concave bottom, apex at the top.
  auto shield = [&](double bottom) {
    return "<path d=\"M " + P(l, bottom) + " Q " + P(c.x, bottom - 12) + " " + P(r, bottom) + " Q " +
           P(r, c.y - 8) + " " + P(c.x, t) + " Q " + P(l, c.y - 8) + " " + P(l, bottom) + " Z\"/>";
  };
  // Dome over a flat base.
  auto dome = "<path d=\"M " + P(l, b) + " L " + P(l, c.y) + " A " + num(h) + "," + num(h) + " 0 0 1 " +
              P(r, c.y) + " L " + P(r, b) + " Z\"/>";
  switch (g) {
    case Glyph::AndGate:
      return dome;
    case Glyph::PriorityAndGate:
      return dome + "<path d=\"M " + P(l, b - 8) + " L " + P(r, b - 8) + "\"/>";
    case Glyph::OrGate:
      return shield(b);
    case Glyph::XorGate:
      return shield(b - 6) + "<path d=\"M " + P(l, b) + " Q " + P(c.x, b - 12) + " " + P(r, b) + "\"/>";
    case Glyph::InhibitGate:
      return polygon({{c.x, t}, {r, c.y - 12}, {r, c.y + 12}, {c.x, b}, {l, c.y + 12}, {l, c.y - 12}});
    default:
      return {};
  }
}

inline std::string connector(std::string_view from, std::string_view to, const std::vector<Point>& pts,
                             bool dashed = false) {
  std::string out = "<polyline data-from=\"" + std::string(from) + "\" data-to=\"" + std::string(to) +
                    "\" points=\"" + points(pts) + "\"";
  if (dashed) out += " stroke-dasharray=\"6 4\"";
  return out + "/>";
}

inline void check_layout(const FaultTree& tree, const Layout& layout) {
  for (const auto& [id, p] : layout.positions) {
    if (!tree.find(id)) throw LayoutMismatch(id);
  }
  for (const auto& [id, p] : layout.gate_positions) {
    const EventNode* n = tree.find(id);
    if (!n || !n->has_children()) throw LayoutMismatch(id);
  }
  for (const auto& [id, node] : tree.nodes) {
    if (!layout.positions.count(id)) throw LayoutMismatch(id);
    if (node.has_children() && !layout.gate_positions.count(id)) throw LayoutMismatch(id);
  }
}

}  // namespace detail

/// Connector ids: an event is named by its id, the gate under event E by
/// `gate:E`. Every glyph group carries `data-glyph` with the catalog name.
/// Throws LayoutMismatch when the layout and tree disagree on node ids.
inline std::string render_svg(const FaultTree& tree, const Layout& layout, const RenderOptions& options = {}) {
  detail::check_layout(tree, layout);
  using detail::num;
  const auto order = preorder_ids(tree);
  const double hh = kNodeHeight / 2, gh = kGateSize / 2;

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(layout.width * options.scale) +
         "\" height=\"" + num(layout.height * options.scale) + "\" viewBox=\"0 0 " + num(layout.width) + " " +
         num(layout.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  if (!tree.title.empty()) out += "<title>" + detail::xml_escape(tree.title) + "</title>\n";

  out += "<g class=\"connectors\" fill=\"none\" stroke=\"#333\" stroke-width=\"1.5\">\n";
  for (const auto& id : order) {
    const EventNode& node = tree.at(id);
    if (!node.has_children()) continue;
    const Point p = layout.positions.at(id);
    const Point g = layout.gate_positions.at(id);
    const std::string gate_id = "gate:" + id;
    out += detail::connector(id, gate_id, {{p.x, p.y + hh}, {g.x, g.y - gh}}) + "\n";
    for (const auto& child : node.gate->children) {
      const Point c = layout.positions.at(child);
      const Point from{g.x, g.y + gh}, to{c.x, c.y - hh};
      if (from.x == to.x) {
        out += detail::connector(gate_id, child, {from, to}) + "\n";
      } else {
        const double mid = from.y + (kLevelPitch - kNodeHeight - kGateSize) / 4;
        out += detail::connector(gate_id, child, {from, {from.x, mid}, {to.x, mid}, to}) + "\n";
      }
    }
    if (node.gate->condition) {
      const auto& cond = *node.gate->condition;
      const Point c = layout.positions.at(cond);
      const Point to{c.x, c.y - hh};
      if (c.x > g.x + gh || c.x < g.x - gh) {
        const double side = c.x > g.x ? g.x + gh : g.x - gh;
        out += detail::connector(gate_id, cond, {{side, g.y}, {c.x, g.y}, to}, true) + "\n";
      } else {
        out += detail::connector(gate_id, cond, {{g.x, g.y + gh}, {c.x, g.y + gh}, to}, true) + "\n";
      }
    }
  }
  out += "</g>\n";

  out += "<g class=\"gates\" fill=\"#fff\" stroke=\"#000\" stroke-width=\"1.5\">\n";
  for (const auto& id : order) {
    const EventNode& node = tree.at(id);
    if (!node.has_children()) continue;
    const Glyph glyph = glyph_for(node.gate->kind);
    out += "<g data-glyph=\"" + std::string(glyph_name(glyph)) + "\" data-node=\"gate:" + id + "\">" +
           detail::gate_shape(glyph, layout.gate_positions.at(id)) + "</g>\n";
  }
  out += "</g>\n";

  out += "<g class=\"events\" fill=\"#fff\" stroke=\"#000\" stroke-width=\"1.5\">\n";
  for (const auto& id : order) {
    const EventNode& node = tree.at(id);
    const Glyph glyph = glyph_for(node.kind);
    const Point p = layout.positions.at(id);
    out += "<g data-glyph=\"" + std::string(glyph_name(glyph)) + "\" data-node=\"" + id + "\">";
    out += detail::event_shape(glyph, p);
    const auto lines = detail::label_lines(node.label);
    const bool inside = glyph == Glyph::Rectangle || glyph == Glyph::Oval;
    const double baseline = inside ? p.y + 4 - 7 * static_cast<double>(lines.size() - 1) : p.y + hh + 14;
    out += "<g fill=\"#000\" stroke=\"none\">" + detail::text_block(node.label, p.x, baseline) + "</g>";
    out += "</g>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace fta::render
