#include <gtest/gtest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <regex>
#include <sstream>

#include "build.hpp"
#include "fta/bundled.hpp"
#include "fta/puml/parse.hpp"
#include "fta/render/svg.hpp"

using namespace fta;
using namespace fta::render;

namespace {

FaultTree final_tree() { return *puml::parse_plantuml(*bundled::find_example("lidar-final")).tree; }

std::map<std::string, int> census(const std::string& svg) {
  std::map<std::string, int> out;
  std::regex re("data-glyph=\"([a-z-]+)\"");
  for (std::sregex_iterator it(svg.begin(), svg.end(), re), end; it != end; ++it) ++out[(*it)[1]];
  return out;
}

bool well_formed(const std::string& svg, std::string* root = nullptr) {
  boost::property_tree::ptree pt;
  std::istringstream in(svg);
  try {
    boost::property_tree::read_xml(in, pt);
  } catch (const std::exception&) {
    return false;
  }
  int elements = 0;
  for (const auto& [name, child] : pt) {
    if (name == "<xmlcomment>") continue;
    ++elements;
    if (root) *root = name;
  }
  return elements == 1;
}

struct Connector {
  std::string from, to;
  std::vector<Point> points;
};

std::vector<Connector> connectors(const std::string& svg) {
  std::vector<Connector> out;
  std::regex re("<polyline data-from=\"([^\"]+)\" data-to=\"([^\"]+)\" points=\"([^\"]+)\"");
  for (std::sregex_iterator it(svg.begin(), svg.end(), re), end; it != end; ++it) {
    Connector c{(*it)[1], (*it)[2], {}};
    std::istringstream pts((*it)[3]);
    std::string pair;
    while (pts >> pair) {
      auto comma = pair.find(',');
      c.points.push_back({std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1))});
    }
    out.push_back(c);
  }
  return out;
}

Box box_of(const Layout& layout, const std::string& ref) {
  if (ref.rfind("gate:", 0) == 0) return layout.gate_box(ref.substr(5));
  return layout.event_box(ref);
}

void expect_no_overlaps(const FaultTree& tree, const Layout& layout) {
  std::vector<std::pair<std::string, Box>> boxes;
  for (const auto& [id, p] : layout.positions) boxes.emplace_back(id, layout.event_box(id));
  for (const auto& [id, p] : layout.gate_positions) boxes.emplace_back("gate:" + id, layout.gate_box(id));
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      EXPECT_FALSE(boxes[i].second.overlaps(boxes[j].second)) << boxes[i].first << " / " << boxes[j].first;
    }
  }
  EXPECT_EQ(layout.positions.size(), tree.nodes.size());
}

}  // namespace

TEST(Catalog, EveryKindHasAGlyph) {
  std::set<Glyph> event_glyphs, gate_glyphs;
  for (auto k : {EventKind::Basic, EventKind::External, EventKind::Undeveloped, EventKind::Conditioning,
                 EventKind::Intermediate, EventKind::TopEvent, EventKind::TransferIn, EventKind::TransferOut}) {
    event_glyphs.insert(glyph_for(k));
  }
  for (auto g : {GateKind::And, GateKind::Or, GateKind::Xor, GateKind::PriorityAnd, GateKind::Inhibit}) {
    gate_glyphs.insert(glyph_for(g));
  }
  EXPECT_EQ(event_glyphs.size(), 6u);
  EXPECT_EQ(gate_glyphs.size(), 5u);
  EXPECT_EQ(glyph_for(EventKind::Undeveloped), Glyph::Diamond);
  EXPECT_EQ(glyph_for(EventKind::External), Glyph::House);
  EXPECT_EQ(glyph_for(GateKind::Inhibit), Glyph::InhibitGate);
}

TEST(Layout, FinalTreeLevels) {
  auto t = final_tree();
  auto layout = layout_tree(t);
  std::map<int, int> per_level;
  for (const auto& [id, level] : layout.level) ++per_level[level];
  EXPECT_EQ(per_level, (std::map<int, int>{{0, 1}, {1, 3}, {2, 6}}));
  EXPECT_EQ(layout.gate_positions.size(), 4u);
  // Gates sit strictly between their event's row and the next one.
  for (const auto& [owner, g] : layout.gate_positions) {
    const auto& p = layout.positions.at(owner);
    EXPECT_GT(g.y, p.y);
    EXPECT_LT(g.y, p.y + kLevelPitch);
    EXPECT_EQ(g.x, p.x);
  }
  expect_no_overlaps(t, layout);
}

TEST(Layout, ParentsAboveChildrenSiblingsInOrder) {
  for (const auto& e : bundled::kExamples) {
    auto t = *puml::parse_plantuml(e.source).tree;
    auto layout = layout_tree(t);
    for (const auto& [id, n] : t.nodes) {
      if (!n.gate) continue;
      double last_x = -1;
      for (const auto& c : n.gate->children) {
        EXPECT_LT(layout.positions.at(id).y, layout.positions.at(c).y);
        EXPECT_GT(layout.positions.at(c).x, last_x) << e.name << " " << c;
        last_x = layout.positions.at(c).x;
      }
    }
    expect_no_overlaps(t, layout);
  }
}

TEST(Layout, SingleNodeCentered) {
  auto t = build::tree({build::event("Top", EventKind::TopEvent)});
  auto layout = layout_tree(t);
  EXPECT_EQ(layout.positions.at("Top").x, layout.width / 2);
  EXPECT_EQ(layout.level.at("Top"), 0);
}

TEST(Layout, FlatLeavesShareDepth) {
  std::vector<std::string> leaves;
  std::initializer_list<EventNode> none{};
  auto t = build::tree(none);
  for (int i = 0; i < 17; ++i) {
    leaves.push_back("L" + std::to_string(i));
    t.put(build::event(leaves.back()));
  }
  t.put(build::top(GateKind::Or, leaves));
  auto layout = layout_tree(t);
  for (const auto& l : leaves) EXPECT_EQ(layout.level.at(l), 1);
  expect_no_overlaps(t, layout);
}

TEST(Layout, SharedEventBelowDeepestParent) {
  auto t = build::tree({build::top(GateKind::Or, {"G", "A"}), build::gate("G", GateKind::And, {"A", "B"}),
                        build::event("A"), build::event("B")});
  auto layout = layout_tree(t);
  EXPECT_EQ(layout.level.at("A"), 2);
  expect_no_overlaps(t, layout);
}

TEST(Layout, RejectsInvalidTree) {
  auto t = build::or2();
  t.top = "nope";
  EXPECT_THROW(layout_tree(t), InvalidTree);
}

TEST(Svg, FinalTreeCensus) {
  auto t = final_tree();
  auto svg = render_svg(t, layout_tree(t));
  auto c = census(svg);
  EXPECT_EQ(c["and-gate"], 2);
  EXPECT_EQ(c["or-gate"], 2);
  EXPECT_EQ(c["circle"], 6);
  EXPECT_EQ(c["rectangle"], 4);
  std::string root;
  EXPECT_TRUE(well_formed(svg, &root));
  EXPECT_EQ(root, "svg");
}

TEST(Svg, CensusMatchesKinds) {
  using build::event;
  auto t = build::tree({build::top(GateKind::Or, {"U", "X", "O", "S", "P"}), event("U", EventKind::Undeveloped),
                        event("X", EventKind::External), event("O", EventKind::TransferOut),
                        build::gate("S", GateKind::Inhibit, {"B"}), event("B"), event("C", EventKind::Conditioning),
                        build::gate("P", GateKind::Xor, {"D", "E"}), event("D"), event("E")});
  t.nodes.at("S").gate->condition = "C";
  auto svg = render_svg(t, layout_tree(t));
  auto c = census(svg);
  EXPECT_EQ(c["diamond"], 1);
  EXPECT_EQ(c["house"], 1);
  EXPECT_EQ(c["triangle"], 1);
  EXPECT_EQ(c["oval"], 1);
  EXPECT_EQ(c["circle"], 3);
  EXPECT_EQ(c["rectangle"], 3);
  EXPECT_EQ(c["or-gate"], 1);
  EXPECT_EQ(c["inhibit-gate"], 1);
  EXPECT_EQ(c["xor-gate"], 1);
  EXPECT_TRUE(well_formed(svg));
}

TEST(Svg, ConnectorsTouchTheirBoxes) {
  for (const auto& e : bundled::kExamples) {
    auto t = *puml::parse_plantuml(e.source).tree;
    auto layout = layout_tree(t);
    auto cs = connectors(render_svg(t, layout));
    ASSERT_FALSE(cs.empty());
    for (const auto& c : cs) {
      ASSERT_GE(c.points.size(), 2u);
      EXPECT_TRUE(box_of(layout, c.from).on_boundary(c.points.front())) << c.from << " -> " << c.to;
      EXPECT_TRUE(box_of(layout, c.to).on_boundary(c.points.back())) << c.from << " -> " << c.to;
    }
  }
}

TEST(Svg, DeterministicAndEscaped) {
  auto t = build::or2();
  t.title = "A <b> & \"c\"";
  t.nodes.at("A").label = "x < y & z\\nsecond line";
  auto a = render_svg(t, layout_tree(t));
  auto b = render_svg(t, layout_tree(t));
  EXPECT_EQ(a, b);
  EXPECT_TRUE(well_formed(a));
  EXPECT_NE(a.find("x &lt; y &amp; z</tspan><tspan x=\"104\" dy=\"14\">second line"), std::string::npos) << a;
  EXPECT_EQ(a.find("href"), std::string::npos);
}

TEST(Svg, ScaleOnlyChangesOuterSize) {
  auto t = final_tree();
  auto layout = layout_tree(t);
  auto one = render_svg(t, layout);
  auto two = render_svg(t, layout, {2.0});
  EXPECT_NE(one, two);
  std::regex vb("viewBox=\"([^\"]+)\"");
  std::smatch m1, m2;
  ASSERT_TRUE(std::regex_search(one, m1, vb));
  ASSERT_TRUE(std::regex_search(two, m2, vb));
  EXPECT_EQ(m1[1], m2[1]);
}

TEST(Svg, LayoutMismatch) {
  auto t = final_tree();
  auto layout = layout_tree(build::lidar_final());
  EXPECT_THROW(render_svg(t, layout), LayoutMismatch);
  auto good = layout_tree(t);
  good.positions["Ghost"] = {0, 0};
  EXPECT_THROW(render_svg(t, good), LayoutMismatch);
}
