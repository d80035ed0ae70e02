#include <gtest/gtest.h>

#include <string>

#include "build.hpp"
#include "fta/bundled.hpp"
#include "fta/puml/emit.hpp"
#include "fta/puml/extract.hpp"
#include "fta/puml/parse.hpp"

using namespace fta;
using fta::puml::parse_plantuml;
using fta::puml::Style;

namespace {

std::string listing(std::string_view name) { return std::string(*bundled::find_example(name)); }

std::string replace_line(std::string text, const std::string& from, const std::string& to) {
  auto pos = text.find("\n" + from + "\n");
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos + 1, from.size(), to);
}

/// 1-based number of the first line equal to `line`.
int line_of(const std::string& text, const std::string& line) {
  auto lines = fta::detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i] == line) return static_cast<int>(i) + 1;
  }
  return -1;
}

std::map<EventKind, int> kind_counts(const FaultTree& t) {
  std::map<EventKind, int> out;
  for (const auto& [id, n] : t.nodes) ++out[n.kind];
  return out;
}

Diagnostic only_error(const ParseResult& r) {
  std::vector<Diagnostic> errors;
  for (const auto& d : r.diagnostics) {
    if (d.severity == Severity::Error) errors.push_back(d);
  }
  EXPECT_EQ(errors.size(), 1u) << render_diagnostics(r.diagnostics);
  return errors.empty() ? Diagnostic{} : errors.front();
}

std::string wrap(const std::string& body) { return "@startuml\n" + body + "@enduml\n"; }

}  // namespace

TEST(Diagnostic, RendersThreeLines) {
  Diagnostic d{26, 27, "HardwareOR -- rectangle \"Detector malfunction\"", "inline-keyword", Severity::Error, ""};
  EXPECT_EQ(render_diagnostic(d),
            "Syntax Error? (@ Diagram Line 26, File Line 27)\n"
            "\"HardwareOR -- rectangle \"Detector malfunction\"\"\n"
            "(Error)\n");
  d.severity = Severity::Warning;
  EXPECT_NE(render_diagnostic(d).find("(Warning)\n"), std::string::npos);
}

TEST(ParseGolden, InitialListing) {
  auto r = parse_plantuml(listing("lidar-initial"));
  ASSERT_TRUE(r.ok()) << render_diagnostics(r.diagnostics);
  const auto& t = *r.tree;
  auto counts = kind_counts(t);
  EXPECT_EQ(counts[EventKind::TopEvent], 1);
  EXPECT_EQ(counts[EventKind::Intermediate], 9);
  EXPECT_EQ(counts[EventKind::Basic], 17);
  EXPECT_EQ(t.top, "TopEvent");
  EXPECT_EQ(t.title, "LIDAR Sensor Failure FTA");
  EXPECT_EQ(t.at("TopEvent").gate->children, (std::vector<std::string>{"Hardware", "Software", "Environmental"}));
  for (const auto& [id, n] : t.nodes) {
    if (n.gate) {
      EXPECT_EQ(n.gate->kind, GateKind::Or) << id;
    }
  }
  // The single-input "Software" category is reported but tolerated.
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].severity, Severity::Warning);
  EXPECT_EQ(r.diagnostics[0].node, "Software");
  EXPECT_EQ(r.diagnostics[0].diagram_line, line_of(listing("lidar-initial"), "package \"Software\" {"));
}

TEST(ParseGolden, FinalListing) {
  auto r = parse_plantuml(listing("lidar-final"));
  ASSERT_TRUE(r.ok()) << render_diagnostics(r.diagnostics);
  EXPECT_TRUE(r.diagnostics.empty());
  const auto& t = *r.tree;
  std::map<std::string, std::pair<std::string, GateKind>> gates;
  for (const auto& [id, n] : t.nodes) {
    if (n.gate) gates[id] = {n.gate_alias.value_or(""), n.gate->kind};
  }
  std::map<std::string, std::pair<std::string, GateKind>> expected{
      {"TopEvent", {"MainOR", GateKind::Or}},
      {"HardwareFailure", {"HardwareAND", GateKind::And}},
      {"SoftwareFailure", {"SoftwareOR", GateKind::Or}},
      {"EnvironmentalFactors", {"EnvironmentalAND", GateKind::And}},
  };
  EXPECT_EQ(gates, expected);
  EXPECT_EQ(kind_counts(t)[EventKind::Basic], 6);
  EXPECT_EQ(t.at("HardwareFailure").gate->children,
            (std::vector<std::string>{"Laser_emitter_degradation", "Power_supply_issues"}));
  EXPECT_EQ(t.at("Power_supply_issues").label, "Power supply issues");
}

TEST(ParseGolden, PerformanceListing) {
  auto r = parse_plantuml(listing("lidar-performance"));
  ASSERT_TRUE(r.ok()) << render_diagnostics(r.diagnostics);
  const auto& t = *r.tree;
  EXPECT_EQ(t.at("TopEvent").gate->children.size(), 5u);
  for (const auto& c : t.at("TopEvent").gate->children) EXPECT_EQ(t.at(c).gate->children.size(), 4u) << c;
  EXPECT_EQ(kind_counts(t)[EventKind::Basic], 20);
  // Literal \n stays in the label text.
  EXPECT_NE(t.at("TopEvent").label.find("\\n"), std::string::npos);
}

TEST(ParseErrors, InlineKeywordInListing) {
  auto text = replace_line(listing("lidar-initial"), "Detector -- D", "Detector -- rectangle \"D2\"");
  auto r = parse_plantuml(text);
  EXPECT_FALSE(r.ok());
  ASSERT_EQ(r.diagnostics.size(), 1u);
  const auto& d = r.diagnostics[0];
  const int line = line_of(text, "Detector -- rectangle \"D2\"");
  EXPECT_EQ(d.diagram_line, line);
  EXPECT_EQ(d.file_line, line);
  EXPECT_EQ(render_diagnostic(d), "Syntax Error? (@ Diagram Line " + std::to_string(line) + ", File Line " +
                                      std::to_string(line) + ")\n\"Detector -- rectangle \"D2\"\"\n(Error)\n");
}

TEST(ParseErrors, FileLineCountsLinesBeforeStart) {
  auto body = replace_line(listing("lidar-final"), "HardwareAND -down-> (Power supply issues)",
                           "HardwareAND -down-> rectangle \"Power supply issues\"");
  for (int before = 0; before < 4; ++before) {
    std::string text;
    for (int i = 0; i < before; ++i) text += "' preamble " + std::to_string(i) + "\n";
    text += body;
    auto d = only_error(parse_plantuml(text));
    EXPECT_EQ(d.file_line - d.diagram_line, before);
    EXPECT_EQ(d.diagram_line, line_of(body, "HardwareAND -down-> rectangle \"Power supply issues\""));
  }
}

TEST(ParseErrors, LineLevelRules) {
  struct Case {
    std::string line;
    std::string rule;
  };
  std::vector<Case> cases{
      {"diamond HardwareAND", "unsupported-element"},
      {"AND_GATE(HardwareAND)", "unknown-directive"},
      {" arc -90 to (0,-10)", "unknown-directive"},
      {"A -- B : NAND", "unsupported-edge-label"},
      {"rectangle \"Oops as X", "unterminated-string"},
      {"rectangle \"X\" as X #red", "unsupported-feature"},
      {"!include foo.puml", "unknown-directive"},
  };
  for (const auto& c : cases) {
    auto text = wrap("rectangle \"A\" as A\nrectangle \"B\" as B\n" + c.line + "\nA -- B\n");
    auto d = only_error(parse_plantuml(text));
    EXPECT_EQ(d.message, c.rule) << c.line;
    EXPECT_EQ(d.offending_text, c.line);
    EXPECT_EQ(d.diagram_line, 4);
  }
}

TEST(ParseErrors, MissingMarkers) {
  auto r = parse_plantuml("rectangle \"A\" as A\n");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.diagnostics[0].message, "missing-startuml");
  auto s = parse_plantuml("@startuml\nrectangle \"A\" as A\n");
  ASSERT_FALSE(s.ok());
  EXPECT_EQ(s.diagnostics[0].message, "missing-enduml");
}

TEST(ParseErrors, UnbalancedBlocks) {
  EXPECT_EQ(only_error(parse_plantuml(wrap("package \"P\" {\nrectangle \"A\" as A\n"))).message,
            "unbalanced-brace");
  EXPECT_EQ(only_error(parse_plantuml(wrap("rectangle \"A\" as A\n}\n"))).message, "unbalanced-brace");
  EXPECT_EQ(only_error(parse_plantuml(wrap("note bottom of A\nhello\n"))).message, "unterminated-block");
}

TEST(ParseErrors, TreeLevelRules) {
  auto gate_to_gate = parse_plantuml(wrap(
      "rectangle \"T\" as T\ncircle TOR\ncircle XAND\nT -down-> TOR : OR\nTOR -down-> XAND\nXAND -down-> (a)\n"));
  EXPECT_EQ(only_error(gate_to_gate).message, "gate-to-gate");

  auto undeclared = parse_plantuml(wrap("rectangle \"T\" as T\nT -- Ghost\nT -- (x)\n"));
  EXPECT_EQ(only_error(undeclared).message, "undeclared-alias");

  auto two_tops = parse_plantuml(wrap("rectangle \"A\" as A\nrectangle \"B\" as B\nA -- (x)\nA -- (y)\n"
                                      "B -- (z)\nB -- (w)\n"));
  EXPECT_EQ(only_error(two_tops).message, "multiple-top-events");

  auto conflict = parse_plantuml(wrap("rectangle \"A\" as A\nA -- (x) : AND\nA -- (y) : XOR\n"));
  EXPECT_EQ(only_error(conflict).message, "conflicting-gate-labels");

  auto cycle = parse_plantuml(wrap("rectangle \"T\" as T\nrectangle \"A\" as A\nrectangle \"B\" as B\n"
                                   "T -- A\nT -- (x)\nA -- B\nA -- (y)\nB -- A\nB -- (z)\n"));
  EXPECT_FALSE(cycle.ok());
}

TEST(ParseDialect, KeywordsAndLabels) {
  auto r = parse_plantuml(wrap(
      "title Dialect test\n"
      "rectangle \"Top\" as T\n"
      "card \"Not analysed\" as U\n"
      "cloud \"Mains power\" as X\n"
      "file \"Power tree\" as P [[Power]]\n"
      "file \"Continued\" as O\n"
      "rectangle \"Gate input\" as I\n"
      "rectangle \"Sub\" as S\n"
      "rectangle \"Cond\" as C\n"
      "T -- U : AND\nT -- X : AND\nT -- P : AND\nT -- O : AND\nT -- S : AND\n"
      "S -- I : INHIBIT\nS -- C : COND\n"));
  ASSERT_TRUE(r.ok()) << render_diagnostics(r.diagnostics);
  const auto& t = *r.tree;
  EXPECT_EQ(t.title, "Dialect test");
  EXPECT_EQ(t.at("U").kind, EventKind::Undeveloped);
  EXPECT_EQ(t.at("X").kind, EventKind::External);
  EXPECT_EQ(t.at("P").kind, EventKind::TransferIn);
  EXPECT_EQ(t.at("P").transfer_target, "Power");
  EXPECT_EQ(t.at("O").kind, EventKind::TransferOut);
  EXPECT_EQ(t.at("C").kind, EventKind::Conditioning);
  EXPECT_EQ(t.at("T").gate->kind, GateKind::And);
  EXPECT_EQ(t.at("S").gate->kind, GateKind::Inhibit);
  EXPECT_EQ(t.at("S").gate->condition, "C");
}

TEST(ParseDialect, CommentsNotesAndDefaultGate) {
  auto text = wrap(
      "' line comment\n/' block\ncomment '/\n"
      "rectangle \"T\" as T\nT -- (a)\nT -- (b)\n"
      "note right of T : short note\n");
  auto r = parse_plantuml(text, GateKind::And);
  ASSERT_TRUE(r.ok()) << render_diagnostics(r.diagnostics);
  EXPECT_EQ(r.tree->at("T").gate->kind, GateKind::And);
  EXPECT_EQ(r.tree->at("a").label, "a");
}

TEST(ParseDialect, TextOutsideMarkersIsIgnored) {
  auto r = parse_plantuml("Here is your diagram:\n" + listing("lidar-final") + "Hope this helps!\n");
  EXPECT_TRUE(r.ok());
}

TEST(ParseDialect, TotalOnArbitraryBytes) {
  std::string junk;
  for (int i = 0; i < 2000; ++i) junk += static_cast<char>((i * 7919) % 256);
  EXPECT_NO_THROW(parse_plantuml(junk));
  EXPECT_NO_THROW(parse_plantuml("@startuml\n" + junk + "\n@enduml\n"));
  EXPECT_NO_THROW(parse_plantuml(""));
}

TEST(Emit, GatedStyleMatchesListingShape) {
  auto t = *parse_plantuml(listing("lidar-final")).tree;
  auto out = puml::emit_plantuml(t, Style::Gated);
  EXPECT_EQ(out.rfind("@startuml LIDAR Sensor Failure FTA\n", 0), 0u);
  for (auto line : {"circle MainOR", "circle HardwareAND", "TopEvent -down-> MainOR : OR",
                    "MainOR -down-> HardwareFailure", "HardwareFailure -down-> HardwareAND : AND",
                    "rectangle \"Power supply issues\" as Power_supply_issues",
                    "  Circles labeled 'OR' represent OR gates", "  Circles labeled 'AND' represent AND gates"}) {
    EXPECT_GT(line_of(out, line), 0) << line;
  }
  EXPECT_TRUE(out.size() > 9 && out.substr(out.size() - 8) == "@enduml\n");
}

TEST(Emit, FlatStyleMatchesListingShape) {
  auto t = *parse_plantuml(listing("lidar-initial")).tree;
  auto out = puml::emit_plantuml(t, Style::Flat);
  for (auto line : {"skinparam packageStyle rectangle", "TopEvent -- Hardware", "Emitter -- A",
                    "  All connections represent OR gates"}) {
    EXPECT_GT(line_of(out, line), 0) << line;
  }
}

TEST(Emit, RoundTripGoldenTrees) {
  for (const auto& e : bundled::kExamples) {
    auto t = *parse_plantuml(e.source).tree;
    for (auto style : {Style::Flat, Style::Gated}) {
      auto again = parse_plantuml(puml::emit_plantuml(t, style));
      ASSERT_TRUE(again.ok()) << e.name << render_diagnostics(again.diagnostics);
      EXPECT_TRUE(structurally_equal(t, *again.tree)) << e.name;
      if (style == Style::Gated && t.at(t.top).gate_alias) {
        EXPECT_EQ(again.tree->at(t.top).gate_alias, t.at(t.top).gate_alias);
      }
    }
  }
}

TEST(Emit, IsIdempotent) {
  auto t = *parse_plantuml(listing("lidar-final")).tree;
  for (auto style : {Style::Flat, Style::Gated}) {
    auto once = puml::emit_plantuml(t, style);
    auto twice = puml::emit_plantuml(*parse_plantuml(once).tree, style);
    EXPECT_EQ(once, twice);
  }
}

TEST(Emit, RejectsInvalidAndUnwritable) {
  auto t = build::or2();
  t.top = "missing";
  EXPECT_THROW(puml::emit_plantuml(t, Style::Flat), InvalidTree);
  auto q = build::or2();
  q.nodes.at("A").label = "say \"hi\"";
  EXPECT_THROW(puml::emit_plantuml(q, Style::Gated), InvalidTree);
}

TEST(Extract, FindsFencedBlock) {
  std::string reply = "Sure! Here it is:\n\n```plantuml\n@startuml\nrectangle \"A\" as A\n@enduml\n```\nDone.";
  EXPECT_EQ(puml::extract_uml_block(reply), "@startuml\nrectangle \"A\" as A\n@enduml\n");
}

TEST(Extract, KeepsInnerLinesVerbatim) {
  std::string reply = "```\n@startuml T\n  indented line\n@enduml```";
  EXPECT_EQ(puml::extract_uml_block(reply), "@startuml T\n  indented line\n@enduml\n");
}

TEST(Extract, ThrowsWithoutBlock) {
  EXPECT_THROW(puml::extract_uml_block("I cannot draw diagrams."), puml::NoUmlBlock);
  EXPECT_THROW(puml::extract_uml_block("@startuml\nno end"), puml::NoUmlBlock);
}
