// Randomized checks against the brute-force oracle and codec invariants.
#include <gtest/gtest.h>

#include <random>

#include "fta/bundled.hpp"
#include "fta/core/cut_sets.hpp"
#include "fta/core/evaluate.hpp"
#include "fta/core/json_io.hpp"
#include "fta/core/probability.hpp"
#include "fta/puml/emit.hpp"
#include "fta/puml/parse.hpp"
#include "fta/render/svg.hpp"
#include "oracle.hpp"
#include "random_tree.hpp"

using namespace fta;

namespace {

constexpr int kCorpus = 200;

std::vector<FaultTree> corpus() {
  static const std::vector<FaultTree> trees = [] {
    std::mt19937_64 rng(20240917);
    std::vector<FaultTree> out;
    for (int i = 0; i < kCorpus; ++i) out.push_back(gen::random_tree(rng, gen::corpus_options(i)));
    return out;
  }();
  return trees;
}

bool has_xor(const FaultTree& t) {
  return std::any_of(t.nodes.begin(), t.nodes.end(),
                     [](auto& kv) { return kv.second.gate && kv.second.gate->kind == GateKind::Xor; });
}

Assignment assignment_of(const FaultTree& t, const std::vector<std::string>& truths) {
  Assignment a;
  for (const auto& v : oracle::variables(t)) a[v] = false;
  for (const auto& v : truths) a[v] = true;
  return a;
}

}  // namespace

TEST(Generator, ProducesValidBoundedTrees) {
  for (const auto& t : corpus()) {
    EXPECT_FALSE(has_errors(validate_tree(t)));
    EXPECT_TRUE(validate_tree(t).empty());
    EXPECT_LE(oracle::variables(t).size(), 12u);
  }
}

TEST(Property, CutSetsMatchOracle) {
  for (const auto& t : corpus()) {
    auto result = minimal_cut_sets(t);
    std::vector<std::vector<std::string>> got;
    for (const auto& s : result.sets) got.push_back(s.members);
    EXPECT_EQ(got, oracle::minimal_true_sets(t)) << write_tree_json(t);
    EXPECT_EQ(result.negations_dropped, has_xor(t));
  }
}

TEST(Property, ProbabilityMatchesOracle) {
  std::mt19937_64 rng(7);
  for (const auto& t : corpus()) {
    auto p = gen::random_probabilities(rng, t);
    auto r = top_probability(t, p);
    EXPECT_NEAR(r.value, oracle::probability(t, p), 1e-12) << write_tree_json(t);
    EXPECT_FALSE(r.approximate);
  }
}

TEST(Property, EvaluationMatchesOracle) {
  std::mt19937_64 rng(11);
  for (const auto& t : corpus()) {
    auto vars = oracle::variables(t);
    for (int k = 0; k < 16; ++k) {
      std::set<std::string> truth;
      Assignment a;
      for (const auto& v : vars) {
        bool b = rng() & 1;
        a[v] = b;
        if (b) truth.insert(v);
      }
      EXPECT_EQ(evaluate_boolean(t, a), oracle::eval(t, t.top, truth));
    }
  }
}

TEST(Property, MonotoneAndBoundaryValues) {
  std::mt19937_64 rng(13);
  for (const auto& t : corpus()) {
    auto vars = oracle::variables(t);
    EXPECT_FALSE(evaluate_boolean(t, assignment_of(t, {})));
    if (has_xor(t)) continue;
    EXPECT_TRUE(evaluate_boolean(t, assignment_of(t, vars)));
    // Turning one more event on never clears the top.
    for (int k = 0; k < 16; ++k) {
      std::vector<std::string> on;
      for (const auto& v : vars) {
        if (rng() & 1) on.push_back(v);
      }
      bool before = evaluate_boolean(t, assignment_of(t, on));
      on.push_back(vars[rng() % vars.size()]);
      EXPECT_LE(before, evaluate_boolean(t, assignment_of(t, on)));
    }
  }
}

TEST(Property, EveryCutSetIsAMinimalWitness) {
  for (const auto& t : corpus()) {
    for (const auto& s : minimal_cut_sets(t).sets) {
      EXPECT_TRUE(evaluate_boolean(t, assignment_of(t, s.members)));
      for (std::size_t i = 0; i < s.members.size(); ++i) {
        auto fewer = s.members;
        fewer.erase(fewer.begin() + static_cast<long>(i));
        EXPECT_FALSE(evaluate_boolean(t, assignment_of(t, fewer)));
      }
    }
  }
}

TEST(Property, CutSetsAreIdempotent) {
  for (const auto& t : corpus()) {
    auto a = minimal_cut_sets(t).sets;
    auto b = minimal_cut_sets(t).sets;
    EXPECT_EQ(a, b);
    EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  }
}

TEST(Property, PlantUmlRoundTripBothStyles) {
  for (const auto& t : corpus()) {
    for (auto style : {puml::Style::Flat, puml::Style::Gated}) {
      auto text = puml::emit_plantuml(t, style);
      auto back = puml::parse_plantuml(text, t.default_gate);
      ASSERT_TRUE(back.ok()) << text << render_diagnostics(back.diagnostics);
      EXPECT_TRUE(structurally_equal(t, *back.tree)) << text;
      EXPECT_EQ(puml::emit_plantuml(*back.tree, style), text);
    }
  }
}

TEST(Property, JsonRoundTrip) {
  for (const auto& t : corpus()) {
    auto back = read_tree_json(write_tree_json(t));
    ASSERT_TRUE(back.ok());
    EXPECT_EQ(*back.tree, t);
  }
}

TEST(Property, LayoutHasNoOverlapsAndRendersDeterministically) {
  for (const auto& t : corpus()) {
    auto layout = render::layout_tree(t);
    std::vector<render::Box> boxes;
    for (const auto& [id, p] : layout.positions) boxes.push_back(layout.event_box(id));
    for (const auto& [id, p] : layout.gate_positions) boxes.push_back(layout.gate_box(id));
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      for (std::size_t j = i + 1; j < boxes.size(); ++j) EXPECT_FALSE(boxes[i].overlaps(boxes[j]));
    }
    for (const auto& [id, n] : t.nodes) {
      if (!n.gate) continue;
      for (const auto& c : n.gate->children) EXPECT_LT(layout.positions.at(id).y, layout.positions.at(c).y);
    }
    EXPECT_EQ(render::render_svg(t, layout), render::render_svg(t, render::layout_tree(t)));
  }
}

TEST(Property, DiagnosticLineArithmetic) {
  std::mt19937_64 rng(17);
  const auto body = fta::detail::split_lines(*bundled::find_example("lidar-final"));
  // The fault goes anywhere between the skinparam block and the note block.
  auto line_starting = [&](std::string_view prefix) {
    auto it = std::find_if(body.begin(), body.end(), [&](const std::string& l) { return l.rfind(prefix, 0) == 0; });
    return static_cast<std::size_t>(it - body.begin());
  };
  const std::size_t first = line_starting("}") + 1;
  const std::size_t last = line_starting("note");
  for (int k = 0; k < 100; ++k) {
    const int preamble = static_cast<int>(rng() % 5);
    const std::size_t at = first + rng() % (last - first + 1);
    std::string text;
    for (int i = 0; i < preamble; ++i) text += "' note " + std::to_string(i) + "\n";
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i == at) text += "HardwareAND -down-> rectangle \"Extra\"\n";
      text += body[i] + "\n";
    }
    auto r = puml::parse_plantuml(text);
    ASSERT_EQ(r.diagnostics.size(), 1u) << text;
    EXPECT_EQ(r.diagnostics[0].diagram_line, static_cast<int>(at) + 1);
    EXPECT_EQ(r.diagnostics[0].file_line, static_cast<int>(at) + 1 + preamble);
  }
}

TEST(Property, ParserIsTotalOnMutatedListings) {
  std::mt19937_64 rng(19);
  const std::string alphabet = "@{}()[]\"'-><:|#!/\\ \nabcXYZ_019";
  for (const auto& e : bundled::kExamples) {
    for (int k = 0; k < 150; ++k) {
      std::string text(e.source);
      const int edits = 1 + static_cast<int>(rng() % 8);
      for (int i = 0; i < edits && !text.empty(); ++i) {
        const std::size_t pos = rng() % text.size();
        switch (rng() % 3) {
          case 0: text.erase(pos, 1 + rng() % 6); break;
          case 1: text.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
          default: text[pos] = alphabet[rng() % alphabet.size()];
        }
      }
      ParseResult r;
      ASSERT_NO_THROW(r = puml::parse_plantuml(text)) << text;
      EXPECT_EQ(r.ok(), !has_errors(r.diagnostics));
      if (r.ok()) {
        EXPECT_FALSE(has_errors(validate_tree(*r.tree)));
      }
    }
  }
}
