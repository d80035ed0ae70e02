// Parses the bundled LiDAR fault tree, lists its minimal cut sets and the
// top-event probability with every basic event at p = 0.1, and optionally
// writes an SVG drawing.
//
//   analyze_lidar [out.svg]

#include <fstream>
#include <iostream>

#include "fta/bundled.hpp"
#include "fta/core/cut_sets.hpp"
#include "fta/core/probability.hpp"
#include "fta/puml/parse.hpp"
#include "fta/render/svg.hpp"

int main(int argc, char** argv) {
  auto parsed = fta::puml::parse_plantuml(*fta::bundled::find_example("lidar-final"));
  std::cerr << fta::render_diagnostics(parsed.diagnostics);
  if (!parsed.tree) return 1;
  const fta::FaultTree& tree = *parsed.tree;

  std::cout << tree.title << "\n\nMinimal cut sets:\n";
  for (const auto& set : fta::minimal_cut_sets(tree).sets) {
    std::cout << " ";
    for (const auto& id : set.members) std::cout << " " << tree.at(id).label << ";";
    std::cout << "\n";
  }

  fta::ProbabilityMap probs;
  for (const auto& [id, node] : tree.nodes) {
    if (node.kind == fta::EventKind::Basic) probs[id] = 0.1;
  }
  std::cout << "\nP(top) with p = 0.1 per basic event: " << fta::top_probability(tree, probs).value << "\n";

  if (argc > 1) {
    std::ofstream(argv[1]) << fta::render::render_svg(tree, fta::render::layout_tree(tree));
    std::cout << "wrote " << argv[1] << "\n";
  }
  return 0;
}
