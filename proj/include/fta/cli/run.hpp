/// @file run.hpp
/// The `fta` command line, callable in-process.
#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fta/bundled.hpp"
#include "fta/copilot/session.hpp"
#include "fta/copilot/transcript.hpp"
#include "fta/core/cut_sets.hpp"
#include "fta/core/json_io.hpp"
#include "fta/core/probability.hpp"
#include "fta/puml/emit.hpp"
#include "fta/puml/parse.hpp"
#include "fta/render/svg.hpp"

namespace fta::cli {

using Environment = std::map<std::string, std::string, std::less<>>;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

/// Diagnostics were already written; only the exit code remains.
struct Reported {
  int code;
};

inline std::string read_input(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  ss << in.rdbuf();
  return ss.str();
}

inline bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

inline std::string format_from(const std::string& path, const std::string& text) {
  if (ends_with(path, ".json")) return "json";
  if (ends_with(path, ".puml") || ends_with(path, ".plantuml") || ends_with(path, ".txt")) return "puml";
  auto t = fta::detail::trim(text);
  return !t.empty() && t.front() == '{' ? "json" : "puml";
}

/// Parses the input, printing every diagnostic to `err`. Throws Reported
/// when the input has errors.
inline FaultTree load_tree(const std::string& path, std::string from, std::ostream& err) {
  const std::string text = read_input(path);
  if (from.empty()) from = format_from(path, text);
  auto parsed = from == "json" ? read_tree_json(text) : puml::parse_plantuml(text);
  // The PlantUML reader validates as it builds; JSON needs a separate pass.
  if (from == "json" && parsed.tree) {
    auto findings = validate_tree(*parsed.tree);
    parsed.diagnostics.insert(parsed.diagnostics.end(), findings.begin(), findings.end());
    if (has_errors(findings)) parsed.tree.reset();
  }
  err << render_diagnostics(parsed.diagnostics);
  if (!parsed.tree) throw Reported{kExitFailure};
  return std::move(*parsed.tree);
}

inline puml::Style style_from(const std::string& s) { return s == "gated" ? puml::Style::Gated : puml::Style::Flat; }

inline std::string convert(const FaultTree& tree, const std::string& to, const std::string& style) {
  if (to == "json") return write_tree_json(tree);
  if (to == "svg") return render::render_svg(tree, render::layout_tree(tree));
  return puml::emit_plantuml(tree, style_from(style));
}

inline void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error("cannot write " + out_path);
  f << text;
  if (!f) throw Error("cannot write " + out_path);
}

inline std::string format_probability(double p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", p);
  return buf;
}

inline ProbabilityMap read_probabilities(const std::string& path) {
  auto j = nlohmann::json::parse(read_input(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(path + ": expected a JSON object of event id to probability");
  ProbabilityMap probs;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw Error(path + ": probability for '" + k + "' is not a number");
    probs[k] = v.get<double>();
  }
  return probs;
}

}  // namespace detail

/// Runs one invocation. `args` excludes the program name. Returns 0 on
/// success, 1 on parse/validation/domain errors, 2 on usage errors.
inline int run(const std::vector<std::string>& args, const Environment& env, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Fault tree toolkit: PlantUML and JSON conversion, cut sets, probability, SVG, co-pilot"};
  app.name("fta");
  app.require_subcommand(1);

  const std::vector<std::string> kFormatsIn{"puml", "json"};
  const std::vector<std::string> kFormatsOut{"puml", "json", "svg"};
  const std::vector<std::string> kStyles{"flat", "gated"};

  std::string input, from, to = "puml", style = "flat", out_path;

  auto* validate = app.add_subcommand("validate", "Parse and validate a tree; diagnostics go to stderr");
  validate->add_option("input", input, "Tree file (.puml or .json), - for stdin")->required();
  validate->add_option("--from", from, "Input format")->check(CLI::IsMember(kFormatsIn));

  auto* convert = app.add_subcommand("convert", "Convert between PlantUML, JSON and SVG");
  convert->add_option("input", input, "Tree file, - for stdin")->required();
  convert->add_option("--from", from, "Input format (default: from extension)")->check(CLI::IsMember(kFormatsIn));
  convert->add_option("--to", to, "Output format")->required()->check(CLI::IsMember(kFormatsOut));
  convert->add_option("--style", style, "PlantUML style")->check(CLI::IsMember(kStyles));
  convert->add_option("--out", out_path, "Output file (default: stdout)");

  std::string cut_format = "text";
  auto* cutsets = app.add_subcommand("cutsets", "Print minimal cut sets");
  cutsets->add_option("input", input, "Tree file, - for stdin")->required();
  cutsets->add_option("--from", from, "Input format")->check(CLI::IsMember(kFormatsIn));
  cutsets->add_option("--format", cut_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::string probs_path;
  auto* prob = app.add_subcommand("prob", "Top-event probability from a JSON map of event probabilities");
  prob->add_option("input", input, "Tree file")->required();
  prob->add_option("probs", probs_path, "JSON object: event id -> probability")->required();
  prob->add_option("--from", from, "Input format")->check(CLI::IsMember(kFormatsIn));

  std::string description, record_path, replay_path, endpoint, model = "gpt-4o";
  int max_repairs = copilot::kDefaultMaxRepairs;
  double timeout_s = 60;
  auto* cop = app.add_subcommand("copilot", "Generate a tree with a chat model and repair it until it parses");
  cop->add_option("description", description, "Component to analyse, e.g. \"Lidar sensor in Autonomy\"")
      ->required();
  cop->add_option("--max-repairs", max_repairs, "Repair rounds after the first answer")
      ->check(CLI::NonNegativeNumber);
  auto* rec = cop->add_option("--record", record_path, "Write the session transcript here");
  auto* rep = cop->add_option("--replay", replay_path, "Answer from a recorded transcript instead of the network");
  rec->excludes(rep);
  cop->add_option("--endpoint", endpoint, "Chat-completions URL");
  cop->add_option("--model", model, "Model name sent to the endpoint");
  cop->add_option("--timeout", timeout_s, "Request timeout in seconds")->check(CLI::PositiveNumber);
  cop->add_option("--style", style, "Style of the printed tree")->check(CLI::IsMember(kStyles));

  std::string example_name;
  auto* example = app.add_subcommand("example", "Print a bundled example tree");
  std::vector<std::string> names;
  for (const auto& e : bundled::kExamples) names.emplace_back(e.name);
  example->add_option("name", example_name, "Example name")->required()->check(CLI::IsMember(names));
  example->add_option("--to", to, "Output format")->check(CLI::IsMember(kFormatsOut));
  auto* example_style = example->add_option("--style", style, "Re-emit PlantUML in this style")
                            ->check(CLI::IsMember(kStyles));
  example->add_option("--out", out_path, "Output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) {
      detail::load_tree(input, from, err);
      return kExitOk;
    }
    if (*convert) {
      auto tree = detail::load_tree(input, from, err);
      detail::write_output(detail::convert(tree, to, style), out_path, out);
      return kExitOk;
    }
    if (*cutsets) {
      auto tree = detail::load_tree(input, from, err);
      auto result = minimal_cut_sets(tree);
      if (cut_format == "json") {
        nlohmann::ordered_json j;
        j["cut_sets"] = nlohmann::ordered_json::array();
        for (const auto& s : result.sets) j["cut_sets"].push_back(s.members);
        j["negations_dropped"] = result.negations_dropped;
        out << j.dump(2) << "\n";
      } else {
        for (const auto& s : result.sets) {
          out << "{";
          for (std::size_t i = 0; i < s.members.size(); ++i) out << (i ? ", " : "") << s.members[i];
          out << "}\n";
        }
      }
      if (result.negations_dropped) err << "warning: XOR negations dropped; cut sets are a coherent approximation\n";
      return kExitOk;
    }
    if (*prob) {
      auto tree = detail::load_tree(input, from, err);
      auto result = top_probability(tree, detail::read_probabilities(probs_path));
      err << render_diagnostics(result.warnings);
      out << detail::format_probability(result.value) << "\n";
      return kExitOk;
    }
    if (*cop) {
      std::unique_ptr<copilot::ChatProvider> provider;
      if (!replay_path.empty()) {
        provider = std::make_unique<copilot::ScriptedProvider>(copilot::replay_session(replay_path));
      } else {
        if (endpoint.empty()) {
          err << "copilot: --endpoint is required unless --replay is given\n";
          return kExitUsage;
        }
        auto key = env.find(copilot::kCredentialEnv);
        copilot::HttpConfig config{endpoint, model, key == env.end() ? "" : key->second,
                                   std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000))};
        provider = std::make_unique<copilot::HttpChatProvider>(config);
      }
      auto session = copilot::run_repair_loop(*provider, description, max_repairs);
      for (std::size_t i = 0; i < session.rounds.size(); ++i) {
        const auto& r = session.rounds[i];
        err << "round " << i << ": " << (has_errors(r.diagnostics) ? "errors" : "ok") << "\n";
        err << render_diagnostics(r.diagnostics);
      }
      if (!record_path.empty()) {
        auto key = env.find(copilot::kCredentialEnv);
        copilot::record_session(session, record_path, key == env.end() ? "" : key->second);
      }
      if (session.outcome != copilot::Outcome::Success) {
        err << "copilot: no valid tree after " << session.rounds.size() << " rounds\n";
        return kExitFailure;
      }
      out << puml::emit_plantuml(*session.tree, detail::style_from(style));
      return kExitOk;
    }
    if (*example) {
      const std::string source(*bundled::find_example(example_name));
      if (to == "puml" && example_style->count() == 0) {
        detail::write_output(source, out_path, out);
        return kExitOk;
      }
      auto parsed = puml::parse_plantuml(source);
      detail::write_output(detail::convert(*parsed.tree, to, style), out_path, out);
      return kExitOk;
    }
  } catch (const detail::Reported& r) {
    return r.code;
  } catch (const InvalidTree& e) {
    err << render_diagnostics(e.findings());
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace fta::cli
