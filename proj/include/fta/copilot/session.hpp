/// @file session.hpp
/// Generate, validate, repair: the co-pilot conversation loop.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fta/copilot/prompts.hpp"
#include "fta/copilot/provider.hpp"
#include "fta/core/types.hpp"
#include "fta/diagnostic.hpp"
#include "fta/puml/extract.hpp"
#include "fta/puml/parse.hpp"

namespace fta::copilot {

inline constexpr int kDefaultMaxRepairs = 7;

struct Round {
  /// Every user message sent in this round, joined by a blank line.
  std::string prompt;
  std::string response;
  std::vector<Diagnostic> diagnostics;
  friend bool operator==(const Round&, const Round&) = default;
};

enum class Outcome { Success, Exhausted };

inline constexpr std::string_view to_string(Outcome o) { return o == Outcome::Success ? "success" : "exhausted"; }

struct RepairSession {
  std::string description;
  int max_repairs = kDefaultMaxRepairs;
  std::vector<Round> rounds;
  Outcome outcome = Outcome::Exhausted;
  /// Set when outcome is Success.
  std::optional<FaultTree> tree;
  friend bool operator==(const RepairSession&, const RepairSession&) = default;
};

/// The opening conversation: describe, add gates, convert to PlantUML.
inline std::vector<ChatMessage> candidate_messages(const std::string& component_description) {
  return {
      {"user", render(kGenerateFta, {{"component", component_description}})},
      {"user", render(kConvertToGates, {})},
      {"user", render(kConvertToUml, {})},
  };
}

/// One provider call carrying the whole opening chain. Provider errors
/// propagate.
inline std::string generate_candidate(ChatProvider& provider, const std::string& component_description) {
  return provider.complete(candidate_messages(component_description));
}

namespace detail {

inline std::string joined(const std::vector<ChatMessage>& messages) {
  std::string out;
  for (const auto& m : messages) {
    if (!out.empty()) out += "\n\n";
    out += m.content;
  }
  return out;
}

/// Reported when a reply has no @startuml/@enduml block.
inline Diagnostic no_uml_block() {
  return {0, 0, "", "no-uml-block", Severity::Error, ""};
}

struct Checked {
  std::string code;
  std::vector<Diagnostic> diagnostics;
  std::optional<FaultTree> tree;
};

inline Checked check_response(const std::string& response) {
  Checked out;
  try {
    out.code = puml::extract_uml_block(response);
  } catch (const puml::NoUmlBlock&) {
    out.code = response;
    out.diagnostics.push_back(no_uml_block());
    return out;
  }
  auto parsed = puml::parse_plantuml(out.code);
  out.diagnostics = std::move(parsed.diagnostics);
  if (!has_errors(out.diagnostics)) out.tree = std::move(parsed.tree);
  return out;
}

}  // namespace detail

/// Round 0 sends the opening chain; each later round sends the previous
/// round's rendered diagnostics and its code (only the latest, not the
/// history). Stops at the first round without Error diagnostics, or after
/// max_repairs repair rounds. Provider errors propagate.
inline RepairSession run_repair_loop(ChatProvider& provider, const std::string& component_description,
                                     int max_repairs = kDefaultMaxRepairs) {
  if (max_repairs < 0) throw Error("max_repairs must be >= 0");
  RepairSession session;
  session.description = component_description;
  session.max_repairs = max_repairs;

  auto messages = candidate_messages(component_description);
  for (int round = 0;; ++round) {
    Round r;
    r.prompt = detail::joined(messages);
    r.response = provider.complete(messages);
    auto checked = detail::check_response(r.response);
    r.diagnostics = checked.diagnostics;
    session.rounds.push_back(std::move(r));

    if (checked.tree) {
      session.outcome = Outcome::Success;
      session.tree = std::move(checked.tree);
      return session;
    }
    if (round >= max_repairs) break;
    messages = {{"user", render(kRepairError, {{"diagnostics", render_diagnostics(checked.diagnostics)},
                                               {"previous_code", checked.code}})}};
  }
  session.outcome = Outcome::Exhausted;
  return session;
}

}  // namespace fta::copilot
