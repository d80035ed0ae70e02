/// @file prompts.hpp
/// Prompt templates for the generate and repair conversation.
#pragma once

#include <map>
#include <string>
#include <string_view>

#include "fta/core/errors.hpp"

namespace fta::copilot {

enum class PromptName { GenerateFta, ConvertToGates, ConvertToUml, RepairError };

struct PromptTemplate {
  PromptName name;
  std::string_view body;
};

class TemplateError : public Error {
 public:
  using Error::Error;
};

inline constexpr PromptTemplate kGenerateFta{PromptName::GenerateFta, "Generate FTA for {component}"};

inline constexpr PromptTemplate kConvertToGates{
    PromptName::ConvertToGates,
    "Redraw that fault tree with an explicit AND or OR gate between every event and its causes."};

inline constexpr PromptTemplate kConvertToUml{
    PromptName::ConvertToUml,
    "Write the fault tree as PlantUML code in a single @startuml ... @enduml block."};

inline constexpr PromptTemplate kRepairError{
    PromptName::RepairError,
    "The PlantUML code below fails to render:\n"
    "{diagnostics}"
    "Fix it and reply with the complete corrected diagram.\n"
    "\n"
    "{previous_code}"};

inline constexpr const PromptTemplate& prompt_template(PromptName name) {
  switch (name) {
    case PromptName::GenerateFta: return kGenerateFta;
    case PromptName::ConvertToGates: return kConvertToGates;
    case PromptName::ConvertToUml: return kConvertToUml;
    case PromptName::RepairError: return kRepairError;
  }
  return kGenerateFta;
}

using PromptVars = std::map<std::string, std::string, std::less<>>;

/// Replaces every `{name}` with vars[name]. Substituted values are not
/// rescanned. Throws TemplateError for a placeholder without a value or an
/// unclosed brace.
inline std::string render(const PromptTemplate& tmpl, const PromptVars& vars) {
  std::string out;
  std::string_view body = tmpl.body;
  std::size_t i = 0;
  while (i < body.size()) {
    auto open = body.find('{', i);
    if (open == std::string_view::npos) {
      out += body.substr(i);
      break;
    }
    out += body.substr(i, open - i);
    auto close = body.find('}', open);
    if (close == std::string_view::npos) throw TemplateError("unclosed placeholder in template");
    auto key = body.substr(open + 1, close - open - 1);
    auto it = vars.find(key);
    if (it == vars.end()) throw TemplateError("unresolved placeholder {" + std::string(key) + "}");
    out += it->second;
    i = close + 1;
  }
  return out;
}

}  // namespace fta::copilot
