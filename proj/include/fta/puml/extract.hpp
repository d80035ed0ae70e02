/// @file extract.hpp
/// Pulls the PlantUML block out of a chat reply.
#pragma once

#include <string>
#include <string_view>

#include "fta/core/errors.hpp"
#include "fta/parse_result.hpp"

namespace fta::puml {

class NoUmlBlock : public Error {
 public:
  NoUmlBlock() : Error("no @startuml/@enduml block in response") {}
};

namespace detail {

/// Strips leading whitespace and any code-fence backticks.
inline std::string_view unfenced(std::string_view line) {
  line = fta::detail::trim(line);
  while (!line.empty() && line.front() == '`') line.remove_prefix(1);
  while (!line.empty() && line.back() == '`') line.remove_suffix(1);
  return fta::detail::trim(line);
}

}  // namespace detail

/// Returns the first `@startuml` line through the next `@enduml` line,
/// newline-terminated, with any fence markers on those two lines removed.
/// Lines in between are kept verbatim. Throws NoUmlBlock.
inline std::string extract_uml_block(std::string_view response) {
  auto lines = fta::detail::split_lines(response);
  std::size_t start = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::unfenced(lines[i]).substr(0, 9) == "@startuml") {
      start = i;
      break;
    }
  }
  for (std::size_t i = start + 1; i < lines.size(); ++i) {
    if (detail::unfenced(lines[i]).substr(0, 7) != "@enduml") continue;
    std::string out = std::string(detail::unfenced(lines[start])) + "\n";
    for (std::size_t k = start + 1; k < i; ++k) out += lines[k] + "\n";
    out += std::string(detail::unfenced(lines[i])) + "\n";
    return out;
  }
  throw NoUmlBlock();
}

}  // namespace fta::puml
