#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fta/core/types.hpp"
#include "fta/diagnostic.hpp"

namespace fta {

/// Outcome of reading a tree from text. `tree` is set iff `diagnostics`
/// holds no Error; warnings may accompany a tree.
struct ParseResult {
  std::optional<FaultTree> tree;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return tree.has_value(); }
};

namespace detail {

/// Splits on '\n', dropping a trailing '\r' from each line. A final empty
/// segment after the last newline is not a line.
inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = end + 1;
  }
  return lines;
}

inline std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace detail

}  // namespace fta
