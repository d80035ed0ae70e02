/// @file diagnostic.hpp
/// Parse and validation findings, rendered in the PlantUML previewer format.
#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace fta {

enum class Severity { Error, Warning };

inline constexpr std::string_view to_string(Severity s) {
  return s == Severity::Error ? "Error" : "Warning";
}

struct Diagnostic {
  /// 1-based, counted from the `@startuml` line. 0 when no source exists.
  int diagram_line = 0;
  /// 1-based absolute line in the file. 0 when no source exists.
  int file_line = 0;
  /// The source line verbatim, or the node id for tree-level findings.
  std::string offending_text;
  /// Rule name, e.g. "arity" or "unknown-directive".
  std::string message;
  Severity severity = Severity::Error;
  /// Node the finding is about, when there is one.
  std::string node;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Three lines, each newline-terminated:
///
///     Syntax Error? (@ Diagram Line 26, File Line 27)
///     "HardwareOR -- rectangle "Detector malfunction""
///     (Error)
inline std::string render_diagnostic(const Diagnostic& d) {
  std::string out = "Syntax Error? (@ Diagram Line " + std::to_string(d.diagram_line) +
                    ", File Line " + std::to_string(d.file_line) + ")\n";
  out += '"';
  out += d.offending_text;
  out += "\"\n(";
  out += to_string(d.severity);
  out += ")\n";
  return out;
}

inline std::string render_diagnostics(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) out += render_diagnostic(d);
  return out;
}

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  return std::any_of(ds.begin(), ds.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

}  // namespace fta
