/// @file document.hpp
/// Statement-level reader for the PlantUML subset used to exchange fault
/// trees: declarations, packages, edges, notes and skin parameters.
#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fta/diagnostic.hpp"
#include "fta/parse_result.hpp"

namespace fta::puml {

/// Element keywords that declare nodes in this dialect.
enum class Keyword { Rectangle, Card, Cloud, File, Circle, Package };

inline constexpr std::string_view to_string(Keyword k) {
  switch (k) {
    case Keyword::Rectangle: return "rectangle";
    case Keyword::Card: return "card";
    case Keyword::Cloud: return "cloud";
    case Keyword::File: return "file";
    case Keyword::Circle: return "circle";
    case Keyword::Package: return "package";
  }
  return "?";
}

struct SkinParam {
  std::string name;
  std::string value;  // empty for block form
  int line = 0;       // 0-based file index
};

struct NodeDecl {
  Keyword keyword = Keyword::Rectangle;
  std::string label;
  std::string alias;
  std::optional<std::string> link;  // [[...]] target
  int line = 0;
};

struct PackageBlock {
  NodeDecl decl;
  std::vector<NodeDecl> members;
};

struct Endpoint {
  enum class Form { Alias, Quoted, Parenthesized };
  Form form = Form::Alias;
  std::string text;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

struct Edge {
  Endpoint from;
  Endpoint to;
  std::string arrow;
  std::optional<std::string> label;  // upper-cased
  int line = 0;
};

struct NoteBlock {
  std::string position;
  std::string target;
  std::vector<std::string> text;
  int line = 0;
};

using Statement = std::variant<SkinParam, NodeDecl, PackageBlock, Edge, NoteBlock>;

struct PumlDocument {
  std::string title;
  std::vector<Statement> statements;
  std::vector<std::string> source_lines;
  /// 0-based index of the `@startuml` line (0 when absent).
  int start_index = 0;
  int end_index = 0;

  /// Builds a diagnostic for the 0-based file line `index`.
  Diagnostic diagnostic(int index, std::string rule, Severity severity = Severity::Error) const {
    Diagnostic d;
    d.file_line = index + 1;
    d.diagram_line = index - start_index + 1;
    if (index >= 0 && static_cast<std::size_t>(index) < source_lines.size()) {
      d.offending_text = source_lines[index];
    }
    d.message = std::move(rule);
    d.severity = severity;
    return d;
  }
};

struct DocumentResult {
  PumlDocument document;
  std::vector<Diagnostic> diagnostics;
};

/// Edge labels understood as gate kinds, plus COND for an INHIBIT condition.
inline constexpr std::string_view kEdgeLabels[] = {"AND", "OR", "XOR", "PAND", "INHIBIT", "COND"};

namespace detail {

inline bool is_token_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

inline std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

/// PlantUML element keywords. The supported subset is mapped in
/// supported_keyword(); the rest are rejected with a diagnostic.
inline constexpr std::string_view kElementKeywords[] = {
    "rectangle", "card",      "cloud",       "file",     "circle",   "package",  "actor",
    "agent",     "artifact",  "boundary",    "collections", "component", "control", "database",
    "diamond",   "entity",    "folder",      "frame",    "hexagon",  "interface", "label",
    "node",      "person",    "queue",       "stack",    "storage",  "usecase",  "class",
    "object",    "participant", "state",     "abstract", "enum",     "note",     "map",
    "json",
};

inline bool is_element_keyword(std::string_view word) {
  return std::find(std::begin(kElementKeywords), std::end(kElementKeywords), word) !=
         std::end(kElementKeywords);
}

inline std::optional<Keyword> supported_keyword(std::string_view word) {
  for (auto k : {Keyword::Rectangle, Keyword::Card, Keyword::Cloud, Keyword::File, Keyword::Circle,
                 Keyword::Package}) {
    if (to_string(k) == word) return k;
  }
  return std::nullopt;
}

/// Small cursor over one trimmed line.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  std::string_view rest() const { return text_.substr(pos_); }

  void skip_space() {
    while (!done() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool consume(std::string_view s) {
    if (rest().substr(0, s.size()) != s) return false;
    pos_ += s.size();
    return true;
  }

  std::string_view token() {
    auto start = pos_;
    while (!done() && is_token_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::string_view word() {
    auto start = pos_;
    while (!done() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  /// Reads up to (not including) `close`; fails if `close` never appears.
  std::optional<std::string_view> until(char close) {
    auto end = text_.find(close, pos_);
    if (end == std::string_view::npos) return std::nullopt;
    auto out = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    return out;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::optional<Endpoint> read_endpoint(Cursor& c) {
  if (c.consume("\"")) {
    auto label = c.until('"');
    if (!label) return std::nullopt;
    return Endpoint{Endpoint::Form::Quoted, std::string(*label)};
  }
  if (c.consume("(")) {
    auto label = c.until(')');
    if (!label) return std::nullopt;
    return Endpoint{Endpoint::Form::Parenthesized, std::string(fta::detail::trim(*label))};
  }
  auto tok = c.token();
  if (tok.empty()) return std::nullopt;
  return Endpoint{Endpoint::Form::Alias, std::string(tok)};
}

/// Arrows: "--", "-->", "->", "-down->", "-down-", "---", ...
inline std::optional<std::string> read_arrow(Cursor& c) {
  std::string arrow;
  while (c.consume("-")) arrow += '-';
  if (arrow.empty()) return std::nullopt;
  if (std::isalpha(static_cast<unsigned char>(c.peek()))) {
    auto dir = c.word();
    if (dir != "up" && dir != "down" && dir != "left" && dir != "right" && dir != "u" &&
        dir != "d" && dir != "l" && dir != "r") {
      return std::nullopt;
    }
    arrow += dir;
    if (c.peek() != '-') return std::nullopt;
    while (c.consume("-")) arrow += '-';
  }
  if (c.consume(">")) arrow += '>';
  if (arrow.size() < 2) return std::nullopt;
  return arrow;
}

/// Outcome of reading one declaration or edge line.
struct LineResult {
  std::optional<Statement> statement;
  std::string error;  // rule name when the line is rejected
  bool opens_block = false;
};

inline LineResult read_declaration(Keyword keyword, Cursor& c, int line) {
  LineResult r;
  NodeDecl decl;
  decl.keyword = keyword;
  decl.line = line;
  c.skip_space();
  if (c.consume("\"")) {
    auto label = c.until('"');
    if (!label) return {std::nullopt, "unterminated-string"};
    decl.label = std::string(*label);
    c.skip_space();
    if (c.consume("as ") || c.consume("as\t")) {
      c.skip_space();
      decl.alias = std::string(c.token());
      if (decl.alias.empty()) return {std::nullopt, "missing-alias"};
    }
  } else {
    decl.alias = std::string(c.token());
    if (decl.alias.empty()) return {std::nullopt, "missing-alias"};
    decl.label = decl.alias;
  }
  c.skip_space();
  if (c.consume("[[")) {
    auto end = c.rest().find("]]");
    if (end == std::string_view::npos) return {std::nullopt, "unterminated-link"};
    decl.link = std::string(fta::detail::trim(c.rest().substr(0, end)));
    c.consume(c.rest().substr(0, end + 2));
    c.skip_space();
  }
  if (c.peek() == '<' || c.peek() == '#') return {std::nullopt, "unsupported-feature"};
  if (keyword == Keyword::Package && c.consume("{")) {
    r.opens_block = true;
    c.skip_space();
  }
  if (!c.done()) {
    if (c.rest().find("--") != std::string_view::npos || c.rest().find("->") != std::string_view::npos) {
      return {std::nullopt, "inline-keyword"};
    }
    return {std::nullopt, c.peek() == '{' ? "unsupported-feature" : "unknown-directive"};
  }
  if (keyword == Keyword::Package) {
    r.statement = PackageBlock{std::move(decl), {}};
  } else {
    r.statement = std::move(decl);
  }
  return r;
}

inline LineResult read_edge(Cursor& c, int line) {
  Edge edge;
  edge.line = line;
  auto from = read_endpoint(c);
  if (!from) return {std::nullopt, "unknown-directive"};
  c.skip_space();
  auto arrow = read_arrow(c);
  if (!arrow) return {std::nullopt, "unknown-directive"};
  c.skip_space();
  {
    Cursor probe = c;
    auto w = probe.word();
    if (is_element_keyword(w) && (probe.peek() == ' ' || probe.peek() == '"' || probe.peek() == '\t')) {
      return {std::nullopt, "inline-keyword"};
    }
  }
  auto to = read_endpoint(c);
  if (!to) return {std::nullopt, "unknown-directive"};
  c.skip_space();
  if (c.consume(":")) {
    c.skip_space();
    auto label = upper(fta::detail::trim(c.rest()));
    if (std::find(std::begin(kEdgeLabels), std::end(kEdgeLabels), label) == std::end(kEdgeLabels)) {
      return {std::nullopt, "unsupported-edge-label"};
    }
    edge.label = label;
  } else if (!c.done()) {
    return {std::nullopt, "unknown-directive"};
  }
  edge.from = std::move(*from);
  edge.to = std::move(*to);
  edge.arrow = std::move(*arrow);
  return {Statement{std::move(edge)}, {}};
}

inline bool starts_with_word(std::string_view line, std::string_view word) {
  return line.substr(0, word.size()) == word &&
         (line.size() == word.size() || line[word.size()] == ' ' || line[word.size()] == '\t');
}

}  // namespace detail

/// Reads statements between `@startuml` and `@enduml`; text outside the
/// pair is ignored. Never throws on malformed input: every rejected line
/// becomes an Error diagnostic.
inline DocumentResult read_document(std::string_view source) {
  using namespace detail;
  DocumentResult result;
  PumlDocument& doc = result.document;
  doc.source_lines = fta::detail::split_lines(source);
  const int n = static_cast<int>(doc.source_lines.size());
  auto error = [&](int index, std::string rule) {
    result.diagnostics.push_back(doc.diagnostic(index, std::move(rule)));
  };

  int start = -1;
  for (int i = 0; i < n; ++i) {
    if (starts_with_word(fta::detail::trim(doc.source_lines[i]), "@startuml")) {
      start = i;
      break;
    }
  }
  if (start < 0) {
    int first = 0;
    while (first < n && fta::detail::trim(doc.source_lines[first]).empty()) ++first;
    error(first < n ? first : 0, "missing-startuml");
    return result;
  }
  doc.start_index = start;
  doc.title = std::string(fta::detail::trim(fta::detail::trim(doc.source_lines[start]).substr(9)));

  enum class Block { None, Skin, Note, Comment };
  Block block = Block::None;
  int skin_depth = 0;
  std::optional<PackageBlock> package;
  NoteBlock note;
  int end = -1;

  for (int i = start + 1; i < n && end < 0; ++i) {
    const std::string_view line = fta::detail::trim(doc.source_lines[i]);
    switch (block) {
      case Block::Skin:
        if (line.find('{') != std::string_view::npos) ++skin_depth;
        if (line.find('}') != std::string_view::npos && --skin_depth == 0) block = Block::None;
        if (starts_with_word(line, "@enduml")) {
          error(i, "unterminated-block");
          end = i;
        }
        continue;
      case Block::Note:
        if (line == "end note" || line == "endnote") {
          doc.statements.emplace_back(std::move(note));
          note = {};
          block = Block::None;
        } else if (starts_with_word(line, "@enduml")) {
          error(i, "unterminated-block");
          end = i;
        } else {
          note.text.emplace_back(line);
        }
        continue;
      case Block::Comment:
        if (line.size() >= 2 && line.substr(line.size() - 2) == "'/") block = Block::None;
        continue;
      case Block::None:
        break;
    }

    if (line.empty() || line.front() == '\'') continue;
    if (line.substr(0, 2) == "/'") {
      if (line.size() < 4 || line.substr(line.size() - 2) != "'/") block = Block::Comment;
      continue;
    }
    if (starts_with_word(line, "@enduml")) {
      end = i;
      break;
    }
    if (line == "}") {
      if (package) {
        doc.statements.emplace_back(std::move(*package));
        package.reset();
      } else {
        error(i, "unbalanced-brace");
      }
      continue;
    }
    if (starts_with_word(line, "skinparam")) {
      Cursor c(line.substr(9));
      c.skip_space();
      SkinParam skin{std::string(c.token()), {}, i};
      c.skip_space();
      if (skin.name.empty()) {
        error(i, "unknown-directive");
      } else if (c.rest() == "{") {
        block = Block::Skin;
        skin_depth = 1;
        doc.statements.emplace_back(std::move(skin));
      } else if (c.done()) {
        error(i, "unknown-directive");
      } else {
        skin.value = std::string(c.rest());
        doc.statements.emplace_back(std::move(skin));
      }
      continue;
    }
    if (starts_with_word(line, "note")) {
      Cursor c(line.substr(4));
      c.skip_space();
      auto pos = c.word();
      c.skip_space();
      bool ok = (pos == "bottom" || pos == "top" || pos == "left" || pos == "right") && c.consume("of");
      c.skip_space();
      auto target = ok ? c.token() : std::string_view{};
      c.skip_space();
      if (!ok || target.empty()) {
        error(i, "unsupported-feature");
        continue;
      }
      note = NoteBlock{std::string(pos), std::string(target), {}, i};
      if (c.consume(":")) {
        note.text.emplace_back(fta::detail::trim(c.rest()));
        doc.statements.emplace_back(std::move(note));
        note = {};
      } else if (c.done()) {
        block = Block::Note;
      } else {
        error(i, "unknown-directive");
      }
      continue;
    }

    if (starts_with_word(line, "title")) {
      auto text = fta::detail::trim(line.substr(5));
      if (text.empty()) {
        error(i, "unknown-directive");
      } else {
        doc.title = std::string(text);
      }
      continue;
    }

    Cursor c(line);
    auto first = Cursor(line).word();
    LineResult r;
    if (auto kw = supported_keyword(first); kw && starts_with_word(line, first)) {
      c.consume(first);
      r = read_declaration(*kw, c, i);
      if (r.statement && package && *kw == Keyword::Package) r = {std::nullopt, "nested-package"};
    } else if (is_element_keyword(first) && starts_with_word(line, first)) {
      r = {std::nullopt, "unsupported-element"};
    } else if (first == "left" || first == "top" || first == "hide" ||
               first == "show" || first == "legend" || first == "header" || first == "footer" ||
               line.front() == '!') {
      r = {std::nullopt, "unknown-directive"};
    } else {
      r = read_edge(c, i);
    }

    if (!r.statement) {
      error(i, r.error);
      continue;
    }
    if (auto* pkg = std::get_if<PackageBlock>(&*r.statement)) {
      if (r.opens_block) {
        package = std::move(*pkg);
      } else {
        doc.statements.emplace_back(std::move(*r.statement));
      }
    } else if (auto* decl = std::get_if<NodeDecl>(&*r.statement); decl && package) {
      package->members.push_back(*decl);
      doc.statements.emplace_back(std::move(*r.statement));
    } else {
      doc.statements.emplace_back(std::move(*r.statement));
    }
  }

  if (end < 0) {
    error(n - 1, "missing-enduml");
  } else if (package) {
    error(package->decl.line, "unbalanced-brace");
  }
  doc.end_index = end < 0 ? n - 1 : end;
  return result;
}

}  // namespace fta::puml
