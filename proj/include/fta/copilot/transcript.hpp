/// @file transcript.hpp
/// JSON transcripts of repair sessions, for offline replay.
#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "fta/copilot/provider.hpp"
#include "fta/copilot/session.hpp"

namespace fta::copilot {

class MalformedTranscript : public Error {
 public:
  explicit MalformedTranscript(const std::string& why) : Error("MalformedTranscript: " + why) {}
};

inline constexpr std::string_view kRedacted = "[REDACTED]";

namespace detail {

inline std::string scrub(std::string text, const std::string& secret) {
  if (secret.empty()) return text;
  for (auto pos = text.find(secret); pos != std::string::npos; pos = text.find(secret, pos + kRedacted.size())) {
    text.replace(pos, secret.size(), kRedacted);
  }
  return text;
}

inline bool is_credential_key(std::string key) {
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
  key.erase(std::remove_if(key.begin(), key.end(), [](char c) { return c == '_' || c == '-'; }), key.end());
  return key == "credential" || key == "apikey" || key == "authorization" || key == "token" ||
         key == "secret" || key == "bearer";
}

inline void reject_credentials(const nlohmann::json& j) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_credential_key(k)) throw MalformedTranscript("credential field '" + k + "' present");
      reject_credentials(v);
    }
  } else if (j.is_array()) {
    for (const auto& v : j) reject_credentials(v);
  }
}

inline nlohmann::ordered_json diagnostic_json(const Diagnostic& d) {
  return {{"diagram_line", d.diagram_line}, {"file_line", d.file_line}, {"text", d.offending_text},
          {"message", d.message}, {"severity", std::string(to_string(d.severity))}, {"node", d.node}};
}

}  // namespace detail

/// Transcript JSON with every occurrence of `secret` replaced by
/// [REDACTED]. The parsed tree is not stored; replay recomputes it.
inline std::string session_to_json(const RepairSession& session, const std::string& secret) {
  nlohmann::ordered_json j;
  j["format"] = "fta-transcript";
  j["version"] = 1;
  j["description"] = detail::scrub(session.description, secret);
  j["max_repairs"] = session.max_repairs;
  j["outcome"] = std::string(to_string(session.outcome));
  j["rounds"] = nlohmann::ordered_json::array();
  for (const auto& r : session.rounds) {
    nlohmann::ordered_json round;
    round["prompt"] = detail::scrub(r.prompt, secret);
    round["response"] = detail::scrub(r.response, secret);
    round["diagnostics"] = nlohmann::ordered_json::array();
    for (const auto& d : r.diagnostics) {
      auto dj = detail::diagnostic_json(d);
      dj["text"] = detail::scrub(d.offending_text, secret);
      round["diagnostics"].push_back(dj);
    }
    j["rounds"].push_back(round);
  }
  return j.dump(2) + "\n";
}

/// Writes the transcript, scrubbing `secret` (by default the
/// FTA_COPILOT_API_KEY value).
inline void record_session(const RepairSession& session, const std::string& path,
                           const std::string& secret = credential_from_env()) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write transcript: " + path);
  out << session_to_json(session, secret);
  if (!out) throw Error("cannot write transcript: " + path);
}

/// Only the responses are needed for replay; prompts and diagnostics are
/// informational. Throws MalformedTranscript.
inline ScriptedProvider provider_from_json(std::string_view text) {
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw MalformedTranscript("not valid JSON");
  if (!j.is_object()) throw MalformedTranscript("top level must be an object");
  detail::reject_credentials(j);
  if (!j.contains("rounds") || !j["rounds"].is_array()) throw MalformedTranscript("missing 'rounds' array");
  std::vector<std::string> responses;
  for (const auto& r : j["rounds"]) {
    if (!r.is_object() || !r.contains("response") || !r["response"].is_string()) {
      throw MalformedTranscript("round without a string 'response'");
    }
    responses.push_back(r["response"].get<std::string>());
  }
  return ScriptedProvider(std::move(responses));
}

inline ScriptedProvider replay_session(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedTranscript("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return provider_from_json(ss.str());
}

}  // namespace fta::copilot
