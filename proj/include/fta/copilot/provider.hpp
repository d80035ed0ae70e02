/// @file provider.hpp
/// Chat providers: a chat-completion HTTP client and a scripted replayer.
#pragma once

#include <chrono>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "httplib.h"
#include "json.hpp"

#include "fta/core/errors.hpp"

namespace fta::copilot {

struct ChatMessage {
  std::string role;
  std::string content;
  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

inline constexpr const char* kCredentialEnv = "FTA_COPILOT_API_KEY";

class ProviderUnreachable : public Error {
 public:
  using Error::Error;
};

class ProviderError : public Error {
 public:
  ProviderError(int status, std::string body)
      : Error("ProviderError(" + std::to_string(status) + "): " + (body.empty() ? "<empty body>" : body)),
        status_(status),
        body_(std::move(body)) {}
  int status() const { return status_; }
  const std::string& body() const { return body_; }
  bool empty_body() const { return body_.empty(); }

 private:
  int status_;
  std::string body_;
};

class Timeout : public Error {
 public:
  using Error::Error;
};

class ExhaustedScript : public Error {
 public:
  explicit ExhaustedScript(std::size_t recorded)
      : Error("ExhaustedScript: all " + std::to_string(recorded) + " recorded responses used") {}
};

class ChatProvider {
 public:
  virtual ~ChatProvider() = default;
  /// Sends the conversation and returns the assistant's reply text.
  virtual std::string complete(const std::vector<ChatMessage>& messages) = 0;
};

struct HttpConfig {
  /// Full URL of the chat-completions endpoint, e.g.
  /// https://api.example.com/v1/chat/completions
  std::string endpoint;
  std::string model;
  std::string credential;
  std::chrono::milliseconds timeout{60000};
};

/// Credential from FTA_COPILOT_API_KEY, empty when unset.
inline std::string credential_from_env() {
  const char* v = std::getenv(kCredentialEnv);
  return v ? v : "";
}

namespace detail {

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

inline Url split_url(const std::string& url) {
  auto scheme = url.find("://");
  if (scheme == std::string::npos) throw ProviderUnreachable("endpoint is not an absolute URL: " + url);
  auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace detail

/// POSTs {"model", "messages"} and reads choices[0].message.content.
class HttpChatProvider : public ChatProvider {
 public:
  explicit HttpChatProvider(HttpConfig config) : config_(std::move(config)) {}

  std::string complete(const std::vector<ChatMessage>& messages) override {
    auto url = detail::split_url(config_.endpoint);
    httplib::Client client(url.origin);
    if (!client.is_valid()) throw ProviderUnreachable("unsupported endpoint: " + config_.endpoint);
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    nlohmann::json body{{"model", config_.model}, {"messages", nlohmann::json::array()}};
    for (const auto& m : messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});
    httplib::Headers headers;
    if (!config_.credential.empty()) headers.emplace("Authorization", "Bearer " + config_.credential);

    auto res = client.Post(url.path, headers, body.dump(), "application/json");
    if (!res) {
      auto err = res.error();
      if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read) {
        throw Timeout("Timeout: no reply from " + config_.endpoint + " (" + httplib::to_string(err) + ")");
      }
      throw ProviderUnreachable("ProviderUnreachable: " + config_.endpoint + " (" + httplib::to_string(err) + ")");
    }
    if (res->status < 200 || res->status >= 300 || res->body.empty()) {
      throw ProviderError(res->status, res->body);
    }
    auto reply = nlohmann::json::parse(res->body, nullptr, false);
    try {
      if (!reply.is_discarded()) return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception&) {
    }
    throw ProviderError(res->status, res->body);
  }

 private:
  HttpConfig config_;
};

/// Returns recorded responses in order and remembers what it was sent.
class ScriptedProvider : public ChatProvider {
 public:
  explicit ScriptedProvider(std::vector<std::string> responses) : responses_(std::move(responses)) {}

  std::string complete(const std::vector<ChatMessage>& messages) override {
    if (next_ >= responses_.size()) throw ExhaustedScript(responses_.size());
    requests_.push_back(messages);
    return responses_[next_++];
  }

  std::size_t calls() const { return next_; }
  const std::vector<std::vector<ChatMessage>>& requests() const { return requests_; }
  const std::vector<std::string>& responses() const { return responses_; }

 private:
  std::vector<std::string> responses_;
  std::vector<std::vector<ChatMessage>> requests_;
  std::size_t next_ = 0;
};

}  // namespace fta::copilot
