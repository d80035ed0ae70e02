/// @file errors.hpp
/// Exceptions raised by fault-tree operations.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fta/diagnostic.hpp"

namespace fta {

/// Base of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation that needs a valid tree was handed one with Error findings.
class InvalidTree : public Error {
 public:
  explicit InvalidTree(std::vector<Diagnostic> findings)
      : Error("invalid fault tree: " + summarize(findings)), findings_(std::move(findings)) {}

  const std::vector<Diagnostic>& findings() const { return findings_; }

 private:
  static std::string summarize(const std::vector<Diagnostic>& ds) {
    std::string out;
    for (const auto& d : ds) {
      if (d.severity != Severity::Error) continue;
      if (!out.empty()) out += "; ";
      out += d.message + " (" + d.node + ")";
    }
    return out;
  }

  std::vector<Diagnostic> findings_;
};

class UnresolvedTransfer : public Error {
 public:
  explicit UnresolvedTransfer(std::string target)
      : Error("unresolved transfer to '" + target + "'"), target_(std::move(target)) {}
  const std::string& target() const { return target_; }

 private:
  std::string target_;
};

class MissingAssignment : public Error {
 public:
  explicit MissingAssignment(std::string id)
      : Error("no truth value for event '" + id + "'"), id_(std::move(id)) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class MissingProbability : public Error {
 public:
  explicit MissingProbability(std::string id)
      : Error("MissingProbability: no probability for event '" + id + "'"), id_(std::move(id)) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class ProbabilityOutOfRange : public Error {
 public:
  ProbabilityOutOfRange(std::string id, double value)
      : Error("ProbabilityOutOfRange: probability " + std::to_string(value) + " of event '" + id +
              "' is outside [0, 1]"),
        id_(std::move(id)) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class UnknownTransferTarget : public Error {
 public:
  explicit UnknownTransferTarget(std::string name)
      : Error("unknown transfer target '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class TransferCycle : public Error {
 public:
  explicit TransferCycle(std::vector<std::string> chain)
      : Error("transfer cycle: " + join(chain)), chain_(std::move(chain)) {}
  const std::vector<std::string>& chain() const { return chain_; }

 private:
  static std::string join(const std::vector<std::string>& chain) {
    std::string out;
    for (const auto& name : chain) {
      if (!out.empty()) out += " -> ";
      out += name;
    }
    return out;
  }

  std::vector<std::string> chain_;
};

}  // namespace fta
