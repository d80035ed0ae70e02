/// @file probability.hpp
/// Top-event probability under independent leaf events.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fta/core/indexed_tree.hpp"
#include "fta/diagnostic.hpp"

namespace fta {

using ProbabilityMap = std::map<std::string, double, std::less<>>;

struct ProbabilityResult {
  double value = 0.0;
  /// Set when shared events exceeded the enumeration budget and the
  /// independence formulas were applied anyway.
  bool approximate = false;
  /// Non-fatal findings (PAND treated as AND, approximation used).
  std::vector<Diagnostic> warnings;
};

/// Largest number of shared events handled by exact enumeration.
inline constexpr std::size_t kMaxEnumeratedSharedEvents = 20;

namespace detail {

/// Propagates probabilities bottom-up with the independence formulas.
/// `q` holds variable probabilities on entry; gate entries are filled in.
inline double propagate(const IndexedTree& t, int i, std::vector<double>& q, std::vector<char>& done) {
  if (done[i]) return q[i];
  double result = 0.0;
  if (t.is_gate(i)) {
    const auto& kids = t.children[i];
    switch (t.gate_kind(i)) {
      case GateKind::Or: {
        double none = 1.0;
        for (int c : kids) none *= 1.0 - propagate(t, c, q, done);
        result = 1.0 - none;
        break;
      }
      case GateKind::And:
      case GateKind::PriorityAnd:
        result = 1.0;
        for (int c : kids) result *= propagate(t, c, q, done);
        break;
      case GateKind::Xor: {
        std::vector<double> p;
        for (int c : kids) p.push_back(propagate(t, c, q, done));
        for (std::size_t k = 0; k < p.size(); ++k) {
          double term = p[k];
          for (std::size_t j = 0; j < p.size(); ++j) {
            if (j != k) term *= 1.0 - p[j];
          }
          result += term;
        }
        break;
      }
      case GateKind::Inhibit:
        result = propagate(t, kids.front(), q, done) * propagate(t, t.condition[i], q, done);
        break;
    }
  }
  q[i] = result;
  done[i] = 1;
  return result;
}

inline double propagate_all(const IndexedTree& t, std::vector<double> q) {
  std::vector<char> done(t.nodes.size(), 0);
  for (int v : t.variables) done[v] = 1;
  return propagate(t, t.top, q, done);
}

/// Variables reachable from the top along more than one path.
inline std::vector<int> shared_variables(const IndexedTree& t) {
  // Preorder is not topological for DAGs; derive a topological order.
  std::vector<int> order;
  std::vector<char> state(t.nodes.size(), 0);
  std::vector<std::pair<int, std::size_t>> stack{{t.top, 0}};
  state[t.top] = 1;
  while (!stack.empty()) {
    auto& [node, pos] = stack.back();
    std::vector<int> next = t.children[node];
    if (t.condition[node] >= 0) next.push_back(t.condition[node]);
    if (pos < next.size()) {
      int c = next[pos++];
      if (!state[c]) {
        state[c] = 1;
        stack.emplace_back(c, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }
  std::reverse(order.begin(), order.end());

  std::vector<int> paths(t.nodes.size(), 0);
  paths[t.top] = 1;
  for (int n : order) {
    auto add = [&](int c) { paths[c] = std::min(2, paths[c] + paths[n]); };
    for (int c : t.children[n]) add(c);
    if (t.condition[n] >= 0) add(t.condition[n]);
  }
  std::vector<int> shared;
  for (int v : t.variables) {
    if (paths[v] > 1) shared.push_back(v);
  }
  return shared;
}

}  // namespace detail

/// Computes P(top) assuming leaf events are statistically independent.
///
/// AND multiplies, OR takes 1 - prod(1 - p), XOR sums the exactly-one
/// terms, INHIBIT multiplies input and condition. PAND is computed as AND
/// and flagged with a warning. When an event feeds the top along several
/// paths the formulas no longer factor, so the shared events are
/// enumerated exhaustively (exact up to kMaxEnumeratedSharedEvents of
/// them; beyond that the factorized value is returned with `approximate`).
///
/// A probability in `probs` overrides the node's own. Throws
/// MissingProbability, ProbabilityOutOfRange, InvalidTree or
/// UnresolvedTransfer.
inline ProbabilityResult top_probability(const FaultTree& tree, const ProbabilityMap& probs = {}) {
  auto t = detail::index_tree(tree);
  ProbabilityResult result;

  std::vector<double> q(t.nodes.size(), 0.0);
  for (int v : t.variables) {
    const EventNode& node = *t.nodes[v];
    double p = 0.0;
    if (auto it = probs.find(node.id); it != probs.end()) {
      p = it->second;
    } else if (node.probability) {
      p = *node.probability;
    } else {
      throw MissingProbability(node.id);
    }
    if (!(p >= 0.0 && p <= 1.0)) throw ProbabilityOutOfRange(node.id, p);
    q[v] = p;
  }

  for (const auto* node : t.nodes) {
    if (node->gate && node->gate->kind == GateKind::PriorityAnd) {
      result.warnings.push_back(detail::finding(node->id, "priority-and-as-and", Severity::Warning));
    }
  }

  auto shared = detail::shared_variables(t);
  if (shared.empty()) {
    result.value = detail::propagate_all(t, q);
  } else if (shared.size() <= kMaxEnumeratedSharedEvents) {
    const std::uint64_t outcomes = std::uint64_t{1} << shared.size();
    double total = 0.0;
    for (std::uint64_t mask = 0; mask < outcomes; ++mask) {
      std::vector<double> fixed = q;
      double weight = 1.0;
      for (std::size_t k = 0; k < shared.size(); ++k) {
        bool on = (mask >> k) & 1U;
        double p = q[shared[k]];
        weight *= on ? p : 1.0 - p;
        fixed[shared[k]] = on ? 1.0 : 0.0;
      }
      if (weight == 0.0) continue;
      total += weight * detail::propagate_all(t, std::move(fixed));
    }
    result.value = total;
  } else {
    result.value = detail::propagate_all(t, q);
    result.approximate = true;
    result.warnings.push_back(detail::finding(tree.top, "approximate-result", Severity::Warning));
  }
  result.value = std::clamp(result.value, 0.0, 1.0);
  return result;
}

}  // namespace fta
