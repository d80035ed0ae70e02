/// @file cut_sets.hpp
/// Minimal cut sets by top-down (MOCUS-style) gate expansion.
#pragma once

#include <algorithm>
#include <deque>
#include <set>
#include <string>
#include <vector>

#include "fta/core/indexed_tree.hpp"

namespace fta {

struct CutSet {
  /// Sorted event ids.
  std::vector<std::string> members;

  friend bool operator==(const CutSet&, const CutSet&) = default;
  friend auto operator<=>(const CutSet&, const CutSet&) = default;
};

struct CutSetResult {
  /// Minimal sets, ordered lexicographically by member ids.
  std::vector<CutSet> sets;
  /// True when an XOR gate was expanded and its negated inputs dropped,
  /// i.e. the sets are the coherent approximation of a non-coherent tree.
  bool negations_dropped = false;
};

namespace detail {

using Row = std::vector<int>;

inline Row replace_in_row(const Row& row, int gate, const std::vector<int>& with) {
  Row out;
  out.reserve(row.size() + with.size());
  for (int x : row) {
    if (x != gate) out.push_back(x);
  }
  out.insert(out.end(), with.begin(), with.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Drops every row that is a superset of another row.
inline std::vector<Row> minimize(std::set<Row> rows) {
  std::vector<Row> by_size(rows.begin(), rows.end());
  std::stable_sort(by_size.begin(), by_size.end(),
                   [](const Row& a, const Row& b) { return a.size() < b.size(); });
  std::vector<Row> kept;
  for (const auto& row : by_size) {
    bool absorbed = std::any_of(kept.begin(), kept.end(), [&](const Row& k) {
      return std::includes(row.begin(), row.end(), k.begin(), k.end());
    });
    if (!absorbed) kept.push_back(row);
  }
  return kept;
}

}  // namespace detail

/// Expands the top event downward: OR and XOR split a row into one row
/// per input, AND, PAND and INHIBIT replace the gate by all of their
/// inputs (INHIBIT includes its condition). Rows that end up containing a
/// non-variable node (a TransferOut marker, an undeveloped top) can never
/// occur and are discarded. The surviving rows are subset-minimized.
///
/// XOR keeps only the positive literal of its exactly-one expansion, which
/// is exact for trees where XOR inputs share no events. Throws InvalidTree
/// or UnresolvedTransfer.
inline CutSetResult minimal_cut_sets(const FaultTree& tree) {
  using detail::Row;
  auto t = detail::index_tree(tree);
  CutSetResult result;

  std::set<Row> finished;
  std::set<Row> visited;
  std::deque<Row> work{Row{t.top}};
  while (!work.empty()) {
    Row row = std::move(work.front());
    work.pop_front();
    auto gate_it = std::find_if(row.begin(), row.end(), [&](int i) { return t.is_gate(i); });
    if (gate_it == row.end()) {
      bool all_variables = std::all_of(row.begin(), row.end(),
                                       [&](int i) { return is_variable(t.nodes[i]->kind); });
      if (all_variables) finished.insert(std::move(row));
      continue;
    }
    int gate = *gate_it;
    auto push = [&](Row next) {
      if (visited.insert(next).second) work.push_back(std::move(next));
    };
    switch (t.gate_kind(gate)) {
      case GateKind::Xor:
        result.negations_dropped = true;
        [[fallthrough]];
      case GateKind::Or:
        for (int c : t.children[gate]) push(detail::replace_in_row(row, gate, {c}));
        break;
      case GateKind::And:
      case GateKind::PriorityAnd:
        push(detail::replace_in_row(row, gate, t.children[gate]));
        break;
      case GateKind::Inhibit:
        push(detail::replace_in_row(row, gate, {t.children[gate].front(), t.condition[gate]}));
        break;
    }
  }

  for (const auto& row : detail::minimize(std::move(finished))) {
    CutSet cs;
    for (int i : row) cs.members.push_back(t.nodes[i]->id);
    std::sort(cs.members.begin(), cs.members.end());
    result.sets.push_back(std::move(cs));
  }
  std::sort(result.sets.begin(), result.sets.end());
  return result;
}

}  // namespace fta
