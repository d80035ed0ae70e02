/// @file transfer.hpp
/// Inlining of transfer-in references across a set of related trees.
#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "fta/core/errors.hpp"
#include "fta/core/types.hpp"

namespace fta {

namespace detail {

inline const FaultTree* find_tree(const std::vector<FaultTree>& trees, std::string_view title) {
  auto it = std::find_if(trees.begin(), trees.end(),
                         [&](const FaultTree& t) { return t.title == title; });
  return it == trees.end() ? nullptr : &*it;
}

inline std::string unique_id(const FaultTree& tree, std::string id) {
  if (!tree.find(id)) return id;
  for (int n = 2;; ++n) {
    auto candidate = id + "_" + std::to_string(n);
    if (!tree.find(candidate)) return candidate;
  }
}

inline FaultTree resolve(const std::vector<FaultTree>& trees, const FaultTree& tree,
                         std::vector<std::string>& chain) {
  FaultTree out = tree;
  std::vector<std::string> transfers;
  for (const auto& [id, node] : tree.nodes) {
    if (node.kind == EventKind::TransferIn) transfers.push_back(id);
  }

  for (const auto& transfer_id : transfers) {
    const std::string target_name = tree.at(transfer_id).transfer_target;
    const FaultTree* target = find_tree(trees, target_name);
    if (!target) throw UnknownTransferTarget(target_name);
    if (std::find(chain.begin(), chain.end(), target_name) != chain.end()) {
      auto cycle = chain;
      cycle.push_back(target_name);
      throw TransferCycle(std::move(cycle));
    }
    chain.push_back(target_name);
    FaultTree inlined = resolve(trees, *target, chain);
    chain.pop_back();

    // The grafted top keeps the transfer node's id so parent references
    // stay intact; every other copied id gets the transfer id appended.
    std::map<std::string, std::string, std::less<>> rename;
    for (const auto& [id, node] : inlined.nodes) {
      rename[id] = id == inlined.top ? transfer_id
                                     : unique_id(out, id + "__" + transfer_id);
    }
    out.nodes.erase(transfer_id);
    for (const auto& [id, node] : inlined.nodes) {
      EventNode copy = node;
      copy.id = rename.at(id);
      if (id == inlined.top) {
        copy.kind = copy.has_children() ? EventKind::Intermediate : EventKind::Basic;
      }
      if (copy.gate) {
        for (auto& c : copy.gate->children) c = rename.at(c);
        if (copy.gate->condition) copy.gate->condition = rename.at(*copy.gate->condition);
      }
      out.put(std::move(copy));
    }
  }
  return out;
}

}  // namespace detail

/// Returns the tree titled `root_title` with every TransferIn replaced by
/// a copy of the referenced tree (matched by title), recursively. The
/// grafted top takes the transfer node's id; other copied ids are
/// suffixed with "__<transfer id>". Throws UnknownTransferTarget or
/// TransferCycle.
inline FaultTree resolve_transfers(const std::vector<FaultTree>& trees, std::string_view root_title) {
  const FaultTree* root = detail::find_tree(trees, root_title);
  if (!root) throw UnknownTransferTarget(std::string(root_title));
  std::vector<std::string> chain{root->title};
  return detail::resolve(trees, *root, chain);
}

/// Treats the first tree as the root.
inline FaultTree resolve_transfers(const std::vector<FaultTree>& trees) {
  if (trees.empty()) throw Error("resolve_transfers: no trees given");
  return resolve_transfers(trees, trees.front().title);
}

}  // namespace fta
