#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hicl/error.hpp"

namespace hicl {

using NodeId = int;

// Rooted class tree. Built once from "parent child" edge pairs, immutable
// afterwards, so concurrent reads are safe. Leaves are the classification
// targets; children keep first-appearance order, which fixes every
// downstream tie-break.
class Hierarchy {
public:
  Hierarchy() = default;

  // One edge per non-blank line: "parent child", both non-negative integers.
  // The root is the unique node that never appears as a child.
  static Hierarchy parse(const std::vector<std::string>& lines);
  static Hierarchy from_edges(const std::vector<std::pair<NodeId, NodeId>>& edges);

  // Emits edges in depth-first order from the root; parse(serialize()) is
  // the identity on valid trees.
  std::string serialize() const;

  NodeId root() const { return root_; }
  bool contains(NodeId n) const;
  bool is_leaf(NodeId n) const;
  std::optional<NodeId> parent(NodeId n) const;          // nullopt for root
  const std::vector<NodeId>& children(NodeId n) const;   // file order
  const std::vector<NodeId>& leaves() const { return leaves_; }  // ascending
  std::vector<NodeId> all_nodes() const;                 // ascending
  std::size_t node_count() const { return nodes_.size(); }
  int depth(NodeId n) const;                             // root is 0

  // All leaves in n's subtree, ascending; {n} when n is itself a leaf.
  std::vector<NodeId> leaf_descendants(NodeId n) const;
  // Path from n's parent up to the root inclusive; empty for the root.
  std::vector<NodeId> ancestors(NodeId n) const;
  // Number of edges on the unique a-b path, via LCA with precomputed depths.
  int tree_distance(NodeId a, NodeId b) const;

  bool operator==(const Hierarchy& other) const;

private:
  struct Node {
    NodeId parent = -1;  // -1 for the root
    std::vector<NodeId> children;
    int depth = 0;
  };

  const Node& node_at(NodeId n) const;
  void finish();  // root inference, reachability check, depths, leaves

  std::map<NodeId, Node> nodes_;
  NodeId root_ = -1;
  std::vector<NodeId> leaves_;
};

}  // namespace hicl
