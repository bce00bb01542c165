#include "hicl/hierarchy.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <limits>
#include <sstream>

namespace hicl {

namespace {

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

// Parses a whole line of exactly two non-negative integers.
bool parse_edge_line(const std::string& line, NodeId& parent, NodeId& child) {
  long long values[2];
  const char* p = line.data();
  const char* end = line.data() + line.size();
  for (int i = 0; i < 2; ++i) {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    auto [next, ec] = std::from_chars(p, end, values[i]);
    if (ec != std::errc() || next == p) return false;
    p = next;
  }
  while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
  if (p != end) return false;
  if (values[0] < 0 || values[1] < 0) return false;
  if (values[0] > std::numeric_limits<NodeId>::max() ||
      values[1] > std::numeric_limits<NodeId>::max())
    return false;
  parent = static_cast<NodeId>(values[0]);
  child = static_cast<NodeId>(values[1]);
  return true;
}

}  // namespace

Hierarchy Hierarchy::parse(const std::vector<std::string>& lines) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (is_blank(line)) continue;
    NodeId parent = 0, child = 0;
    if (!parse_edge_line(line, parent, child))
      throw Error(Errc::malformed_line, "expected \"parent child\", got \"" + line + "\"",
                  static_cast<int>(i + 1));
    edges.emplace_back(parent, child);
  }
  return from_edges(edges);
}

Hierarchy Hierarchy::from_edges(const std::vector<std::pair<NodeId, NodeId>>& edges) {
  if (edges.empty()) throw Error(Errc::empty_input, "hierarchy has no edges");
  Hierarchy h;
  for (const auto& [parent, child] : edges) {
    // Ids are non-negative, so -1 marks "no parent yet". A self-edge parents
    // the node to itself and is caught as a cycle in finish().
    Node& c = h.nodes_[child];
    if (c.parent != -1)
      throw Error(Errc::duplicate_parent,
                  "node " + std::to_string(child) + " listed under more than one parent");
    c.parent = parent;
    h.nodes_[parent].children.push_back(child);
  }
  h.finish();
  return h;
}

void Hierarchy::finish() {
  std::vector<NodeId> roots;
  for (const auto& [id, node] : nodes_)
    if (node.parent == -1) roots.push_back(id);
  if (roots.empty())
    throw Error(Errc::cycle_detected, "no root: every node appears as a child");
  if (roots.size() > 1) {
    std::string msg = "candidates";
    for (NodeId r : roots) msg += " " + std::to_string(r);
    throw Error(Errc::multiple_roots, msg);
  }
  root_ = roots.front();

  // BFS from the root: assigns depths and proves reachability.
  std::size_t reached = 0;
  std::deque<NodeId> queue{root_};
  nodes_.at(root_).depth = 0;
  while (!queue.empty()) {
    NodeId id = queue.front();
    queue.pop_front();
    ++reached;
    const Node& node = nodes_.at(id);
    for (NodeId child : node.children) {
      nodes_.at(child).depth = node.depth + 1;
      queue.push_back(child);
    }
  }
  if (reached != nodes_.size())
    throw Error(Errc::cycle_detected, "nodes unreachable from root " + std::to_string(root_));

  for (const auto& [id, node] : nodes_)
    if (node.children.empty()) leaves_.push_back(id);
}

std::string Hierarchy::serialize() const {
  std::ostringstream out;
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    const Node& node = nodes_.at(id);
    for (NodeId child : node.children) out << id << ' ' << child << '\n';
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it)
      stack.push_back(*it);
  }
  return out.str();
}

const Hierarchy::Node& Hierarchy::node_at(NodeId n) const {
  auto it = nodes_.find(n);
  if (it == nodes_.end())
    throw Error(Errc::unknown_node, "node " + std::to_string(n) + " not in hierarchy");
  return it->second;
}

bool Hierarchy::contains(NodeId n) const { return nodes_.count(n) != 0; }

bool Hierarchy::is_leaf(NodeId n) const { return node_at(n).children.empty(); }

std::optional<NodeId> Hierarchy::parent(NodeId n) const {
  const Node& node = node_at(n);
  if (node.parent == -1) return std::nullopt;
  return node.parent;
}

const std::vector<NodeId>& Hierarchy::children(NodeId n) const { return node_at(n).children; }

std::vector<NodeId> Hierarchy::all_nodes() const {
  std::vector<NodeId> out;
  out.reserve(nodes_.size());
  for (const auto& [id, node] : nodes_) out.push_back(id);
  return out;
}

int Hierarchy::depth(NodeId n) const { return node_at(n).depth; }

std::vector<NodeId> Hierarchy::leaf_descendants(NodeId n) const {
  node_at(n);
  std::vector<NodeId> out;
  std::vector<NodeId> stack{n};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    const Node& node = nodes_.at(id);
    if (node.children.empty()) out.push_back(id);
    for (NodeId child : node.children) stack.push_back(child);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> Hierarchy::ancestors(NodeId n) const {
  const Node* node = &node_at(n);
  std::vector<NodeId> out;
  while (node->parent != -1) {
    out.push_back(node->parent);
    node = &nodes_.at(node->parent);
  }
  return out;
}

int Hierarchy::tree_distance(NodeId a, NodeId b) const {
  const Node* na = &node_at(a);
  const Node* nb = &node_at(b);
  int da = na->depth, db = nb->depth;
  NodeId ia = a, ib = b;
  while (da > db) { ia = na->parent; na = &nodes_.at(ia); --da; }
  while (db > da) { ib = nb->parent; nb = &nodes_.at(ib); --db; }
  while (ia != ib) {
    ia = na->parent; na = &nodes_.at(ia);
    ib = nb->parent; nb = &nodes_.at(ib);
    --da;
  }
  return (node_at(a).depth - da) + (node_at(b).depth - da);
}

bool Hierarchy::operator==(const Hierarchy& other) const {
  if (root_ != other.root_ || nodes_.size() != other.nodes_.size()) return false;
  for (const auto& [id, node] : nodes_) {
    auto it = other.nodes_.find(id);
    if (it == other.nodes_.end()) return false;
    if (node.parent != it->second.parent || node.children != it->second.children) return false;
  }
  return true;
}

}  // namespace hicl
