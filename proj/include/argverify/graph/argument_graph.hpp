#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace argverify::graph {

enum class NodeKind { assumption, fact };
enum class Relation { support, attack };

std::string_view to_string(NodeKind kind) noexcept;
std::string_view to_string(Relation relation) noexcept;
NodeKind parse_node_kind(std::string_view text);
Relation parse_relation(std::string_view text);

struct Node {
  std::string id;
  std::string text;
  int section = 0;
  NodeKind kind = NodeKind::assumption;

  bool operator==(const Node&) const = default;
};

struct Edge {
  std::string src;
  std::string dst;
  Relation relation = Relation::support;
  double confidence = 1.0;

  bool operator==(const Edge&) const = default;
};

// Mined argument graph: literal nodes plus directed support/attack edges.
//
// Invariants enforced on insertion: node ids are unique, every edge endpoint
// exists, no self-loops, and at most one edge per (src, dst, relation)
// triple. Adjacency lists are maintained so per-node scans stay linear in
// degree.
class ArgumentGraph {
 public:
  using NodeIndex = std::size_t;
  using EdgeIndex = std::size_t;

  // Throws MalformedInput on a duplicate id.
  NodeIndex add_node(Node node);

  // Throws MalformedInput on a self-loop or an unknown endpoint. An exact
  // (src, dst, relation) duplicate is absorbed and keeps the higher
  // confidence; returns false in that case.
  bool add_edge(Edge edge);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::optional<NodeIndex> find(std::string_view id) const;
  NodeIndex index_of(std::string_view id) const;  // throws MalformedInput
  const Node& node(NodeIndex index) const { return nodes_.at(index); }
  const Node& node(std::string_view id) const { return nodes_[index_of(id)]; }

  const std::vector<EdgeIndex>& out_edges(NodeIndex index) const { return out_.at(index); }
  const std::vector<EdgeIndex>& in_edges(NodeIndex index) const { return in_.at(index); }
  NodeIndex src_index(EdgeIndex e) const { return edge_ends_.at(e).first; }
  NodeIndex dst_index(EdgeIndex e) const { return edge_ends_.at(e).second; }

  std::size_t count(Relation relation) const noexcept;
  std::size_t count(NodeKind kind) const noexcept;

  // Structural equality on node and edge content, insensitive to insertion order.
  bool same_content(const ArgumentGraph& other) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::pair<NodeIndex, NodeIndex>> edge_ends_;
  std::vector<std::vector<EdgeIndex>> out_;
  std::vector<std::vector<EdgeIndex>> in_;
  std::unordered_map<std::string, NodeIndex> by_id_;
  std::unordered_map<std::string, EdgeIndex> by_triple_;
};

// Versioned JSON interchange:
//   {"version":1,"nodes":[{"id","text","section","kind"}],
//    "edges":[{"src","dst","relation","confidence"}]}
// Nodes are written sorted by id and edges by (src, dst, relation), with the
// field order above, so equal graphs serialize to identical bytes.
inline constexpr int kGraphFormatVersion = 1;

std::string to_json(const ArgumentGraph& graph);

// Throws UnsupportedVersion for a missing or unknown version and
// MalformedInput for anything else that does not fit the schema.
ArgumentGraph from_json(std::string_view text);

ArgumentGraph load_graph_file(const std::string& path);

}  // namespace argverify::graph
