#include "argverify/graph/argument_graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "argverify/error.hpp"

namespace argverify::graph {

std::string_view to_string(NodeKind kind) noexcept {
  return kind == NodeKind::fact ? "fact" : "assumption";
}

std::string_view to_string(Relation relation) noexcept {
  return relation == Relation::attack ? "attack" : "support";
}

NodeKind parse_node_kind(std::string_view text) {
  if (text == "assumption") return NodeKind::assumption;
  if (text == "fact") return NodeKind::fact;
  throw MalformedInput("unknown node kind '" + std::string(text) + "'");
}

Relation parse_relation(std::string_view text) {
  if (text == "support") return Relation::support;
  if (text == "attack") return Relation::attack;
  throw MalformedInput("unknown relation '" + std::string(text) + "'");
}

namespace {

std::string triple_key(const std::string& src, const std::string& dst, Relation relation) {
  std::string key;
  key.reserve(src.size() + dst.size() + 3);
  key.append(src).push_back('\x1f');
  key.append(dst).push_back('\x1f');
  key.push_back(relation == Relation::attack ? 'a' : 's');
  return key;
}

}  // namespace

ArgumentGraph::NodeIndex ArgumentGraph::add_node(Node node) {
  if (node.id.empty()) throw MalformedInput("node id must not be empty");
  const NodeIndex index = nodes_.size();
  auto [it, inserted] = by_id_.emplace(node.id, index);
  if (!inserted) throw MalformedInput("duplicate node id '" + node.id + "'");
  nodes_.push_back(std::move(node));
  out_.emplace_back();
  in_.emplace_back();
  return index;
}

bool ArgumentGraph::add_edge(Edge edge) {
  if (edge.src == edge.dst) throw MalformedInput("self-loop on '" + edge.src + "'");
  if (!(edge.confidence >= 0.0 && edge.confidence <= 1.0))
    throw MalformedInput("edge confidence outside [0,1] on " + edge.src + "->" + edge.dst);
  const NodeIndex s = index_of(edge.src);
  const NodeIndex d = index_of(edge.dst);
  const EdgeIndex e = edges_.size();
  auto [it, inserted] = by_triple_.emplace(triple_key(edge.src, edge.dst, edge.relation), e);
  if (!inserted) {
    auto& existing = edges_[it->second];
    existing.confidence = std::max(existing.confidence, edge.confidence);
    return false;
  }
  edges_.push_back(std::move(edge));
  edge_ends_.emplace_back(s, d);
  out_[s].push_back(e);
  in_[d].push_back(e);
  return true;
}

std::optional<ArgumentGraph::NodeIndex> ArgumentGraph::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

ArgumentGraph::NodeIndex ArgumentGraph::index_of(std::string_view id) const {
  if (auto index = find(id)) return *index;
  throw MalformedInput("unknown node id '" + std::string(id) + "'");
}

std::size_t ArgumentGraph::count(Relation relation) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      edges_.begin(), edges_.end(), [&](const Edge& e) { return e.relation == relation; }));
}

std::size_t ArgumentGraph::count(NodeKind kind) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [&](const Node& n) { return n.kind == kind; }));
}

namespace {

std::vector<const Node*> sorted_nodes(const ArgumentGraph& g) {
  std::vector<const Node*> out;
  out.reserve(g.node_count());
  for (const auto& n : g.nodes()) out.push_back(&n);
  std::sort(out.begin(), out.end(), [](const Node* a, const Node* b) { return a->id < b->id; });
  return out;
}

std::vector<const Edge*> sorted_edges(const ArgumentGraph& g) {
  std::vector<const Edge*> out;
  out.reserve(g.edge_count());
  for (const auto& e : g.edges()) out.push_back(&e);
  std::sort(out.begin(), out.end(), [](const Edge* a, const Edge* b) {
    return std::tie(a->src, a->dst, a->relation) < std::tie(b->src, b->dst, b->relation);
  });
  return out;
}

}  // namespace

bool ArgumentGraph::same_content(const ArgumentGraph& other) const {
  if (node_count() != other.node_count() || edge_count() != other.edge_count()) return false;
  auto na = sorted_nodes(*this), nb = sorted_nodes(other);
  for (std::size_t i = 0; i < na.size(); ++i)
    if (!(*na[i] == *nb[i])) return false;
  auto ea = sorted_edges(*this), eb = sorted_edges(other);
  for (std::size_t i = 0; i < ea.size(); ++i)
    if (!(*ea[i] == *eb[i])) return false;
  return true;
}

std::string to_json(const ArgumentGraph& graph) {
  using ordered = nlohmann::ordered_json;
  ordered doc;
  doc["version"] = kGraphFormatVersion;
  ordered nodes = ordered::array();
  for (const Node* n : sorted_nodes(graph)) {
    ordered j;
    j["id"] = n->id;
    j["text"] = n->text;
    j["section"] = n->section;
    j["kind"] = to_string(n->kind);
    nodes.push_back(std::move(j));
  }
  ordered edges = ordered::array();
  for (const Edge* e : sorted_edges(graph)) {
    ordered j;
    j["src"] = e->src;
    j["dst"] = e->dst;
    j["relation"] = to_string(e->relation);
    j["confidence"] = e->confidence;
    edges.push_back(std::move(j));
  }
  doc["nodes"] = std::move(nodes);
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

ArgumentGraph from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInput(std::string("graph file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw MalformedInput("graph file must be a JSON object");
  if (!doc.contains("version")) throw UnsupportedVersion("graph file has no version field");
  if (!doc["version"].is_number_integer() || doc["version"].get<int>() != kGraphFormatVersion)
    throw UnsupportedVersion("unsupported graph file version " + doc["version"].dump());

  ArgumentGraph graph;
  try {
    for (const auto& n : doc.at("nodes")) {
      graph.add_node(Node{n.at("id").get<std::string>(), n.at("text").get<std::string>(),
                          n.at("section").get<int>(),
                          parse_node_kind(n.at("kind").get<std::string>())});
    }
    for (const auto& e : doc.at("edges")) {
      graph.add_edge(Edge{e.at("src").get<std::string>(), e.at("dst").get<std::string>(),
                          parse_relation(e.at("relation").get<std::string>()),
                          e.at("confidence").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("graph file does not match schema: ") + e.what());
  }
  return graph;
}

ArgumentGraph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot open graph file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

}  // namespace argverify::graph
