#include "argverify/baba/from_graph.hpp"

#include "argverify/error.hpp"

namespace argverify::baba {

GraphTranslation from_graph(const graph::ArgumentGraph& g) {
  using graph::NodeKind;
  using graph::Relation;

  FrameworkBuilder builder;
  for (const auto& node : g.nodes()) {
    if (node.kind == NodeKind::fact)
      builder.fact(node.id, node.text);
    else
      builder.assumption(node.id, node.text);
  }

  GraphTranslation out;
  for (graph::ArgumentGraph::EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges()[e];
    if (edge.src == edge.dst)
      throw MalformedInput("self-loop edge on '" + edge.src + "' cannot be translated");
    if (g.node(g.dst_index(e)).kind == NodeKind::fact) {
      ++out.dropped_edges;
      out.warnings.push_back("dropped " + std::string(to_string(edge.relation)) + " edge " +
                             edge.src + " -> " + edge.dst + ": facts only have outgoing edges");
      continue;
    }
    if (edge.relation == Relation::attack)
      builder.attack(edge.src, edge.dst);
    else
      builder.support(edge.src, edge.dst);
    ++out.kept_edges;
  }
  out.framework = builder.build();
  return out;
}

}  // namespace argverify::baba
