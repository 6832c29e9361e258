#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "argverify/baba/framework.hpp"
#include "argverify/graph/argument_graph.hpp"

namespace argverify::baba {

struct GraphTranslation {
  BipolarFramework framework;
  std::size_t kept_edges = 0;
  std::size_t dropped_edges = 0;
  // One line per dropped edge.
  std::vector<std::string> warnings;
};

// support a->b becomes b <- a; attack a->b becomes contrary(b) <- a. Every
// node receives a minted contrary. Edges pointing into a fact are dropped and
// reported; a self-loop throws MalformedInput.
GraphTranslation from_graph(const graph::ArgumentGraph& g);

}  // namespace argverify::baba
