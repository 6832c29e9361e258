#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "argverify/graph/argument_graph.hpp"
#include "argverify/pipeline/clients.hpp"
#include "argverify/pipeline/document.hpp"
#include "argverify/pipeline/pairs.hpp"
#include "argverify/pipeline/relations.hpp"

namespace argverify::pipeline {

struct MineConfig {
  std::size_t max_chars = 1500;
  WindowMode window = WindowMode::window(1);
  double threshold = kDefaultThreshold;
  ClassifyOptions classify;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

struct MineReport {
  graph::ArgumentGraph graph;
  std::size_t sections = 0;
  std::size_t dropped_spans = 0;
  std::size_t pairs = 0;
  std::size_t requests = 0;
  std::vector<std::size_t> failed_batches;
  std::vector<std::string> warnings;
};

// Document to argument graph: sections, literals (ids a0001, a0002, ...),
// candidate pairs, classification, merged edges. An extractor failure is
// retried once per section and then raised as ClientUnavailable.
MineReport mine_document(const Document& doc, ExtractorClient& extractor, ClassifierClient& classifier,
                         const MineConfig& config);

struct FactIngestion {
  graph::ArgumentGraph graph;
  std::vector<std::string> fact_ids;
  std::size_t fact_edges = 0;
  // Assumption-to-fact relations the classifier reported and that were dropped.
  std::size_t discarded_reverse = 0;
  std::size_t requests = 0;
  std::vector<std::size_t> failed_batches;
  std::vector<std::string> warnings;
};

// Mines `facts` with the same extractor and adds the literals as fact nodes,
// numbered after any facts already present. Every (fact, assumption) pair is
// classified in both directions; only fact-to-assumption edges are kept, so
// fact nodes never gain incoming edges. Fact nodes carry section -1. The
// input graph is not modified.
FactIngestion ingest_facts(const Document& facts, const graph::ArgumentGraph& graph, ExtractorClient& extractor,
                           ClassifierClient& classifier, const MineConfig& config);

struct SectionEdges {
  std::size_t support = 0;
  std::size_t attack = 0;

  bool operator==(const SectionEdges&) const = default;
};

struct GraphStats {
  std::size_t nodes = 0;
  std::size_t assumptions = 0;
  std::size_t facts = 0;
  std::size_t support = 0;
  std::size_t attack = 0;
  // Reduced attack:support, e.g. "1:12"; "undefined" without edges.
  std::string ratio;
  // attack / support and support / attack; 0 when the divisor is 0.
  double attack_per_support = 0.0;
  double support_per_attack = 0.0;
  // Edges keyed by the section of their source node (-1 for facts).
  std::map<int, SectionEdges> by_section;
};

GraphStats graph_stats(const graph::ArgumentGraph& graph);
std::string format_stats(const GraphStats& stats);
nlohmann::ordered_json stats_to_json(const GraphStats& stats);

}  // namespace argverify::pipeline
