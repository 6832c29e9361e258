#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "argverify/graph/argument_graph.hpp"
#include "argverify/pipeline/pairs.hpp"

namespace argverify::pipeline {

class ClassifierClient;

enum class Label { support, attack, none };

std::string_view to_string(Label label) noexcept;
// Throws ProtocolError on an unknown label.
Label parse_label(std::string_view text);

struct RelationResult {
  OrderedPair pair;
  Label label = Label::none;
  double confidence = 0.0;

  bool operator==(const RelationResult&) const = default;
};

struct ClassifyOptions {
  std::size_t batch = 16;
  // Upper bound on batches in flight at once.
  std::size_t parallelism = 4;

  // Throws ConfigError naming "batch" or "parallelism".
  void validate() const;
};

struct ClassifyOutcome {
  // One per input pair, in input order.
  std::vector<RelationResult> results;
  std::size_t requests = 0;
  // Batches that failed twice; their pairs are labelled none with confidence 0.
  std::vector<std::size_t> failed_batches;
  std::vector<std::string> diagnostics;
};

using TextLookup = std::unordered_map<std::string, std::string>;

// Sends the pairs in batches of `batch`. A batch whose request throws or
// whose response is malformed is retried once and then failed open. A
// response is malformed when it is not an array of well-typed entries, names
// a pair that is not in the batch, or leaves one out. When a pair is labelled
// twice the higher confidence wins. Throws ClientUnavailable when every batch
// fails.
ClassifyOutcome classify_pairs(const std::vector<OrderedPair>& pairs, const TextLookup& texts,
                               ClassifierClient& client, const ClassifyOptions& options = {});

inline constexpr double kDefaultThreshold = 0.5;

// Directed edges for results labelled support or attack with confidence at
// least `threshold`; (a, b) and (b, a) are independent. Throws
// ConfigError("threshold") outside [0, 1].
std::vector<graph::Edge> merge_relations(const std::vector<RelationResult>& results,
                                         double threshold = kDefaultThreshold);

}  // namespace argverify::pipeline
