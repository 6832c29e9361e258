#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "argverify/graph/argument_graph.hpp"

namespace argverify::verify {

struct FactCheckEntry {
  std::string literal;
  std::string fact;
  double confidence = 0.0;

  bool operator==(const FactCheckEntry&) const = default;
};

struct FactCheckReport {
  // Fact-to-assumption attack edges, in edge order.
  std::vector<FactCheckEntry> entries;
  // Fact-to-assumption support edges.
  std::vector<FactCheckEntry> corroborations;
};

// One pass over the out-edges of fact nodes.
FactCheckReport fact_check(const graph::ArgumentGraph& g);

struct DepthConfig {
  // Longest attack chain explored: one attack plus up to m - 1 support hops.
  int m = 3;
  // Support ancestry shown for reasoning chains, and the cap on support hops.
  int chain_depth = 4;

  // Throws ConfigError naming "m" or "chain_depth".
  void validate() const;
};

// Number of distinct assumptions that reach `node` over support edges.
std::vector<std::size_t> transitive_support_counts(const graph::ArgumentGraph& g);
std::vector<std::size_t> transitive_support_counts_serial(const graph::ArgumentGraph& g);

// Assumptions with the most transitive supporters, ties by id. Throws
// ConfigError("top_j") when top_j is 0.
std::vector<std::string> select_key_literals(const graph::ArgumentGraph& g, std::size_t top_j);

// attacker =attack=> path[0] -> path[1] -> ... -> target, where every "->"
// is a support edge. path.front() is the attacked member, path.back() the
// target.
struct AttackChain {
  std::string attacker;
  std::vector<std::string> path;

  std::size_t length() const { return path.size(); }
  const std::string& attacked() const { return path.front(); }
  bool operator==(const AttackChain&) const = default;
};

// Attacks on the target or on its support ancestors, found by walking
// support edges backwards from the target for at most min(m - 1,
// chain_depth) hops, keeping one shortest path per ancestor. A chain is
// undefended when no node attacks any member of its attacker's support
// closure; facts cannot be attacked, so chains started by facts are always
// undefended. Sorted by length, attacker, then path. Throws MalformedInput
// on an unknown target.
std::vector<AttackChain> find_undefended_attacks(const graph::ArgumentGraph& g, const std::string& target,
                                                 const DepthConfig& depth);

// True iff some node attacks a member of the support closure of `node`.
bool has_counter_attacker(const graph::ArgumentGraph& g, const std::string& node);

struct AncestryStep {
  std::string node;
  std::string supports;  // the node it supports on the way to the root
  int depth = 1;

  bool operator==(const AncestryStep&) const = default;
};

// Breadth-first support ancestry of `node` up to `depth` hops, each ancestor
// once at its shortest distance; ordered by depth then id.
std::vector<AncestryStep> support_ancestry(const graph::ArgumentGraph& g, const std::string& node, int depth);

struct FactFinding {
  std::string literal;
  std::vector<FactCheckEntry> attacks;
  std::vector<AncestryStep> ancestry;
};

struct KeyFinding {
  std::string literal;
  std::vector<AttackChain> undefended;
  // Attacked members of the undefended chains, sorted and unique.
  std::vector<std::string> weak_links;
};

struct FeedbackReport {
  // Sorted by literal id.
  std::vector<FactFinding> fact_checked;
  // Corroborating fact supports, sorted by (literal, fact).
  std::vector<FactCheckEntry> corroborations;
  // Key literals that face at least one undefended chain, in ranking order.
  std::vector<KeyFinding> key_literals;

  bool empty() const { return fact_checked.empty() && key_literals.empty(); }
};

FeedbackReport build_feedback(const graph::ArgumentGraph& g, const FactCheckReport& facts,
                              const std::vector<std::string>& key_literals, const DepthConfig& depth);

// fact_check, select_key_literals and build_feedback in one call.
FeedbackReport analyze(const graph::ArgumentGraph& g, const DepthConfig& depth, std::size_t top_j);

inline constexpr const char* kNoFindings = "Verification found no findings: no literal is attacked by a fact and no "
                                           "key literal faces an undefended attack.";

// Plain-text critique: ids, quoted texts and chain arrows for every entry
// of the report. The empty report renders as kNoFindings.
std::string render_feedback_message(const graph::ArgumentGraph& g, const FeedbackReport& report);

}  // namespace argverify::verify
