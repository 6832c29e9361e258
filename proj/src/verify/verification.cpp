#include "argverify/verify/verification.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>
#include <unordered_map>

#include <fmt/format.h>

#include "argverify/error.hpp"

namespace argverify::verify {

using graph::ArgumentGraph;
using graph::NodeKind;
using graph::Relation;
using NodeIndex = ArgumentGraph::NodeIndex;

FactCheckReport fact_check(const ArgumentGraph& g) {
  std::vector<NodeIndex> facts;
  std::size_t attacks = 0, supports = 0;
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    if (g.node(i).kind != NodeKind::fact) continue;
    facts.push_back(i);
    for (auto e : g.out_edges(i)) ++(g.edges()[e].relation == Relation::attack ? attacks : supports);
  }
  FactCheckReport out;
  out.entries.reserve(attacks);
  out.corroborations.reserve(supports);
  for (NodeIndex i : facts) {
    for (auto e : g.out_edges(i)) {
      const auto& edge = g.edges()[e];
      if (g.node(g.dst_index(e)).kind != NodeKind::assumption) continue;
      auto& bucket = edge.relation == Relation::attack ? out.entries : out.corroborations;
      bucket.push_back(FactCheckEntry{edge.dst, edge.src, edge.confidence});
    }
  }
  return out;
}

void DepthConfig::validate() const {
  if (m < 1) throw ConfigError("m", "must be at least 1");
  if (chain_depth < 0) throw ConfigError("chain_depth", "must be non-negative");
}

namespace {

bool is_assumption(const ArgumentGraph& g, NodeIndex i) { return g.node(i).kind == NodeKind::assumption; }

// Assumption sources of support edges into `v`, sorted by id.
std::vector<NodeIndex> supporters(const ArgumentGraph& g, NodeIndex v) {
  std::vector<NodeIndex> out;
  for (auto e : g.in_edges(v))
    if (g.edges()[e].relation == Relation::support && is_assumption(g, g.src_index(e))) out.push_back(g.src_index(e));
  std::sort(out.begin(), out.end(), [&](NodeIndex a, NodeIndex b) { return g.node(a).id < g.node(b).id; });
  return out;
}

std::size_t count_supporters(const ArgumentGraph& g, NodeIndex v, std::vector<std::size_t>& stamp, std::size_t mark,
                             std::vector<NodeIndex>& queue) {
  queue.clear();
  queue.push_back(v);
  stamp[v] = mark;
  std::size_t seen = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto e : g.in_edges(queue[head])) {
      const NodeIndex s = g.src_index(e);
      if (g.edges()[e].relation != Relation::support || !is_assumption(g, s) || stamp[s] == mark) continue;
      stamp[s] = mark;
      ++seen;
      queue.push_back(s);
    }
  }
  return seen;
}

struct Reached {
  int depth = 0;
  NodeIndex parent = 0;
};

// Backward breadth-first walk over support edges; each node keeps the first
// (shortest, then smallest-id) route to the root.
std::vector<std::pair<NodeIndex, Reached>> walk_supporters(const ArgumentGraph& g, NodeIndex root, int max_depth) {
  std::vector<std::pair<NodeIndex, Reached>> out{{root, {0, root}}};
  std::unordered_map<NodeIndex, bool> seen{{root, true}};
  std::vector<NodeIndex> frontier{root};
  for (int depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
    std::vector<NodeIndex> next;
    for (NodeIndex v : frontier)
      for (NodeIndex s : supporters(g, v))
        if (seen.emplace(s, true).second) {
          out.push_back({s, {depth, v}});
          next.push_back(s);
        }
    std::sort(next.begin(), next.end(), [&](NodeIndex a, NodeIndex b) { return g.node(a).id < g.node(b).id; });
    frontier = std::move(next);
  }
  return out;
}

bool counter_attacked(const ArgumentGraph& g, NodeIndex x) {
  if (!is_assumption(g, x)) return false;
  std::vector<NodeIndex> queue{x};
  std::unordered_map<NodeIndex, bool> seen{{x, true}};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto e : g.in_edges(queue[head]))
      if (g.edges()[e].relation == Relation::attack) return true;
    for (auto e : g.out_edges(queue[head])) {
      const NodeIndex d = g.dst_index(e);
      if (g.edges()[e].relation == Relation::support && is_assumption(g, d) && seen.emplace(d, true).second)
        queue.push_back(d);
    }
  }
  return false;
}

}  // namespace

std::vector<std::size_t> transitive_support_counts(const ArgumentGraph& g) {
  const auto n = static_cast<long>(g.node_count());
  std::vector<std::size_t> out(g.node_count(), 0);
#pragma omp parallel
  {
    std::vector<std::size_t> stamp(g.node_count(), 0);
    std::vector<NodeIndex> queue;
#pragma omp for schedule(dynamic, 64)
    for (long v = 0; v < n; ++v) {
      const auto i = static_cast<NodeIndex>(v);
      if (is_assumption(g, i)) out[i] = count_supporters(g, i, stamp, i + 1, queue);
    }
  }
  return out;
}

std::vector<std::size_t> transitive_support_counts_serial(const ArgumentGraph& g) {
  std::vector<std::size_t> out(g.node_count(), 0);
  std::vector<std::size_t> stamp(g.node_count(), 0);
  std::vector<NodeIndex> queue;
  for (NodeIndex i = 0; i < g.node_count(); ++i)
    if (is_assumption(g, i)) out[i] = count_supporters(g, i, stamp, i + 1, queue);
  return out;
}

std::vector<std::string> select_key_literals(const ArgumentGraph& g, std::size_t top_j) {
  if (top_j < 1) throw ConfigError("top_j", "must be at least 1");
  const auto counts = transitive_support_counts(g);
  std::vector<NodeIndex> candidates;
  for (NodeIndex i = 0; i < g.node_count(); ++i)
    if (is_assumption(g, i)) candidates.push_back(i);
  std::sort(candidates.begin(), candidates.end(), [&](NodeIndex a, NodeIndex b) {
    return std::tuple(counts[b], g.node(a).id) < std::tuple(counts[a], g.node(b).id);
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::min(top_j, candidates.size()); ++i) out.push_back(g.node(candidates[i]).id);
  return out;
}

bool has_counter_attacker(const ArgumentGraph& g, const std::string& node) {
  return counter_attacked(g, g.index_of(node));
}

std::vector<AttackChain> find_undefended_attacks(const ArgumentGraph& g, const std::string& target,
                                                 const DepthConfig& depth) {
  depth.validate();
  const NodeIndex root = g.index_of(target);
  const auto reached = walk_supporters(g, root, std::min(depth.m - 1, depth.chain_depth));
  std::unordered_map<NodeIndex, NodeIndex> parent;
  for (const auto& [v, r] : reached) parent.emplace(v, r.parent);

  std::unordered_map<NodeIndex, bool> undefended;
  std::vector<AttackChain> out;
  for (const auto& [y, r] : reached) {
    for (auto e : g.in_edges(y)) {
      if (g.edges()[e].relation != Relation::attack) continue;
      const NodeIndex x = g.src_index(e);
      auto [it, fresh] = undefended.try_emplace(x, false);
      if (fresh) it->second = !counter_attacked(g, x);
      if (!it->second) continue;
      AttackChain chain{g.node(x).id, {}};
      for (NodeIndex v = y;; v = parent.at(v)) {
        chain.path.push_back(g.node(v).id);
        if (v == root) break;
      }
      out.push_back(std::move(chain));
    }
  }
  std::sort(out.begin(), out.end(), [](const AttackChain& a, const AttackChain& b) {
    return std::tuple(a.length(), a.attacker, a.path) < std::tuple(b.length(), b.attacker, b.path);
  });
  return out;
}

std::vector<AncestryStep> support_ancestry(const ArgumentGraph& g, const std::string& node, int depth) {
  const auto reached = walk_supporters(g, g.index_of(node), depth);
  std::vector<AncestryStep> out;
  for (const auto& [v, r] : reached)
    if (r.depth > 0) out.push_back(AncestryStep{g.node(v).id, g.node(r.parent).id, r.depth});
  std::sort(out.begin(), out.end(),
            [](const AncestryStep& a, const AncestryStep& b) { return std::tie(a.depth, a.node) < std::tie(b.depth, b.node); });
  return out;
}

FeedbackReport build_feedback(const ArgumentGraph& g, const FactCheckReport& facts,
                              const std::vector<std::string>& key_literals, const DepthConfig& depth) {
  depth.validate();
  FeedbackReport out;
  std::map<std::string, std::vector<FactCheckEntry>> by_literal;
  for (const auto& e : facts.entries) by_literal[e.literal].push_back(e);
  for (auto& [literal, attacks] : by_literal) {
    std::sort(attacks.begin(), attacks.end(),
              [](const FactCheckEntry& a, const FactCheckEntry& b) { return a.fact < b.fact; });
    out.fact_checked.push_back(FactFinding{literal, std::move(attacks), support_ancestry(g, literal, depth.chain_depth)});
  }
  out.corroborations = facts.corroborations;
  std::sort(out.corroborations.begin(), out.corroborations.end(), [](const FactCheckEntry& a, const FactCheckEntry& b) {
    return std::tie(a.literal, a.fact) < std::tie(b.literal, b.fact);
  });
  for (const auto& key : key_literals) {
    auto chains = find_undefended_attacks(g, key, depth);
    if (chains.empty()) continue;
    KeyFinding finding{key, std::move(chains), {}};
    for (const auto& c : finding.undefended) finding.weak_links.push_back(c.attacked());
    std::sort(finding.weak_links.begin(), finding.weak_links.end());
    finding.weak_links.erase(std::unique(finding.weak_links.begin(), finding.weak_links.end()),
                             finding.weak_links.end());
    out.key_literals.push_back(std::move(finding));
  }
  return out;
}

FeedbackReport analyze(const ArgumentGraph& g, const DepthConfig& depth, std::size_t top_j) {
  return build_feedback(g, fact_check(g), select_key_literals(g, top_j), depth);
}

std::string render_feedback_message(const ArgumentGraph& g, const FeedbackReport& report) {
  auto quoted = [&](const std::string& id) { return fmt::format("{} \"{}\"", id, g.node(id).text); };
  std::string out;
  if (report.empty()) {
    out += kNoFindings;
    out += '\n';
  } else {
    out += "Verification feedback\n";
  }

  if (!report.fact_checked.empty()) {
    out += fmt::format("\nLiterals attacked by facts ({}):\n", report.fact_checked.size());
    for (const auto& f : report.fact_checked) {
      out += "- " + quoted(f.literal) + "\n";
      for (const auto& a : f.attacks)
        out += fmt::format("    attacked by fact {} (confidence {:.2f})\n", quoted(a.fact), a.confidence);
      if (f.ancestry.empty()) {
        out += "    reasoning chain: no supporting literals\n";
      } else {
        out += "    reasoning chain (truncated):\n";
        for (const auto& s : f.ancestry) out += fmt::format("      {} -> {}\n", quoted(s.node), s.supports);
      }
    }
  }

  if (!report.corroborations.empty()) {
    out += fmt::format("\nFact corroborations ({}):\n", report.corroborations.size());
    for (const auto& c : report.corroborations)
      out += fmt::format("- {} supports {} (confidence {:.2f})\n", quoted(c.fact), quoted(c.literal), c.confidence);
  }

  if (!report.key_literals.empty()) {
    out += fmt::format("\nKey literals facing undefended attacks ({}):\n", report.key_literals.size());
    for (const auto& k : report.key_literals) {
      out += "- " + quoted(k.literal) + "\n";
      for (const auto& c : k.undefended) {
        std::string line = "    chain: " + quoted(c.attacker) + " =attack=> " + c.path.front();
        for (std::size_t i = 1; i < c.path.size(); ++i) line += " -> " + c.path[i];
        out += line + "\n";
      }
      out += "    weak links:\n";
      for (const auto& w : k.weak_links) out += "      " + quoted(w) + "\n";
    }
  }
  return out;
}

}  // namespace argverify::verify
