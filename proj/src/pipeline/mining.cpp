#include "argverify/pipeline/mining.hpp"

#include <algorithm>
#include <numeric>
#include <regex>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "argverify/error.hpp"

namespace argverify::pipeline {

void MineConfig::validate() const {
  if (max_chars < kMinSectionChars)
    throw ConfigError("max_chars", "must be at least " + std::to_string(kMinSectionChars));
  window.validate();
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw ConfigError("threshold", "must lie in [0, 1]");
  classify.validate();
}

namespace {

struct MinedLiterals {
  std::vector<LiteralSpan> literals;
  std::size_t sections = 0;
  std::size_t dropped = 0;
  std::vector<std::string> warnings;
};

MinedLiterals mine_literals(const Document& doc, ExtractorClient& extractor, std::size_t max_chars) {
  MinedLiterals out;
  const auto sections = split_sections(doc, max_chars);
  out.sections = sections.size();
  for (const auto& sec : sections) {
    Extraction ex;
    for (int attempt = 1;; ++attempt) {
      try {
        ex = extract_literals(sec, extractor);
        break;
      } catch (const TransportError& e) {
        if (attempt == 2) throw ClientUnavailable("extractor failed on section " + std::to_string(sec.index) + ": " + e.what());
        spdlog::warn("extractor, section {}: {}; retrying", sec.index, e.what());
      } catch (const ProtocolError& e) {
        if (attempt == 2) throw ClientUnavailable("extractor failed on section " + std::to_string(sec.index) + ": " + e.what());
        spdlog::warn("extractor, section {}: {}; retrying", sec.index, e.what());
      }
    }
    out.dropped += ex.dropped;
    for (auto& w : ex.warnings) {
      spdlog::warn("{}", w);
      out.warnings.push_back(std::move(w));
    }
    out.literals.insert(out.literals.end(), std::make_move_iterator(ex.literals.begin()),
                        std::make_move_iterator(ex.literals.end()));
  }
  return out;
}

std::size_t next_fact_number(const graph::ArgumentGraph& g) {
  static const std::regex numbered(R"(f(\d+))");
  std::size_t next = 1;
  for (const auto& n : g.nodes()) {
    std::smatch m;
    if (std::regex_match(n.id, m, numbered)) next = std::max<std::size_t>(next, std::stoul(m[1].str()) + 1);
  }
  return next;
}

}  // namespace

MineReport mine_document(const Document& doc, ExtractorClient& extractor, ClassifierClient& classifier,
                         const MineConfig& config) {
  config.validate();
  MineReport out;
  auto mined = mine_literals(doc, extractor, config.max_chars);
  assign_ids(mined.literals, 'a');
  out.sections = mined.sections;
  out.dropped_spans = mined.dropped;
  out.warnings = std::move(mined.warnings);

  TextLookup texts;
  for (const auto& l : mined.literals) {
    out.graph.add_node(graph::Node{l.id, l.text, l.section, graph::NodeKind::assumption});
    texts.emplace(l.id, l.text);
  }
  const auto pair_set = generate_pairs(mined.literals, static_cast<int>(mined.sections), config.window);
  const std::vector<OrderedPair> pairs(pair_set.begin(), pair_set.end());
  out.pairs = pairs.size();
  auto classified = classify_pairs(pairs, texts, classifier, config.classify);
  out.requests = classified.requests;
  out.failed_batches = std::move(classified.failed_batches);
  for (auto& d : classified.diagnostics) out.warnings.push_back(std::move(d));
  for (auto& e : merge_relations(classified.results, config.threshold)) out.graph.add_edge(std::move(e));
  return out;
}

FactIngestion ingest_facts(const Document& facts, const graph::ArgumentGraph& graph, ExtractorClient& extractor,
                           ClassifierClient& classifier, const MineConfig& config) {
  config.validate();
  FactIngestion out;
  out.graph = graph;
  auto mined = mine_literals(facts, extractor, config.max_chars);
  std::size_t first = next_fact_number(graph);
  assign_ids(mined.literals, 'f', first);
  while (std::any_of(mined.literals.begin(), mined.literals.end(),
                     [&](const LiteralSpan& l) { return graph.find(l.id).has_value(); }))
    assign_ids(mined.literals, 'f', ++first);
  out.warnings = std::move(mined.warnings);

  TextLookup texts;
  std::vector<const graph::Node*> assumptions;
  for (const auto& n : graph.nodes()) {
    if (n.kind != graph::NodeKind::assumption) continue;
    assumptions.push_back(&n);
    texts.emplace(n.id, n.text);
  }
  std::vector<OrderedPair> pairs;
  for (const auto& l : mined.literals) {
    out.graph.add_node(graph::Node{l.id, l.text, -1, graph::NodeKind::fact});
    out.fact_ids.push_back(l.id);
    texts.emplace(l.id, l.text);
    for (const auto* a : assumptions) {
      pairs.push_back({l.id, a->id});
      pairs.push_back({a->id, l.id});
    }
  }

  auto classified = classify_pairs(pairs, texts, classifier, config.classify);
  out.requests = classified.requests;
  out.failed_batches = std::move(classified.failed_batches);
  for (auto& d : classified.diagnostics) out.warnings.push_back(std::move(d));

  std::vector<RelationResult> outgoing;
  for (auto& r : classified.results) {
    const bool from_fact = out.graph.node(out.graph.index_of(r.pair.src)).kind == graph::NodeKind::fact;
    if (from_fact) {
      outgoing.push_back(std::move(r));
    } else if (r.label != Label::none && r.confidence >= config.threshold) {
      ++out.discarded_reverse;
    }
  }
  if (out.discarded_reverse > 0)
    spdlog::info("discarded {} assumption-to-fact relations", out.discarded_reverse);
  for (auto& e : merge_relations(outgoing, config.threshold)) {
    out.graph.add_edge(std::move(e));
    ++out.fact_edges;
  }
  return out;
}

GraphStats graph_stats(const graph::ArgumentGraph& g) {
  GraphStats s;
  s.nodes = g.node_count();
  s.assumptions = g.count(graph::NodeKind::assumption);
  s.facts = g.count(graph::NodeKind::fact);
  s.support = g.count(graph::Relation::support);
  s.attack = g.count(graph::Relation::attack);
  if (s.support == 0 && s.attack == 0) {
    s.ratio = "undefined";
  } else {
    const std::size_t d = std::gcd(s.attack, s.support);
    s.ratio = std::to_string(s.attack / d) + ":" + std::to_string(s.support / d);
  }
  if (s.support > 0) s.attack_per_support = static_cast<double>(s.attack) / static_cast<double>(s.support);
  if (s.attack > 0) s.support_per_attack = static_cast<double>(s.support) / static_cast<double>(s.attack);
  for (const auto& e : g.edges()) {
    auto& bucket = s.by_section[g.node(e.src).section];
    (e.relation == graph::Relation::support ? bucket.support : bucket.attack) += 1;
  }
  return s;
}

std::string format_stats(const GraphStats& s) {
  std::string out = fmt::format("nodes: {} (assumptions {}, facts {})\n", s.nodes, s.assumptions, s.facts);
  out += fmt::format("edges: {} (support {}, attack {})\n", s.support + s.attack, s.support, s.attack);
  out += fmt::format("attack:support ratio: {}", s.ratio);
  if (s.support > 0) out += fmt::format(" ({:.4f} attacks per support)", s.attack_per_support);
  out += "\n";
  if (!s.by_section.empty()) {
    out += "section  support  attack\n";
    for (const auto& [section, counts] : s.by_section)
      out += fmt::format("{:>7}  {:>7}  {:>6}\n", section < 0 ? std::string("facts") : std::to_string(section),
                         counts.support, counts.attack);
  }
  return out;
}

nlohmann::ordered_json stats_to_json(const GraphStats& s) {
  nlohmann::ordered_json sections = nlohmann::ordered_json::array();
  for (const auto& [section, counts] : s.by_section)
    sections.push_back({{"section", section}, {"support", counts.support}, {"attack", counts.attack}});
  nlohmann::ordered_json out = {{"nodes", s.nodes},
                                {"assumptions", s.assumptions},
                                {"facts", s.facts},
                                {"support", s.support},
                                {"attack", s.attack},
                                {"ratio", s.ratio},
                                {"attack_per_support", s.attack_per_support},
                                {"support_per_attack", s.support_per_attack},
                                {"by_section", sections}};
  return out;
}

}  // namespace argverify::pipeline
