#include "argverify/app/core.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <fmt/format.h>

#include "argverify/baba/from_graph.hpp"
#include "argverify/error.hpp"

namespace argverify::app {

Clients make_clients(const ClientSettings& s) {
  Clients out;
  if (s.mock) {
    out.extractor = std::make_unique<pipeline::MockExtractor>(s.mock_keywords);
    out.classifier = std::make_unique<pipeline::MockClassifier>();
    return out;
  }
  const auto extractor = s.extractor_url ? s.extractor_url : pipeline::endpoint_from_env(pipeline::kExtractorUrlEnv);
  const auto classifier =
      s.classifier_url ? s.classifier_url : pipeline::endpoint_from_env(pipeline::kClassifierUrlEnv);
  if (!extractor)
    throw ConfigError("extractor_url", std::string("no endpoint; pass --mock, --extractor-url or set ") +
                                           pipeline::kExtractorUrlEnv);
  if (!classifier)
    throw ConfigError("classifier_url", std::string("no endpoint; pass --mock, --classifier-url or set ") +
                                            pipeline::kClassifierUrlEnv);
  out.extractor = pipeline::make_http_extractor(*extractor, s.timeout);
  out.classifier = pipeline::make_http_classifier(*classifier, s.timeout);
  return out;
}

std::string graph_hash(const graph::ArgumentGraph& g) { return verify::sha256_hex(graph::to_json(g)); }

void atomic_write(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.parent_path() / ("." + target.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw MalformedInput("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw MalformedInput("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw MalformedInput("cannot replace " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SolveOutput solve_graph(const graph::ArgumentGraph& g, const solver::SolverConfig& config) {
  config.validate();
  auto translation = baba::from_graph(g);
  const auto& f = translation.framework;
  auto result = solver::ExtensionSolver(f, config).run();
  SolveOutput out;
  out.semantics = config.semantics;
  out.k = config.k;
  out.complete = result.complete;
  out.warnings = std::move(translation.warnings);
  for (const auto& e : result.extensions) out.extensions.push_back(f.ids(e));
  return out;
}

nlohmann::ordered_json solve_to_json(const SolveOutput& out, const std::string& graph_sha256) {
  nlohmann::ordered_json exts = nlohmann::ordered_json::array();
  for (const auto& e : out.extensions) exts.push_back({{"size", e.size()}, {"members", e}});
  return {{"graph_sha256", graph_sha256},
          {"semantics", std::string(baba::to_string(out.semantics))},
          {"k", out.k},
          {"complete", out.complete},
          {"extensions", exts},
          {"warnings", out.warnings}};
}

std::string render_solve(const SolveOutput& out) {
  std::string text = fmt::format("{} extensions (k={}){}:\n", baba::to_string(out.semantics), out.k,
                                 out.complete ? "" : ", INCOMPLETE: solver timed out");
  if (out.extensions.empty()) text += "  none\n";
  for (const auto& e : out.extensions) text += fmt::format("  [{}] {{{}}}\n", e.size(), fmt::join(e, ", "));
  return text;
}

nlohmann::ordered_json fact_report_to_json(const verify::FactCheckReport& report) {
  auto entries = [](const std::vector<verify::FactCheckEntry>& list) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : list) arr.push_back({{"literal", e.literal}, {"fact", e.fact}, {"confidence", e.confidence}});
    return arr;
  };
  return {{"entries", entries(report.entries)}, {"corroborations", entries(report.corroborations)}};
}

std::string render_fact_report(const graph::ArgumentGraph& g, const verify::FactCheckReport& report) {
  std::string out = fmt::format("{} fact attack(s), {} corroboration(s)\n", report.entries.size(),
                                report.corroborations.size());
  if (report.entries.empty()) return out;
  out += fmt::format("{:<10} {:<10} {:>10}  {}\n", "literal", "fact", "confidence", "literal text");
  for (const auto& e : report.entries)
    out += fmt::format("{:<10} {:<10} {:>10.2f}  {}\n", e.literal, e.fact, e.confidence, g.node(e.literal).text);
  return out;
}

FactcheckOutput factcheck_graph(const graph::ArgumentGraph& g, const pipeline::Document& facts, Clients& clients,
                                const pipeline::MineConfig& config) {
  FactcheckOutput out{pipeline::ingest_facts(facts, g, *clients.extractor, *clients.classifier, config), {}};
  out.report = verify::fact_check(out.ingestion.graph);
  return out;
}

nlohmann::ordered_json factcheck_to_json(const FactcheckOutput& out, const std::string& graph_sha256) {
  return {{"graph_sha256", graph_sha256},
          {"facts_added", out.ingestion.fact_ids},
          {"fact_edges", out.ingestion.fact_edges},
          {"discarded_reverse", out.ingestion.discarded_reverse},
          {"failed_batches", out.ingestion.failed_batches},
          {"report", fact_report_to_json(out.report)}};
}

FeedbackOutput feedback_for(const graph::ArgumentGraph& g, const verify::DepthConfig& depth, std::size_t top_j,
                            const std::optional<std::string>& timestamp) {
  FeedbackOutput out;
  out.report = verify::analyze(g, depth, top_j);
  out.message = verify::render_feedback_message(g, out.report);
  out.meta = verify::FeedbackMeta{graph_hash(g), depth, top_j, verify::resolve_timestamp(timestamp)};
  out.file = verify::feedback_file(out.meta, out.message);
  return out;
}

nlohmann::ordered_json feedback_to_json(const FeedbackOutput& out) {
  nlohmann::ordered_json facts = nlohmann::ordered_json::array();
  for (const auto& f : out.report.fact_checked) {
    nlohmann::ordered_json attackers = nlohmann::ordered_json::array();
    for (const auto& a : f.attacks) attackers.push_back({{"fact", a.fact}, {"confidence", a.confidence}});
    nlohmann::ordered_json ancestry = nlohmann::ordered_json::array();
    for (const auto& s : f.ancestry) ancestry.push_back({{"node", s.node}, {"supports", s.supports}, {"depth", s.depth}});
    facts.push_back({{"literal", f.literal}, {"attacked_by", attackers}, {"ancestry", ancestry}});
  }
  nlohmann::ordered_json keys = nlohmann::ordered_json::array();
  for (const auto& k : out.report.key_literals) {
    nlohmann::ordered_json chains = nlohmann::ordered_json::array();
    for (const auto& c : k.undefended) chains.push_back({{"attacker", c.attacker}, {"path", c.path}});
    keys.push_back({{"literal", k.literal}, {"undefended", chains}, {"weak_links", k.weak_links}});
  }
  return {{"graph_sha256", out.meta.graph_sha256},
          {"fact_checked", facts},
          {"key_literals", keys},
          {"message", out.message},
          {"file", out.file}};
}

}  // namespace argverify::app
