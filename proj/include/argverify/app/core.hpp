#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "argverify/graph/argument_graph.hpp"
#include "argverify/pipeline/clients.hpp"
#include "argverify/pipeline/mining.hpp"
#include "argverify/solver/extension_solver.hpp"
#include "argverify/verify/feedback_file.hpp"
#include "argverify/verify/verification.hpp"

// Operations shared by the command line and the HTTP service, so both give
// identical answers for identical inputs.
namespace argverify::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitTimeout = 3;
inline constexpr int kExitClient = 4;

struct ClientSettings {
  bool mock = false;
  std::optional<std::string> extractor_url;   // falls back to ARGVERIFY_EXTRACTOR_URL
  std::optional<std::string> classifier_url;  // falls back to ARGVERIFY_CLASSIFIER_URL
  std::vector<std::string> mock_keywords{"should", "because"};
  std::chrono::milliseconds timeout{30'000};
};

struct Clients {
  std::unique_ptr<pipeline::ExtractorClient> extractor;
  std::unique_ptr<pipeline::ClassifierClient> classifier;
};

// Mocks with `mock`, otherwise HTTP clients for the configured endpoints.
// Throws ConfigError naming the missing endpoint before any request is made.
Clients make_clients(const ClientSettings& settings);

// SHA-256 of the canonical serialization.
std::string graph_hash(const graph::ArgumentGraph& g);

// Writes to a sibling temporary file and renames it over `path`.
void atomic_write(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

struct SolveOutput {
  baba::Semantics semantics = baba::Semantics::admissible;
  std::size_t k = 0;
  bool complete = true;
  std::vector<std::vector<std::string>> extensions;
  std::vector<std::string> warnings;
};

SolveOutput solve_graph(const graph::ArgumentGraph& g, const solver::SolverConfig& config);
nlohmann::ordered_json solve_to_json(const SolveOutput& out, const std::string& graph_sha256);
std::string render_solve(const SolveOutput& out);

nlohmann::ordered_json fact_report_to_json(const verify::FactCheckReport& report);
std::string render_fact_report(const graph::ArgumentGraph& g, const verify::FactCheckReport& report);

struct FactcheckOutput {
  pipeline::FactIngestion ingestion;
  verify::FactCheckReport report;
};

FactcheckOutput factcheck_graph(const graph::ArgumentGraph& g, const pipeline::Document& facts, Clients& clients,
                                const pipeline::MineConfig& config);
nlohmann::ordered_json factcheck_to_json(const FactcheckOutput& out, const std::string& graph_sha256);

struct FeedbackOutput {
  verify::FeedbackReport report;
  std::string message;
  // Header plus message, as written by the feedback command.
  std::string file;
  verify::FeedbackMeta meta;
};

FeedbackOutput feedback_for(const graph::ArgumentGraph& g, const verify::DepthConfig& depth, std::size_t top_j,
                            const std::optional<std::string>& timestamp);
nlohmann::ordered_json feedback_to_json(const FeedbackOutput& out);

}  // namespace argverify::app
