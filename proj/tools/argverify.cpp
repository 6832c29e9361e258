#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <httplib.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "argverify/app/core.hpp"
#include "argverify/app/service.hpp"
#include "argverify/baba/from_graph.hpp"
#include "argverify/error.hpp"
#include "argverify/solver/encoding.hpp"

namespace fs = std::filesystem;
using namespace argverify;

namespace {

struct ClientOptions {
  app::ClientSettings settings;
  std::string extractor_url;
  std::string classifier_url;
  long timeout_ms = 30'000;

  void add(CLI::App* cmd) {
    cmd->add_flag("--mock", settings.mock, "Use the deterministic keyword and cue mocks instead of remote models");
    cmd->add_option("--extractor-url", extractor_url, "Extractor endpoint (default: $ARGVERIFY_EXTRACTOR_URL)");
    cmd->add_option("--classifier-url", classifier_url, "Classifier endpoint (default: $ARGVERIFY_CLASSIFIER_URL)");
    cmd->add_option("--client-timeout-ms", timeout_ms, "Per-request timeout for remote models")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--mock-keyword", settings.mock_keywords, "Sentence keywords for the mock extractor");
  }

  app::ClientSettings resolve() const {
    auto s = settings;
    if (!extractor_url.empty()) s.extractor_url = extractor_url;
    if (!classifier_url.empty()) s.classifier_url = classifier_url;
    s.timeout = std::chrono::milliseconds(timeout_ms);
    return s;
  }
};

struct MineOptions {
  pipeline::MineConfig config;
  std::string window = "window:1";

  void add(CLI::App* cmd, bool with_window) {
    cmd->add_option("--max-chars", config.max_chars, "Section length limit")->capture_default_str();
    if (with_window)
      cmd->add_option("--window", window, "Pairing mode: within, all or window:<n>")->capture_default_str();
    cmd->add_option("--threshold", config.threshold, "Minimum confidence for an edge")->capture_default_str();
    cmd->add_option("--batch", config.classify.batch, "Pairs per classifier request")->capture_default_str();
    cmd->add_option("--parallelism", config.classify.parallelism, "Classifier requests in flight")
        ->capture_default_str();
  }

  pipeline::MineConfig resolve() const {
    auto c = config;
    c.window = pipeline::parse_window_mode(window);
    c.validate();
    return c;
  }
};

struct SolveOptions {
  std::size_t k = 3;
  std::string semantics = "admissible";
  long timeout_ms = 30'000;
  std::uint64_t seed = 0;

  void add(CLI::App* cmd) {
    cmd->add_option("-k,--k", k, "Number of extensions")->capture_default_str();
    cmd->add_option("--semantics", semantics, "admissible, preferred, complete or stable")->capture_default_str();
    cmd->add_option("--timeout-ms", timeout_ms, "Solver deadline")->capture_default_str();
    cmd->add_option("--seed", seed, "Solver seed")->capture_default_str();
  }

  solver::SolverConfig resolve() const {
    solver::SolverConfig c;
    c.k = k;
    try {
      c.semantics = baba::parse_semantics(semantics);
    } catch (const MalformedInput& e) {
      throw ConfigError("semantics", e.what());
    }
    c.timeout = std::chrono::milliseconds(timeout_ms);
    c.seed = seed;
    c.validate();
    return c;
  }
};

struct DepthOptions {
  verify::DepthConfig depth;
  std::size_t top_j = 3;
  std::string timestamp;

  void add(CLI::App* cmd) {
    cmd->add_option("--m", depth.m, "Attack chain depth")->capture_default_str();
    cmd->add_option("--chain-depth", depth.chain_depth, "Support ancestry depth")->capture_default_str();
    cmd->add_option("--top-j", top_j, "Key literals examined")->capture_default_str();
    cmd->add_option("--timestamp", timestamp, "Header timestamp (default: $SOURCE_DATE_EPOCH, else now)");
  }

  std::optional<std::string> fixed_timestamp() const {
    return timestamp.empty() ? std::nullopt : std::optional(timestamp);
  }
};

std::string sibling(const std::string& path, const std::string& suffix) {
  const fs::path p(path);
  return (p.parent_path() / (p.stem().string() + suffix)).string();
}

void require_complete_batches(const std::vector<std::size_t>& failed, bool allow_partial) {
  if (failed.empty() || allow_partial) return;
  std::string ids;
  for (auto b : failed) ids += (ids.empty() ? "" : ", ") + std::to_string(b);
  throw ClientUnavailable("classifier batches failed: " + ids + " (rerun, or pass --allow-partial)");
}

int run_mine(const std::string& input, const std::string& output, const MineOptions& mine,
             const ClientOptions& clients, bool allow_partial) {
  const auto config = mine.resolve();
  auto c = app::make_clients(clients.resolve());
  const auto doc = pipeline::load_document(input);
  auto report = pipeline::mine_document(doc, *c.extractor, *c.classifier, config);
  require_complete_batches(report.failed_batches, allow_partial);
  app::atomic_write(output, graph::to_json(report.graph));
  std::cout << "wrote " << output << " (" << report.sections << " sections, " << report.pairs << " pairs, "
            << report.requests << " requests, " << report.dropped_spans << " dropped spans)\n";
  std::cout << pipeline::format_stats(pipeline::graph_stats(report.graph));
  return app::kExitOk;
}

int run_solve(const std::string& graph_path, const SolveOptions& opts, const std::string& output,
              const std::string& dimacs) {
  const auto config = opts.resolve();
  const auto g = graph::load_graph_file(graph_path);
  if (!dimacs.empty()) {
    const auto f = baba::from_graph(g).framework;
    const auto sem = config.semantics == baba::Semantics::preferred ? baba::Semantics::admissible : config.semantics;
    std::ostringstream cnf;
    solver::write_dimacs(cnf, solver::encode(f, sem));
    app::atomic_write(dimacs, cnf.str());
  }
  const auto out = app::solve_graph(g, config);
  for (const auto& w : out.warnings) spdlog::warn("{}", w);
  std::cout << app::render_solve(out);
  if (!output.empty()) app::atomic_write(output, app::solve_to_json(out, app::graph_hash(g)).dump(2) + "\n");
  return out.complete ? app::kExitOk : app::kExitTimeout;
}

int run_factcheck(const std::string& graph_path, const std::string& facts_path, std::string output,
                  std::string report_path, const MineOptions& mine, const ClientOptions& clients, bool allow_partial) {
  const auto config = mine.resolve();
  if (!fs::exists(facts_path)) throw MalformedInput("facts file not found: " + facts_path);
  auto c = app::make_clients(clients.resolve());
  const auto g = graph::load_graph_file(graph_path);
  const auto facts = pipeline::load_document(facts_path);
  auto out = app::factcheck_graph(g, facts, c, config);
  require_complete_batches(out.ingestion.failed_batches, allow_partial);
  if (output.empty()) output = sibling(graph_path, ".facts.json");
  if (report_path.empty()) report_path = sibling(graph_path, ".factcheck.json");
  if (fs::exists(output) && fs::equivalent(output, graph_path))
    throw ConfigError("output", "must differ from the input graph");
  const auto hash = app::graph_hash(out.ingestion.graph);
  app::atomic_write(output, graph::to_json(out.ingestion.graph));
  app::atomic_write(report_path, app::factcheck_to_json(out, hash).dump(2) + "\n");
  std::cout << "added " << out.ingestion.fact_ids.size() << " fact(s), " << out.ingestion.fact_edges
            << " fact edge(s); discarded " << out.ingestion.discarded_reverse << " assumption-to-fact relation(s)\n";
  std::cout << app::render_fact_report(out.ingestion.graph, out.report);
  std::cout << "wrote " << output << " and " << report_path << "\n";
  return app::kExitOk;
}

int run_feedback(const std::string& graph_path, const DepthOptions& opts, std::string output,
                 const std::string& checkpoint) {
  opts.depth.validate();
  const auto g = graph::load_graph_file(graph_path);
  const auto out = app::feedback_for(g, opts.depth, opts.top_j, opts.fixed_timestamp());
  if (output.empty()) output = sibling(graph_path, ".feedback.md");
  app::atomic_write(output, out.file);
  if (!checkpoint.empty()) {
    std::ofstream log(checkpoint, std::ios::app | std::ios::binary);
    if (!log) throw MalformedInput("cannot append to " + checkpoint);
    log << verify::checkpoint_line(out.meta, out.message);
  }
  std::cout << out.message;
  spdlog::info("wrote {}", output);
  return app::kExitOk;
}

int run_stats(const std::string& graph_path, bool json) {
  const auto stats = pipeline::graph_stats(graph::load_graph_file(graph_path));
  std::cout << (json ? pipeline::stats_to_json(stats).dump(2) + "\n" : pipeline::format_stats(stats));
  return app::kExitOk;
}

int run_mock_models(const std::string& host, int port, const std::vector<std::string>& keywords) {
  pipeline::MockExtractor extractor(keywords);
  pipeline::MockClassifier classifier;
  std::mutex extractor_mutex;
  httplib::Server server;
  auto reply = [](httplib::Response& res, const nlohmann::json& body) {
    res.set_content(body.dump(), "application/json");
  };
  server.Post("/extract", [&](const httplib::Request& req, httplib::Response& res) {
    const auto body = nlohmann::json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.contains("section_text") || !body["section_text"].is_string()) {
      res.status = 400;
      return;
    }
    std::lock_guard lock(extractor_mutex);
    reply(res, extractor.extract(body["section_text"].get<std::string>()));
  });
  server.Post("/classify", [&](const httplib::Request& req, httplib::Response& res) {
    const auto body = nlohmann::json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_array()) {
      res.status = 400;
      return;
    }
    std::vector<pipeline::PairRequest> batch;
    for (const auto& p : body) {
      if (!p.is_object() || !p.contains("pair_id") || !p.contains("text_a") || !p.contains("text_b")) {
        res.status = 400;
        return;
      }
      batch.push_back({p["pair_id"].get<std::string>(), p["text_a"].get<std::string>(), p["text_b"].get<std::string>()});
    }
    reply(res, classifier.classify(batch));
  });
  const int bound = port == 0 ? server.bind_to_any_port(host) : (server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw ConfigError("port", "cannot bind " + host + ":" + std::to_string(port));
  std::cout << "mock models on http://" << host << ":" << bound << std::endl;
  server.listen_after_bind();
  return app::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("argverify"));

  CLI::App cli{"Mine argument graphs, solve bipolar ABA extensions and produce verification feedback"};
  cli.require_subcommand(1);
  cli.fallthrough();
  std::string log_level = "info";
  cli.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")->capture_default_str();

  std::function<int()> action;

  // mine
  auto* mine = cli.add_subcommand("mine", "Mine a markdown or text document into a graph file");
  std::string mine_input, mine_output;
  MineOptions mine_opts;
  ClientOptions mine_clients;
  bool mine_partial = false;
  mine->add_option("--input", mine_input, "Document to mine")->required();
  mine->add_option("--output", mine_output, "Graph file to write")->required();
  mine->add_flag("--allow-partial", mine_partial, "Write the graph even if some classifier batches failed");
  mine_opts.add(mine, true);
  mine_clients.add(mine);
  mine->callback([&] { action = [&] { return run_mine(mine_input, mine_output, mine_opts, mine_clients, mine_partial); }; });

  // solve
  auto* solve = cli.add_subcommand("solve", "List the k largest extensions of a graph");
  std::string solve_graph, solve_output, solve_dimacs;
  SolveOptions solve_opts;
  solve->add_option("--graph", solve_graph, "Graph file")->required();
  solve->add_option("--output", solve_output, "Machine-readable result file");
  solve->add_option("--dimacs", solve_dimacs, "Also write the CNF encoding (admissible for preferred)");
  solve_opts.add(solve);
  solve->callback([&] { action = [&] { return run_solve(solve_graph, solve_opts, solve_output, solve_dimacs); }; });

  // factcheck
  auto* factcheck = cli.add_subcommand("factcheck", "Add facts to a graph and report the literals they attack");
  std::string fc_graph, fc_facts, fc_output, fc_report;
  MineOptions fc_opts;
  ClientOptions fc_clients;
  bool fc_partial = false;
  factcheck->add_option("--graph", fc_graph, "Graph file")->required();
  factcheck->add_option("--facts", fc_facts, "Facts document")->required();
  factcheck->add_option("--output", fc_output, "Augmented graph (default: <graph>.facts.json)");
  factcheck->add_option("--report", fc_report, "Report file (default: <graph>.factcheck.json)");
  factcheck->add_flag("--allow-partial", fc_partial, "Write outputs even if some classifier batches failed");
  fc_opts.add(factcheck, false);
  fc_clients.add(factcheck);
  factcheck->callback([&] {
    action = [&] { return run_factcheck(fc_graph, fc_facts, fc_output, fc_report, fc_opts, fc_clients, fc_partial); };
  });

  // feedback
  auto* feedback = cli.add_subcommand("feedback", "Render the verification feedback message for a graph");
  std::string fb_graph, fb_output, fb_checkpoint;
  DepthOptions fb_opts;
  feedback->add_option("--graph", fb_graph, "Graph file")->required();
  feedback->add_option("--output", fb_output, "Feedback file (default: <graph>.feedback.md)");
  feedback->add_option("--checkpoint", fb_checkpoint, "JSONL checkpoint log to append to");
  fb_opts.add(feedback);
  feedback->callback([&] { action = [&] { return run_feedback(fb_graph, fb_opts, fb_output, fb_checkpoint); }; });

  // stats
  auto* stats = cli.add_subcommand("stats", "Summarise a graph file");
  std::string stats_graph;
  bool stats_json = false;
  stats->add_option("--graph", stats_graph, "Graph file")->required();
  stats->add_flag("--json", stats_json, "Print JSON");
  stats->callback([&] { action = [&] { return run_stats(stats_graph, stats_json); }; });

  // serve
  auto* serve = cli.add_subcommand("serve", "Serve a graph over a local HTTP API");
  std::string serve_graph;
  app::ServiceConfig serve_cfg;
  SolveOptions serve_solve;
  DepthOptions serve_depth;
  MineOptions serve_mine;
  ClientOptions serve_clients;
  serve->add_option("--graph", serve_graph, "Graph file")->required();
  serve->add_option("--host", serve_cfg.host, "Bind address")->capture_default_str();
  serve->add_option("--port", serve_cfg.port, "Port (0 picks a free one)")->capture_default_str();
  serve->add_option("--workers", serve_cfg.workers, "Concurrent solver jobs")->capture_default_str();
  serve_solve.add(serve);
  serve_depth.add(serve);
  serve_mine.add(serve, false);
  serve_clients.add(serve);
  serve->callback([&] {
    action = [&] {
      serve_cfg.solver = serve_solve.resolve();
      serve_cfg.depth = serve_depth.depth;
      serve_cfg.top_j = serve_depth.top_j;
      serve_cfg.timestamp = serve_depth.fixed_timestamp();
      serve_cfg.mine = serve_mine.resolve();
      app::run_service(serve_graph, serve_cfg, serve_clients.resolve(),
                       [](int port) { std::cout << "listening on port " << port << std::endl; });
      return app::kExitOk;
    };
  });

  // mock-models
  auto* mocks = cli.add_subcommand("mock-models", "Serve the mock extractor and classifier over HTTP");
  std::string mock_host = "127.0.0.1";
  int mock_port = 8085;
  std::vector<std::string> mock_keywords{"should", "because"};
  mocks->add_option("--host", mock_host, "Bind address")->capture_default_str();
  mocks->add_option("--port", mock_port, "Port (0 picks a free one)")->capture_default_str();
  mocks->add_option("--keyword", mock_keywords, "Sentence keywords for the extractor");
  mocks->callback([&] { action = [&] { return run_mock_models(mock_host, mock_port, mock_keywords); }; });

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? app::kExitOk : app::kExitUsage;
  }

  try {
    spdlog::set_level(spdlog::level::from_str(log_level));
    return action();
  } catch (const ConfigError& e) {
    std::cerr << "error: invalid " << e.what() << "\n";
    return app::kExitUsage;
  } catch (const MalformedInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return app::kExitUsage;
  } catch (const ClientUnavailable& e) {
    std::cerr << "error: client failure: " << e.what() << "\n";
    return app::kExitClient;
  } catch (const TransportError& e) {
    std::cerr << "error: client failure: " << e.what() << "\n";
    return app::kExitClient;
  } catch (const ProtocolError& e) {
    std::cerr << "error: client failure: " << e.what() << "\n";
    return app::kExitClient;
  } catch (const BoundExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return app::kExitUsage;
  }
}
