#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <shared_mutex>
#include <string>

#include "argverify/app/core.hpp"

namespace httplib {
class Server;
}

namespace argverify::app {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  // Solver jobs allowed to run at once; further requests wait up to the
  // solver timeout for a slot and then get 503.
  std::size_t workers = 2;
  solver::SolverConfig solver;
  pipeline::MineConfig mine;
  verify::DepthConfig depth;
  std::size_t top_j = 3;
  std::optional<std::string> timestamp;
};

// Local API over one in-memory graph:
//   GET  /graph     interchange JSON of the current graph
//   GET  /health
//   POST /facts     {"text"}                        fact ingestion + report
//   POST /solve     {"k", "semantics", "seed"}      extensions
//   POST /feedback  {"m", "chain_depth", "top_j", "timestamp"}
// Every response carries the current graph hash in X-Graph-Hash, and JSON
// bodies repeat it as "graph_sha256". Reads work on immutable snapshots;
// fact ingestion replaces the snapshot under an exclusive lock.
class GraphService {
 public:
  struct Reply {
    int status = 200;
    std::string body;
    std::string hash;
  };

  GraphService(graph::ArgumentGraph graph, ServiceConfig config, Clients clients);

  Reply get_graph() const;
  Reply health() const;
  Reply post_facts(const std::string& body);
  Reply post_solve(const std::string& body);
  Reply post_feedback(const std::string& body) const;

  std::string hash() const;
  void mount(httplib::Server& server);

 private:
  struct Snapshot {
    graph::ArgumentGraph graph;
    std::string hash;
  };

  std::shared_ptr<const Snapshot> snapshot() const;

  ServiceConfig config_;
  Clients clients_;
  mutable std::shared_mutex mutex_;
  std::mutex mutation_;
  std::shared_ptr<const Snapshot> current_;
  std::counting_semaphore<> workers_;
};

// Loads the graph, binds host:port and blocks until the server stops.
// `on_ready` runs once the socket is bound. Without model endpoints the
// service still starts and POST /facts answers 503.
void run_service(const std::string& graph_path, const ServiceConfig& config, const ClientSettings& clients,
                 const std::function<void(int port)>& on_ready = {});

}  // namespace argverify::app
