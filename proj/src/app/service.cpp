#include "argverify/app/service.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "argverify/error.hpp"

namespace argverify::app {

namespace {

using Reply = GraphService::Reply;

Reply json_reply(int status, const nlohmann::ordered_json& body, const std::string& hash) {
  return Reply{status, body.dump(2) + "\n", hash};
}

Reply error_reply(int status, const std::string& reason, const std::string& hash) {
  return json_reply(status, {{"error", reason}, {"graph_sha256", hash}}, hash);
}

nlohmann::json parse_body(const std::string& body) {
  if (body.empty()) return nlohmann::json::object();
  auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw MalformedInput("request body must be a JSON object");
  return j;
}

template <typename T>
T field(const nlohmann::json& j, const char* name, T fallback) {
  if (!j.contains(name)) return fallback;
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(name, "has the wrong type");
  }
}

// Maps the error hierarchy onto HTTP statuses.
template <typename F>
Reply guarded(const std::string& hash, F&& f) {
  try {
    return f();
  } catch (const ClientUnavailable& e) {
    return error_reply(503, e.what(), hash);
  } catch (const TransportError& e) {
    return error_reply(503, e.what(), hash);
  } catch (const ConfigError& e) {
    return json_reply(400, {{"error", e.what()}, {"field", e.field()}, {"graph_sha256", hash}}, hash);
  } catch (const MalformedInput& e) {
    return error_reply(400, e.what(), hash);
  } catch (const Error& e) {
    return error_reply(500, e.what(), hash);
  }
}

}  // namespace

GraphService::GraphService(graph::ArgumentGraph graph, ServiceConfig config, Clients clients)
    : config_(std::move(config)),
      clients_(std::move(clients)),
      workers_(static_cast<std::ptrdiff_t>(std::max<std::size_t>(1, config_.workers))) {
  config_.solver.validate();
  config_.mine.validate();
  config_.depth.validate();
  auto hash = graph_hash(graph);
  current_ = std::make_shared<const Snapshot>(Snapshot{std::move(graph), std::move(hash)});
}

std::shared_ptr<const GraphService::Snapshot> GraphService::snapshot() const {
  std::shared_lock lock(mutex_);
  return current_;
}

std::string GraphService::hash() const { return snapshot()->hash; }

Reply GraphService::get_graph() const {
  const auto snap = snapshot();
  return Reply{200, graph::to_json(snap->graph), snap->hash};
}

Reply GraphService::health() const {
  const auto snap = snapshot();
  return json_reply(200,
                    {{"status", "ok"},
                     {"graph_sha256", snap->hash},
                     {"nodes", snap->graph.node_count()},
                     {"edges", snap->graph.edge_count()}},
                    snap->hash);
}

Reply GraphService::post_facts(const std::string& body) {
  // Ingestions run one at a time; readers keep the old snapshot meanwhile.
  std::lock_guard serial(mutation_);
  const auto snap = snapshot();
  return guarded(snap->hash, [&] {
    const auto req = parse_body(body);
    const auto text = field<std::string>(req, "text", "");
    auto doc = pipeline::make_document(text, pipeline::DocumentFormat::markdown, "<request>");
    if (!clients_.extractor || !clients_.classifier) throw ClientUnavailable("no model clients configured");
    auto out = factcheck_graph(snap->graph, doc, clients_, config_.mine);
    auto next = std::make_shared<const Snapshot>(Snapshot{out.ingestion.graph, graph_hash(out.ingestion.graph)});
    {
      std::unique_lock lock(mutex_);
      current_ = next;
    }
    spdlog::info("ingested {} fact(s), {} fact edge(s); graph {}", out.ingestion.fact_ids.size(),
                 out.ingestion.fact_edges, next->hash);
    return json_reply(200, factcheck_to_json(out, next->hash), next->hash);
  });
}

Reply GraphService::post_solve(const std::string& body) {
  const auto snap = snapshot();
  return guarded(snap->hash, [&] {
    const auto req = parse_body(body);
    auto cfg = config_.solver;
    cfg.k = field<std::size_t>(req, "k", cfg.k);
    if (req.contains("semantics")) {
      try {
        cfg.semantics = baba::parse_semantics(field<std::string>(req, "semantics", ""));
      } catch (const MalformedInput& e) {
        throw ConfigError("semantics", e.what());
      }
    }
    cfg.seed = field<std::uint64_t>(req, "seed", cfg.seed);
    cfg.validate();
    if (!workers_.try_acquire_for(cfg.timeout)) return error_reply(503, "solver pool is busy", snap->hash);
    struct Release {
      std::counting_semaphore<>& s;
      ~Release() { s.release(); }
    } release{workers_};
    return json_reply(200, solve_to_json(solve_graph(snap->graph, cfg), snap->hash), snap->hash);
  });
}

Reply GraphService::post_feedback(const std::string& body) const {
  const auto snap = snapshot();
  return guarded(snap->hash, [&] {
    const auto req = parse_body(body);
    auto depth = config_.depth;
    depth.m = field<int>(req, "m", depth.m);
    depth.chain_depth = field<int>(req, "chain_depth", depth.chain_depth);
    const auto top_j = field<std::size_t>(req, "top_j", config_.top_j);
    auto timestamp = config_.timestamp;
    if (req.contains("timestamp")) timestamp = field<std::string>(req, "timestamp", "");
    return json_reply(200, feedback_to_json(feedback_for(snap->graph, depth, top_j, timestamp)), snap->hash);
  });
}

void GraphService::mount(httplib::Server& server) {
  auto send = [](httplib::Response& res, const Reply& r, const char* type) {
    res.status = r.status;
    res.set_header("X-Graph-Hash", r.hash);
    res.set_header("Access-Control-Expose-Headers", "X-Graph-Hash");
    res.set_content(r.body, type);
  };
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  server.Get("/graph", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, get_graph(), "application/json");
  });
  server.Get("/health", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, health(), "application/json");
  });
  server.Post("/facts", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, post_facts(req.body), "application/json");
  });
  server.Post("/solve", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, post_solve(req.body), "application/json");
  });
  server.Post("/feedback", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, post_feedback(req.body), "application/json");
  });
}

void run_service(const std::string& graph_path, const ServiceConfig& config, const ClientSettings& settings,
                 const std::function<void(int port)>& on_ready) {
  Clients clients;
  try {
    clients = make_clients(settings);
  } catch (const ConfigError& e) {
    // Reads and solving need no models; /facts answers 503 until restarted with endpoints.
    spdlog::warn("no model clients: {}", e.what());
  }
  GraphService service(graph::load_graph_file(graph_path), config, std::move(clients));
  httplib::Server server;
  service.mount(server);
  const int port = config.port == 0 ? server.bind_to_any_port(config.host) : config.port;
  if (config.port != 0 && !server.bind_to_port(config.host, port))
    throw ConfigError("port", "cannot bind " + config.host + ":" + std::to_string(port));
  if (port < 0) throw ConfigError("port", "cannot bind " + config.host);
  spdlog::info("serving {} on http://{}:{}", graph_path, config.host, port);
  if (on_ready) on_ready(port);
  server.listen_after_bind();
}

}  // namespace argverify::app
