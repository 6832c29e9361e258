#include "argverify/pipeline/relations.hpp"

#include <exception>
#include <map>
#include <optional>
#include <tuple>

#include <spdlog/spdlog.h>

#include "argverify/error.hpp"
#include "argverify/pipeline/clients.hpp"

namespace argverify::pipeline {

std::string_view to_string(Label label) noexcept {
  switch (label) {
    case Label::support:
      return "support";
    case Label::attack:
      return "attack";
    case Label::none:
      break;
  }
  return "none";
}

Label parse_label(std::string_view text) {
  if (text == "support") return Label::support;
  if (text == "attack") return Label::attack;
  if (text == "none") return Label::none;
  throw ProtocolError("unknown label '" + std::string(text) + "'");
}

void ClassifyOptions::validate() const {
  if (batch < 1) throw ConfigError("batch", "must be at least 1");
  if (parallelism < 1) throw ConfigError("parallelism", "must be at least 1");
}

namespace {

struct Batch {
  std::size_t first = 0;
  std::size_t last = 0;  // exclusive
};

std::string excerpt(const nlohmann::json& body) {
  std::string text = body.dump();
  if (text.size() > 200) text = text.substr(0, 200) + "...";
  return text;
}

// Decodes one response into labels for pairs [b.first, b.last); throws
// ProtocolError without touching `results` when anything is off.
void decode(const nlohmann::json& body, Batch b, std::vector<RelationResult>& results) {
  if (!body.is_array()) throw ProtocolError("classifier response is not an array: " + excerpt(body));
  std::vector<std::optional<std::pair<Label, double>>> best(b.last - b.first);
  for (const auto& entry : body) {
    if (!entry.is_object() || !entry.contains("pair_id") || !entry.contains("label") ||
        !entry.contains("confidence") || !entry["pair_id"].is_string() || !entry["label"].is_string() ||
        !entry["confidence"].is_number())
      throw ProtocolError("malformed classifier entry: " + excerpt(entry));
    const auto& id = entry["pair_id"].get_ref<const std::string&>();
    std::size_t index = 0;
    try {
      std::size_t used = 0;
      index = std::stoul(id, &used);
      if (used != id.size()) throw std::invalid_argument(id);
    } catch (const std::exception&) {
      throw ProtocolError("unknown pair_id '" + id + "'");
    }
    if (index < b.first || index >= b.last) throw ProtocolError("pair_id '" + id + "' is not in this batch");
    const double confidence = entry["confidence"].get<double>();
    if (!(confidence >= 0.0 && confidence <= 1.0))
      throw ProtocolError("confidence out of range for pair_id '" + id + "'");
    const Label label = parse_label(entry["label"].get_ref<const std::string&>());
    auto& slot = best[index - b.first];
    if (!slot || confidence > slot->second) slot = std::pair{label, confidence};
  }
  for (std::size_t i = 0; i < best.size(); ++i)
    if (!best[i]) throw ProtocolError("classifier response omits pair_id '" + std::to_string(b.first + i) + "'");
  for (std::size_t i = 0; i < best.size(); ++i) {
    results[b.first + i].label = best[i]->first;
    results[b.first + i].confidence = best[i]->second;
  }
}

struct BatchOutcome {
  bool failed = false;
  std::vector<std::string> diagnostics;
  std::exception_ptr fatal;
};

BatchOutcome run_batch(std::size_t index, Batch b, const std::vector<PairRequest>& requests,
                       ClassifierClient& client, std::vector<RelationResult>& results) {
  BatchOutcome out;
  try {
    const std::vector<PairRequest> slice(requests.begin() + static_cast<long>(b.first),
                                         requests.begin() + static_cast<long>(b.last));
    for (int attempt = 1; attempt <= 2; ++attempt) {
      try {
        decode(client.classify(slice), b, results);
        return out;
      } catch (const TransportError& e) {
        out.diagnostics.push_back("batch " + std::to_string(index) + " attempt " + std::to_string(attempt) +
                                  ": transport: " + e.what());
      } catch (const ProtocolError& e) {
        out.diagnostics.push_back("batch " + std::to_string(index) + " attempt " + std::to_string(attempt) +
                                  ": protocol: " + e.what());
      } catch (const nlohmann::json::exception& e) {
        out.diagnostics.push_back("batch " + std::to_string(index) + " attempt " + std::to_string(attempt) +
                                  ": protocol: " + e.what());
      }
    }
    out.failed = true;
  } catch (...) {
    out.fatal = std::current_exception();
  }
  return out;
}

}  // namespace

ClassifyOutcome classify_pairs(const std::vector<OrderedPair>& pairs, const TextLookup& texts,
                               ClassifierClient& client, const ClassifyOptions& options) {
  options.validate();
  ClassifyOutcome out;
  out.results.reserve(pairs.size());
  std::vector<PairRequest> requests;
  requests.reserve(pairs.size());
  auto text_of = [&](const std::string& id) -> const std::string& {
    const auto it = texts.find(id);
    if (it == texts.end()) throw MalformedInput("no text for literal " + id);
    return it->second;
  };
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out.results.push_back(RelationResult{pairs[i], Label::none, 0.0});
    requests.push_back(PairRequest{std::to_string(i), text_of(pairs[i].src), text_of(pairs[i].dst)});
  }

  std::vector<Batch> batches;
  for (std::size_t first = 0; first < pairs.size(); first += options.batch)
    batches.push_back({first, std::min(first + options.batch, pairs.size())});
  out.requests = batches.size();
  spdlog::info("classifying {} pairs in {} requests (batch {}, parallelism {})", pairs.size(), batches.size(),
               options.batch, options.parallelism);

  std::vector<BatchOutcome> outcomes(batches.size());
  const auto count = static_cast<long>(batches.size());
  const int threads = static_cast<int>(std::min<std::size_t>(options.parallelism, std::max<std::size_t>(1, batches.size())));
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1) if (threads > 1)
  for (long i = 0; i < count; ++i) {
    const auto b = static_cast<std::size_t>(i);
    outcomes[b] = run_batch(b, batches[b], requests, client, out.results);
  }

  for (std::size_t b = 0; b < outcomes.size(); ++b) {
    if (outcomes[b].fatal) std::rethrow_exception(outcomes[b].fatal);
    for (auto& d : outcomes[b].diagnostics) {
      spdlog::warn("{}", d);
      out.diagnostics.push_back(std::move(d));
    }
    if (outcomes[b].failed) out.failed_batches.push_back(b);
  }
  if (!batches.empty() && out.failed_batches.size() == batches.size())
    throw ClientUnavailable("classifier failed on every batch (" + std::to_string(batches.size()) + ")");
  if (!out.failed_batches.empty())
    spdlog::warn("{} of {} batches failed open with label none", out.failed_batches.size(), batches.size());
  return out;
}

std::vector<graph::Edge> merge_relations(const std::vector<RelationResult>& results, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw ConfigError("threshold", "must lie in [0, 1]");
  std::vector<graph::Edge> out;
  std::map<std::tuple<std::string, std::string, graph::Relation>, std::size_t> seen;
  for (const auto& r : results) {
    if (r.label == Label::none || r.confidence < threshold) continue;
    const auto relation = r.label == Label::support ? graph::Relation::support : graph::Relation::attack;
    const auto [it, fresh] = seen.try_emplace({r.pair.src, r.pair.dst, relation}, out.size());
    if (fresh) {
      out.push_back(graph::Edge{r.pair.src, r.pair.dst, relation, r.confidence});
    } else {
      out[it->second].confidence = std::max(out[it->second].confidence, r.confidence);
    }
  }
  return out;
}

}  // namespace argverify::pipeline
