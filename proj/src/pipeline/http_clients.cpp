#include <cstdlib>

#include <httplib.h>

#include "argverify/error.hpp"
#include "argverify/pipeline/clients.hpp"

namespace argverify::pipeline {

namespace {

nlohmann::json post_json(const std::string& base_url, const char* path, const nlohmann::json& request,
                         std::chrono::milliseconds timeout) {
  httplib::Client client(base_url);
  if (!client.is_valid()) throw TransportError("invalid endpoint '" + base_url + "'");
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  const auto res = client.Post(path, request.dump(), "application/json");
  if (!res) throw TransportError(base_url + path + ": " + httplib::to_string(res.error()));
  const std::string excerpt = res->body.substr(0, 200);
  if (res->status >= 500) throw TransportError(base_url + path + ": HTTP " + std::to_string(res->status));
  if (res->status != 200)
    throw ProtocolError(base_url + path + ": HTTP " + std::to_string(res->status) + ": " + excerpt);
  try {
    return nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error&) {
    throw ProtocolError(base_url + path + ": body is not JSON: " + excerpt);
  }
}

class HttpExtractor final : public ExtractorClient {
 public:
  HttpExtractor(std::string url, std::chrono::milliseconds timeout) : url_(std::move(url)), timeout_(timeout) {}

  nlohmann::json extract(std::string_view section_text) override {
    return post_json(url_, "/extract", {{"section_text", std::string(section_text)}}, timeout_);
  }

 private:
  std::string url_;
  std::chrono::milliseconds timeout_;
};

class HttpClassifier final : public ClassifierClient {
 public:
  HttpClassifier(std::string url, std::chrono::milliseconds timeout) : url_(std::move(url)), timeout_(timeout) {}

  nlohmann::json classify(const std::vector<PairRequest>& batch) override {
    nlohmann::json body = nlohmann::json::array();
    for (const auto& p : batch) body.push_back({{"pair_id", p.pair_id}, {"text_a", p.text_a}, {"text_b", p.text_b}});
    return post_json(url_, "/classify", body, timeout_);
  }

 private:
  std::string url_;
  std::chrono::milliseconds timeout_;
};

}  // namespace

std::unique_ptr<ExtractorClient> make_http_extractor(const std::string& base_url, std::chrono::milliseconds timeout) {
  return std::make_unique<HttpExtractor>(base_url, timeout);
}

std::unique_ptr<ClassifierClient> make_http_classifier(const std::string& base_url,
                                                       std::chrono::milliseconds timeout) {
  return std::make_unique<HttpClassifier>(base_url, timeout);
}

std::optional<std::string> endpoint_from_env(const char* name) {
  const char* value = std::getenv(name);
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::string(value);
}

}  // namespace argverify::pipeline
