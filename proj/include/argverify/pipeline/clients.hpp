#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "argverify/pipeline/relations.hpp"

namespace argverify::pipeline {

// Wire contracts. Clients return the decoded response body; the pipeline
// validates it, so a mock and a remote model are held to the same checks.
//
//   POST /extract   {"section_text": "..."}
//                   -> {"<local id>": "<span text>", ...}
//   POST /classify  [{"pair_id": "...", "text_a": "...", "text_b": "..."}, ...]
//                   -> [{"pair_id": "...", "label": "support|attack|none",
//                        "confidence": 0.0..1.0}, ...]
//
// Transport problems throw TransportError; an undecodable body throws
// ProtocolError carrying an excerpt of it.

class ExtractorClient {
 public:
  virtual ~ExtractorClient() = default;
  virtual nlohmann::json extract(std::string_view section_text) = 0;
};

struct PairRequest {
  std::string pair_id;
  std::string text_a;
  std::string text_b;
};

// classify() may be called from several threads at once.
class ClassifierClient {
 public:
  virtual ~ClassifierClient() = default;
  virtual nlohmann::json classify(const std::vector<PairRequest>& batch) = 0;
};

// Marks every sentence containing one of the keywords as a whole word,
// case-insensitively. Local ids are "l1", "l2", ... in sentence order.
class MockExtractor final : public ExtractorClient {
 public:
  explicit MockExtractor(std::vector<std::string> keywords = {"should", "because"});
  nlohmann::json extract(std::string_view section_text) override;

 private:
  std::vector<std::string> keywords_;
};

struct KeywordRule {
  std::string keyword;
  Label label = Label::attack;
  double confidence = 0.75;
};

// Recognises the cue grammar planted in the synthetic corpora:
//   [#x]  tags a sentence as x
//   [+x]  the sentence supports the sentence tagged x
//   [-x]  the sentence attacks the sentence tagged x
// For a pair (a, b) the first cue in a naming b's tag decides the label.
// Failing that, the first keyword rule whose keyword occurs in a applies;
// otherwise the label is none.
class MockClassifier final : public ClassifierClient {
 public:
  static constexpr double kSupportConfidence = 0.9;
  static constexpr double kAttackConfidence = 0.85;
  static constexpr double kNoneConfidence = 0.8;

  explicit MockClassifier(std::vector<KeywordRule> rules = {});
  nlohmann::json classify(const std::vector<PairRequest>& batch) override;

  RelationResult decide(std::string_view text_a, std::string_view text_b) const;

 private:
  std::vector<KeywordRule> rules_;
};

// HTTP clients for the wire contracts above. `base_url` is scheme, host and
// optional port, e.g. "http://127.0.0.1:8085".
std::unique_ptr<ExtractorClient> make_http_extractor(const std::string& base_url,
                                                     std::chrono::milliseconds timeout = std::chrono::seconds(30));
std::unique_ptr<ClassifierClient> make_http_classifier(const std::string& base_url,
                                                       std::chrono::milliseconds timeout = std::chrono::seconds(30));

inline constexpr const char* kExtractorUrlEnv = "ARGVERIFY_EXTRACTOR_URL";
inline constexpr const char* kClassifierUrlEnv = "ARGVERIFY_CLASSIFIER_URL";

// Value of the environment variable when set and non-empty.
std::optional<std::string> endpoint_from_env(const char* name);

}  // namespace argverify::pipeline
