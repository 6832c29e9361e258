#include <algorithm>
#include <cctype>
#include <regex>

#include "argverify/pipeline/clients.hpp"
#include "argverify/pipeline/document.hpp"

namespace argverify::pipeline {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool contains_word(std::string_view haystack, std::string_view word) {
  for (std::size_t at = haystack.find(word); at != std::string_view::npos; at = haystack.find(word, at + 1)) {
    const bool left = at == 0 || !is_word_char(haystack[at - 1]);
    const bool right = at + word.size() == haystack.size() || !is_word_char(haystack[at + word.size()]);
    if (left && right) return true;
  }
  return false;
}

const std::regex& tag_pattern() {
  static const std::regex re(R"(\[#([A-Za-z0-9_]+)\])");
  return re;
}

const std::regex& cue_pattern() {
  static const std::regex re(R"(\[([+-])([A-Za-z0-9_]+)\])");
  return re;
}

}  // namespace

MockExtractor::MockExtractor(std::vector<std::string> keywords) {
  for (auto& k : keywords) keywords_.push_back(lower(k));
}

nlohmann::json MockExtractor::extract(std::string_view section_text) {
  nlohmann::json out = nlohmann::json::object();
  std::size_t n = 0;
  for (const auto& s : sentence_spans(section_text)) {
    const auto sentence = section_text.substr(s.begin, s.end - s.begin);
    const auto folded = lower(sentence);
    if (std::any_of(keywords_.begin(), keywords_.end(), [&](const auto& k) { return contains_word(folded, k); }))
      out["l" + std::to_string(++n)] = std::string(sentence);
  }
  return out;
}

MockClassifier::MockClassifier(std::vector<KeywordRule> rules) : rules_(std::move(rules)) {
  for (auto& r : rules_) r.keyword = lower(r.keyword);
}

RelationResult MockClassifier::decide(std::string_view text_a, std::string_view text_b) const {
  RelationResult out;
  std::match_results<std::string_view::const_iterator> tag;
  if (std::regex_search(text_b.begin(), text_b.end(), tag, tag_pattern())) {
    const std::string target = tag[1].str();
    for (std::regex_iterator<std::string_view::const_iterator> it(text_a.begin(), text_a.end(), cue_pattern()), end;
         it != end; ++it) {
      if ((*it)[2].str() != target) continue;
      const bool support = (*it)[1].str() == "+";
      out.label = support ? Label::support : Label::attack;
      out.confidence = support ? kSupportConfidence : kAttackConfidence;
      return out;
    }
  }
  const auto folded = lower(text_a);
  for (const auto& rule : rules_) {
    if (contains_word(folded, rule.keyword)) {
      out.label = rule.label;
      out.confidence = rule.confidence;
      return out;
    }
  }
  out.label = Label::none;
  out.confidence = kNoneConfidence;
  return out;
}

nlohmann::json MockClassifier::classify(const std::vector<PairRequest>& batch) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& req : batch) {
    const auto r = decide(req.text_a, req.text_b);
    out.push_back({{"pair_id", req.pair_id}, {"label", std::string(to_string(r.label))}, {"confidence", r.confidence}});
  }
  return out;
}

}  // namespace argverify::pipeline
