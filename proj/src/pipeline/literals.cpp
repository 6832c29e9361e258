#include "argverify/pipeline/literals.hpp"

#include <algorithm>
#include <cstdio>
#include <tuple>

#include "argverify/error.hpp"
#include "argverify/pipeline/clients.hpp"

namespace argverify::pipeline {

namespace {

std::string excerpt(const nlohmann::json& body) {
  std::string text = body.dump();
  if (text.size() > 200) text = text.substr(0, 200) + "...";
  return text;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::vector<TextSpan> tokens(std::string_view text) {
  std::vector<TextSpan> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    if (i == text.size()) break;
    const std::size_t begin = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    out.push_back({begin, i});
  }
  return out;
}

}  // namespace

Extraction extract_literals(const Section& section, ExtractorClient& client) {
  const nlohmann::json body = client.extract(section.text);
  if (!body.is_object()) throw ProtocolError("extractor response is not an object: " + excerpt(body));
  for (const auto& [key, value] : body.items())
    if (!value.is_string()) throw ProtocolError("extractor span '" + key + "' is not a string: " + excerpt(body));

  Extraction out;
  for (const auto& [key, value] : body.items()) {
    const auto& text = value.get_ref<const std::string&>();
    const std::size_t at = text.empty() ? std::string::npos : section.text.find(text);
    if (at == std::string::npos) {
      ++out.dropped;
      out.warnings.push_back("section " + std::to_string(section.index) + ": span '" + key + "' not found in text");
      continue;
    }
    const TextSpan span{at, at + text.size()};
    const bool duplicate = std::any_of(out.literals.begin(), out.literals.end(),
                                       [&](const LiteralSpan& l) { return l.span == span; });
    if (duplicate) {
      ++out.dropped;
      out.warnings.push_back("section " + std::to_string(section.index) + ": span '" + key + "' duplicates another");
      continue;
    }
    out.literals.push_back(LiteralSpan{key, section.index, span, text});
  }
  std::sort(out.literals.begin(), out.literals.end(), [](const LiteralSpan& a, const LiteralSpan& b) {
    return std::tie(a.span.begin, a.span.end) < std::tie(b.span.begin, b.span.end);
  });
  return out;
}

std::string literal_id(char prefix, std::size_t number) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%04zu", prefix, number);
  return buf;
}

void assign_ids(std::vector<LiteralSpan>& literals, char prefix, std::size_t first) {
  std::stable_sort(literals.begin(), literals.end(), [](const LiteralSpan& a, const LiteralSpan& b) {
    return std::tie(a.section, a.span.begin) < std::tie(b.section, b.span.begin);
  });
  for (auto& l : literals) l.id = literal_id(prefix, first++);
}

std::vector<TaggedToken> to_bieo(std::string_view text, const std::vector<TextSpan>& spans) {
  auto sorted = spans;
  std::sort(sorted.begin(), sorted.end(), [](TextSpan a, TextSpan b) { return a.begin < b.begin; });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].begin < sorted[i - 1].end) throw MalformedInput("overlapping spans cannot be BIEO-tagged");

  std::vector<TaggedToken> out;
  for (TextSpan t : tokens(text)) out.push_back({t, BieoTag::O});
  for (TextSpan s : sorted) {
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const TextSpan t = out[i].span;
      if (t.begin >= s.begin && t.end <= s.end) {
        inside.push_back(i);
      } else if (t.begin < s.end && t.end > s.begin) {
        throw MalformedInput("span is not aligned to token boundaries");
      }
    }
    if (inside.empty() || out[inside.front()].span.begin != s.begin || out[inside.back()].span.end != s.end)
      throw MalformedInput("span is not aligned to token boundaries");
    for (std::size_t i : inside) out[i].tag = BieoTag::I;
    out[inside.front()].tag = BieoTag::B;
    if (inside.size() > 1) out[inside.back()].tag = BieoTag::E;
  }
  return out;
}

std::vector<TextSpan> from_bieo(const std::vector<TaggedToken>& tokens) {
  std::vector<TextSpan> out;
  bool open = false;
  for (const auto& t : tokens) {
    switch (t.tag) {
      case BieoTag::B:
        out.push_back(t.span);
        open = true;
        break;
      case BieoTag::I:
      case BieoTag::E:
        if (open) out.back().end = t.span.end;
        open = open && t.tag == BieoTag::I;
        break;
      case BieoTag::O:
        open = false;
        break;
    }
  }
  return out;
}

}  // namespace argverify::pipeline
