#include "argverify/pipeline/document.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <utility>

#include "argverify/error.hpp"

namespace argverify::pipeline {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), is_space);
}

TextSpan trim(std::string_view text, TextSpan span) {
  while (span.begin < span.end && is_space(text[span.begin])) ++span.begin;
  while (span.end > span.begin && is_space(text[span.end - 1])) --span.end;
  return span;
}

bool is_heading_line(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && i < 3 && line[i] == ' ') ++i;
  return i < line.size() && line[i] == '#';
}

struct Paragraph {
  TextSpan span;
  bool heading_only = true;
};

std::vector<Paragraph> paragraphs(std::string_view text) {
  std::vector<Paragraph> out;
  std::optional<Paragraph> open;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    if (is_blank(line)) {
      if (open) out.push_back(*std::exchange(open, std::nullopt));
    } else {
      if (!open) open = Paragraph{{pos, eol}, true};
      open->span.end = eol;
      open->heading_only = open->heading_only && is_heading_line(line);
    }
    pos = eol + 1;
  }
  if (open) out.push_back(*open);
  for (auto& p : out) p.span = trim(text, p.span);
  return out;
}

// Largest cut in (pos, pos + max_chars] that keeps a sentence, then a word,
// then a UTF-8 sequence intact.
std::size_t cut_point(std::string_view text, std::size_t pos, std::size_t end, std::size_t max_chars) {
  const std::size_t limit = pos + max_chars;
  std::size_t best = 0;
  for (const auto& s : sentence_spans(text.substr(pos, end - pos))) {
    if (pos + s.end > limit) break;
    best = pos + s.end;
  }
  if (best > pos) return best;
  for (std::size_t i = limit; i > pos; --i)
    if (is_space(text[i])) return i;
  std::size_t cut = limit;
  while (cut > pos + 1 && (static_cast<unsigned char>(text[cut]) & 0xC0) == 0x80) --cut;
  return cut;
}

}  // namespace

Document make_document(std::string text, DocumentFormat format, std::string source) {
  if (is_blank(text)) throw MalformedInput("empty document: " + source);
  return Document{std::move(source), format, std::move(text)};
}

Document load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const bool md = path.ends_with(".md") || path.ends_with(".markdown");
  return make_document(buf.str(), md ? DocumentFormat::markdown : DocumentFormat::plain_text, path);
}

std::vector<TextSpan> sentence_spans(std::string_view text) {
  std::vector<TextSpan> out;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    const TextSpan s = trim(text, {start, end});
    if (s.begin < s.end) out.push_back(s);
    start = end;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      flush(i);
    } else if ((c == '.' || c == '!' || c == '?') && (i + 1 == text.size() || is_space(text[i + 1]))) {
      flush(i + 1);
    }
  }
  flush(text.size());
  return out;
}

std::vector<Section> split_sections(const Document& doc, std::size_t max_chars) {
  if (max_chars < kMinSectionChars)
    throw ConfigError("max_chars", "must be at least " + std::to_string(kMinSectionChars));
  const std::string_view text = doc.text;
  if (is_blank(text)) throw MalformedInput("empty document: " + doc.source);

  auto paras = paragraphs(text);
  if (doc.format == DocumentFormat::markdown) {
    std::vector<Paragraph> merged;
    std::optional<std::size_t> heading_begin;
    for (std::size_t i = 0; i < paras.size(); ++i) {
      if (paras[i].heading_only && i + 1 < paras.size()) {
        if (!heading_begin) heading_begin = paras[i].span.begin;
        continue;
      }
      Paragraph p = paras[i];
      if (heading_begin) p.span.begin = *std::exchange(heading_begin, std::nullopt);
      merged.push_back(p);
    }
    paras = std::move(merged);
  }

  std::vector<Section> out;
  auto emit = [&](TextSpan s) {
    s = trim(text, s);
    if (s.begin == s.end) return;
    out.push_back(Section{static_cast<int>(out.size()), std::string(text.substr(s.begin, s.end - s.begin)), s.begin,
                          s.end});
  };
  for (const auto& p : paras) {
    std::size_t pos = p.span.begin;
    while (p.span.end - pos > max_chars) {
      const std::size_t cut = cut_point(text, pos, p.span.end, max_chars);
      emit({pos, cut});
      pos = cut;
      while (pos < p.span.end && is_space(text[pos])) ++pos;
    }
    emit({pos, p.span.end});
  }
  return out;
}

}  // namespace argverify::pipeline
