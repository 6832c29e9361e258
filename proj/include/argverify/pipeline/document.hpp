#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace argverify::pipeline {

enum class DocumentFormat { markdown, plain_text };

struct Document {
  std::string source;
  DocumentFormat format = DocumentFormat::markdown;
  std::string text;
};

// Format from the extension: .md and .markdown are markdown, anything else
// plain text. Throws MalformedInput if the file is unreadable or blank.
Document load_document(const std::string& path);
// Throws MalformedInput on blank text.
Document make_document(std::string text, DocumentFormat format = DocumentFormat::markdown,
                       std::string source = "<memory>");

struct Section {
  int index = 0;
  std::string text;
  // Byte offsets into Document::text; text == document.substr(begin, end - begin).
  std::size_t begin = 0;
  std::size_t end = 0;
};

inline constexpr std::size_t kMinSectionChars = 200;

// Paragraphs (blank-line separated) become sections. A paragraph longer than
// max_chars is cut at the last sentence boundary that fits, falling back to
// the last whitespace and finally to a hard cut. In markdown, a paragraph
// made only of heading lines is joined to the paragraph after it.
// Throws ConfigError("max_chars") below kMinSectionChars and MalformedInput
// on a blank document.
std::vector<Section> split_sections(const Document& doc, std::size_t max_chars);

struct TextSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const TextSpan&) const = default;
};

// Sentence spans of `text`, trimmed of surrounding whitespace. A sentence
// ends after '.', '!' or '?' followed by whitespace, or at a line break.
std::vector<TextSpan> sentence_spans(std::string_view text);

}  // namespace argverify::pipeline
