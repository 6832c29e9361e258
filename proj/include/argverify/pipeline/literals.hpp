#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "argverify/pipeline/document.hpp"

namespace argverify::pipeline {

class ExtractorClient;

// A mined claim or premise; the two are not distinguished.
struct LiteralSpan {
  std::string id;
  int section = 0;
  // Byte offsets relative to the section text.
  TextSpan span;
  std::string text;

  bool operator==(const LiteralSpan&) const = default;
};

struct Extraction {
  std::vector<LiteralSpan> literals;  // ordered by offset, ids as returned by the client
  std::size_t dropped = 0;
  std::vector<std::string> warnings;
};

// Locates each returned span at its first exact occurrence in the section.
// Spans that cannot be found, or that land on an already located span, are
// dropped and counted. Throws ProtocolError when the response is not an
// object of strings; TransportError from the client propagates.
Extraction extract_literals(const Section& section, ExtractorClient& client);

// Renames literals to <prefix><n> with n zero-padded to four digits,
// numbered from `first` in (section, offset) order.
void assign_ids(std::vector<LiteralSpan>& literals, char prefix, std::size_t first = 1);

std::string literal_id(char prefix, std::size_t number);

enum class BieoTag { B, I, E, O };

struct TaggedToken {
  TextSpan span;
  BieoTag tag = BieoTag::O;

  bool operator==(const TaggedToken&) const = default;
};

// Whitespace tokenisation of `text` labelled against `spans`: the first
// token of a span is B, its last (if different) E, the rest I; tokens
// outside every span are O. Spans must be token-aligned and disjoint,
// otherwise MalformedInput.
std::vector<TaggedToken> to_bieo(std::string_view text, const std::vector<TextSpan>& spans);

// Inverse of to_bieo. A span runs from a B through the following I tokens
// and ends at an E, an O, the next B, or the end of input.
std::vector<TextSpan> from_bieo(const std::vector<TaggedToken>& tokens);

}  // namespace argverify::pipeline
