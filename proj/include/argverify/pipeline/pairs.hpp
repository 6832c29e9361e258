#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "argverify/pipeline/literals.hpp"

namespace argverify::pipeline {

// Which literal pairs are sent to the classifier. For every section k the
// literals of sections k-n..k+n (clamped) are paired, so two literals pair
// when their sections are at most 2n apart. within_section is window(0) and
// all_sections is an unbounded window.
struct WindowMode {
  enum class Kind { within_section, window, all_sections };

  Kind kind = Kind::within_section;
  int n = 0;

  static WindowMode within_section() { return {Kind::within_section, 0}; }
  static WindowMode window(int n) { return {Kind::window, n}; }
  static WindowMode all_sections() { return {Kind::all_sections, 0}; }

  // Throws ConfigError("window") for a negative width.
  void validate() const;

  bool operator==(const WindowMode&) const = default;
};

// "within", "all", or "window:<n>".
std::string to_string(WindowMode mode);
WindowMode parse_window_mode(std::string_view text);

struct OrderedPair {
  std::string src;
  std::string dst;

  auto operator<=>(const OrderedPair&) const = default;
};

// `section_count` bounds the window; literals must lie in [0, section_count).
std::set<OrderedPair> generate_pairs(const std::vector<LiteralSpan>& literals, int section_count, WindowMode mode);

}  // namespace argverify::pipeline
