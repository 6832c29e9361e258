#include "argverify/pipeline/pairs.hpp"

#include <algorithm>
#include <charconv>

#include "argverify/error.hpp"

namespace argverify::pipeline {

void WindowMode::validate() const {
  if (kind == Kind::window && n < 0) throw ConfigError("window", "width must be non-negative");
}

std::string to_string(WindowMode mode) {
  switch (mode.kind) {
    case WindowMode::Kind::within_section:
      return "within";
    case WindowMode::Kind::all_sections:
      return "all";
    case WindowMode::Kind::window:
      break;
  }
  return "window:" + std::to_string(mode.n);
}

WindowMode parse_window_mode(std::string_view text) {
  if (text == "within") return WindowMode::within_section();
  if (text == "all") return WindowMode::all_sections();
  constexpr std::string_view prefix = "window:";
  if (text.starts_with(prefix)) {
    const auto digits = text.substr(prefix.size());
    int n = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty() && n >= 0)
      return WindowMode::window(n);
  }
  throw ConfigError("window", "expected 'within', 'all' or 'window:<n>', got '" + std::string(text) + "'");
}

std::set<OrderedPair> generate_pairs(const std::vector<LiteralSpan>& literals, int section_count, WindowMode mode) {
  mode.validate();
  std::vector<std::vector<const LiteralSpan*>> by_section(static_cast<std::size_t>(std::max(section_count, 0)));
  for (const auto& l : literals) {
    if (l.section < 0 || l.section >= section_count)
      throw MalformedInput("literal " + l.id + " lies outside the section range");
    by_section[static_cast<std::size_t>(l.section)].push_back(&l);
  }

  int n = 0;
  if (mode.kind == WindowMode::Kind::window) n = mode.n;
  if (mode.kind == WindowMode::Kind::all_sections) n = section_count;

  std::set<OrderedPair> out;
  std::vector<const LiteralSpan*> window;
  // One window already covers every section; later ones would repeat it.
  const int centres = n >= section_count - 1 ? std::min(section_count, 1) : section_count;
  for (int k = 0; k < centres; ++k) {
    window.clear();
    for (int s = std::max(0, k - n); s <= std::min(section_count - 1, k + n); ++s)
      window.insert(window.end(), by_section[static_cast<std::size_t>(s)].begin(),
                    by_section[static_cast<std::size_t>(s)].end());
    for (const auto* a : window)
      for (const auto* b : window)
        if (a->id != b->id) out.insert({a->id, b->id});
  }
  return out;
}

}  // namespace argverify::pipeline
