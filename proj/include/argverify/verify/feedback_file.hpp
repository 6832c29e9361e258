#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "argverify/verify/verification.hpp"

namespace argverify::verify {

std::string sha256_hex(std::string_view bytes);

struct FeedbackMeta {
  std::string graph_sha256;
  DepthConfig depth;
  std::size_t top_j = 3;
  std::string timestamp;  // ISO-8601 UTC
};

// The timestamp to stamp on an output: `fixed` when given, else
// SOURCE_DATE_EPOCH when set, else the current time.
std::string resolve_timestamp(const std::optional<std::string>& fixed);
std::string format_utc(long long epoch_seconds);

// Fenced header followed by the message:
//   ---
//   graph_sha256: <hex>
//   config: m=<m> chain_depth=<d> top_j=<j>
//   timestamp: <iso>
//   ---
//   <message>
std::string feedback_file(const FeedbackMeta& meta, std::string_view message);

// One JSON object per line: timestamp, graph_sha256, config, message.
std::string checkpoint_line(const FeedbackMeta& meta, std::string_view message);

}  // namespace argverify::verify
