#include "argverify/verify/feedback_file.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>

#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "argverify/error.hpp"

namespace argverify::verify {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  std::string out;
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", digest[i]);
  return out;
}

std::string format_utc(long long epoch_seconds) {
  const auto t = static_cast<std::time_t>(epoch_seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string resolve_timestamp(const std::optional<std::string>& fixed) {
  if (fixed) return *fixed;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    char* end = nullptr;
    const long long value = std::strtoll(epoch, &end, 10);
    if (*end != '\0') throw ConfigError("SOURCE_DATE_EPOCH", "not an integer");
    return format_utc(value);
  }
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  return format_utc(std::chrono::duration_cast<std::chrono::seconds>(now).count());
}

namespace {

std::string config_line(const FeedbackMeta& meta) {
  return fmt::format("m={} chain_depth={} top_j={}", meta.depth.m, meta.depth.chain_depth, meta.top_j);
}

}  // namespace

std::string feedback_file(const FeedbackMeta& meta, std::string_view message) {
  return fmt::format("---\ngraph_sha256: {}\nconfig: {}\ntimestamp: {}\n---\n{}", meta.graph_sha256,
                     config_line(meta), meta.timestamp, message);
}

std::string checkpoint_line(const FeedbackMeta& meta, std::string_view message) {
  nlohmann::ordered_json j = {{"timestamp", meta.timestamp},
                              {"graph_sha256", meta.graph_sha256},
                              {"config", config_line(meta)},
                              {"message", std::string(message)}};
  return j.dump() + "\n";
}

}  // namespace argverify::verify
