#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace zerosum {

inline constexpr const char* kEngineVersion = "1.0.0";

struct CacheEntry {
  std::string key;
  nlohmann::json report;
  std::string engine_version;
  std::string timestamp;
};

/// Key for a command on a group with the options that affect its result:
/// FNV-1a over the canonical JSON dump, as 16 hex digits.
std::string cache_key(const std::string& command, const nlohmann::json& group, const nlohmann::json& options);

/// Persistent report cache in one JSON file. Saves go through a temporary
/// file and a rename so readers never see a partial write.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path path);

  /// $ZEROSUM_CACHE, else ".zerosum-cache.json" in the working directory.
  static std::filesystem::path default_path();

  const std::filesystem::path& path() const noexcept { return path_; }

  /// Hit only when the stored engine version equals kEngineVersion.
  std::optional<nlohmann::json> lookup(const std::string& key) const;
  void store(const std::string& key, const nlohmann::json& report, std::string timestamp);
  void clear() { entries_.clear(); }
  std::vector<CacheEntry> entries() const;

  void save() const;

 private:
  std::filesystem::path path_;
  std::map<std::string, CacheEntry> entries_;
};

/// UTC, ISO 8601.
std::string utc_timestamp();

}  // namespace zerosum
