#include "zerosum/cache.hpp"

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "zerosum/error.hpp"

namespace zerosum {

std::string cache_key(const std::string& command, const nlohmann::json& group, const nlohmann::json& options) {
  const nlohmann::json payload{{"command", command}, {"group", group}, {"options", options}};
  const std::string text = payload.dump();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[hash & 0xF];
    hash >>= 4;
  }
  return out;
}

ResultCache::ResultCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("cache file " + path_.string() + " is not valid JSON: " + e.what());
  }
  for (const auto& item : j.value("entries", nlohmann::json::array())) {
    CacheEntry e{item.at("key").get<std::string>(), item.at("report"), item.at("engine_version").get<std::string>(),
                 item.value("timestamp", std::string())};
    entries_[e.key] = std::move(e);
  }
}

std::filesystem::path ResultCache::default_path() {
  if (const char* env = std::getenv("ZEROSUM_CACHE"); env != nullptr && *env != '\0') return env;
  return ".zerosum-cache.json";
}

std::optional<nlohmann::json> ResultCache::lookup(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end() || it->second.engine_version != kEngineVersion) return std::nullopt;
  return it->second.report;
}

void ResultCache::store(const std::string& key, const nlohmann::json& report, std::string timestamp) {
  entries_[key] = CacheEntry{key, report, kEngineVersion, std::move(timestamp)};
}

std::vector<CacheEntry> ResultCache::entries() const {
  std::vector<CacheEntry> out;
  for (const auto& [k, e] : entries_) out.push_back(e);
  return out;
}

void ResultCache::save() const {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& [k, e] : entries_)
    items.push_back(
        {{"key", e.key}, {"engine_version", e.engine_version}, {"timestamp", e.timestamp}, {"report", e.report}});
  const nlohmann::json doc{{"entries", items}};

  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  auto tmp = path_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    out << doc.dump(1) << '\n';
    if (!out) throw Error("failed writing cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path_);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace zerosum
