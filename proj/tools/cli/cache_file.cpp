#include "cache_file.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>
#include <zlib.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "balnum/errors.hpp"
#include "json.hpp"
#include "version.hpp"

namespace balnum::cli {
namespace {

using nlohmann::json;

std::string crc32_hex(const std::string& data) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(data.data()),
              static_cast<uInt>(data.size()));
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

bool all_digits(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) {
           return c >= '0' && c <= '9';
         });
}

// "MAJOR.MINOR.PATCH", numeric components only; returns the major part.
bool semver_major(const std::string& v, unsigned& major) {
  std::size_t dot1 = v.find('.');
  if (dot1 == std::string::npos) return false;
  std::size_t dot2 = v.find('.', dot1 + 1);
  if (dot2 == std::string::npos) return false;
  std::string a = v.substr(0, dot1);
  std::string b = v.substr(dot1 + 1, dot2 - dot1 - 1);
  std::string c = v.substr(dot2 + 1);
  if (!all_digits(a) || !all_digits(b) || !all_digits(c)) return false;
  auto [p, ec] = std::from_chars(a.data(), a.data() + a.size(), major);
  return ec == std::errc() && p == a.data() + a.size();
}

json entry_to_json(const CacheEntry& e) {
  json factors = json::array();
  for (const auto& [prime, exp] : e.factors.factors) {
    json f;
    f["prime"] = to_decimal(prime);
    f["exp"] = exp;
    factors.push_back(f);
  }
  json j;
  j["index"] = std::to_string(e.index);
  j["factors"] = factors;
  j["cofactor"] = to_decimal(e.factors.cofactor);
  j["status"] = e.factors.complete() ? "complete" : "partial";
  j["budget_spent_ms"] = std::to_string(e.budget_spent.count());
  j["tool_version"] = e.tool_version;
  return j;
}

// Parses and fully validates one line; on failure fills `why` and returns
// nothing usable in `out`.
bool parse_line(const std::string& line, CacheEntry& out, std::string& why) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    why = "not a JSON object";
    return false;
  }
  static const char* const kKeys[] = {"index",  "factors",        "cofactor",
                                      "status", "budget_spent_ms", "crc",
                                      "tool_version"};
  for (const auto& [key, _] : j.items()) {
    if (std::find_if(std::begin(kKeys), std::end(kKeys), [&](const char* k) {
          return key == k;
        }) == std::end(kKeys)) {
      why = "unexpected key \"" + key + "\"";
      return false;
    }
  }
  for (const char* k : kKeys) {
    if (!j.contains(k)) {
      why = std::string("missing key \"") + k + "\"";
      return false;
    }
  }
  if (!j["crc"].is_string()) {
    why = "crc is not a string";
    return false;
  }
  std::string stored_crc = j["crc"].get<std::string>();
  json without = j;
  without.erase("crc");
  if (crc32_hex(without.dump()) != stored_crc) {
    why = "checksum mismatch";
    return false;
  }
  if (!j["tool_version"].is_string()) {
    why = "tool_version is not a string";
    return false;
  }
  std::string version = j["tool_version"].get<std::string>();
  unsigned entry_major = 0, current_major = 0;
  semver_major(std::string(kToolVersion), current_major);
  if (!semver_major(version, entry_major)) {
    why = "tool_version \"" + version + "\" is not a semver string";
    return false;
  }
  if (entry_major != current_major) {
    why = "tool_version " + version + " is incompatible with " +
          std::string(kToolVersion);
    return false;
  }
  if (!j["index"].is_string() || !all_digits(j["index"].get<std::string>())) {
    why = "index is not a decimal string";
    return false;
  }
  const std::string index_str = j["index"].get<std::string>();
  SeqIndex index = 0;
  auto [p, ec] = std::from_chars(index_str.data(),
                                 index_str.data() + index_str.size(), index);
  if (ec != std::errc() || p != index_str.data() + index_str.size()) {
    why = "index out of range";
    return false;
  }
  if (balancing_digits_estimate(index) > 10'000'000) {
    why = "index too large to validate";
    return false;
  }
  if (!j["status"].is_string()) {
    why = "status is not a string";
    return false;
  }
  const std::string status = j["status"].get<std::string>();
  if (status != "complete" && status != "partial") {
    why = "status \"" + status + "\" is neither complete nor partial";
    return false;
  }
  if (!j["cofactor"].is_string() ||
      !all_digits(j["cofactor"].get<std::string>())) {
    why = "cofactor is not a decimal string";
    return false;
  }
  if (!j["budget_spent_ms"].is_string() ||
      !all_digits(j["budget_spent_ms"].get<std::string>())) {
    why = "budget_spent_ms is not a decimal string";
    return false;
  }
  if (!j["factors"].is_array()) {
    why = "factors is not an array";
    return false;
  }

  Factorization f;
  f.cofactor = BigNat(j["cofactor"].get<std::string>());
  f.status = status == "complete" ? FactorStatus::Complete
                                  : FactorStatus::Partial;
  BigNat prev = 0;
  for (const json& item : j["factors"]) {
    if (!item.is_object() || !item.contains("prime") ||
        !item.contains("exp") || !item["prime"].is_string() ||
        !all_digits(item["prime"].get<std::string>()) ||
        !item["exp"].is_number_unsigned()) {
      why = "malformed factor entry";
      return false;
    }
    BigNat prime(item["prime"].get<std::string>());
    unsigned exp = item["exp"].get<unsigned>();
    if (exp == 0 || prime <= prev) {
      why = "factors are not ascending primes with positive exponents";
      return false;
    }
    prev = prime;
    f.factors.emplace_back(std::move(prime), exp);
  }
  if (f.complete() && f.cofactor != 1) {
    why = "complete entry with cofactor != 1";
    return false;
  }
  if (f.value() != balancing(index)) {
    why = "factors do not re-multiply to the balancing number";
    return false;
  }
  const std::string spent_str = j["budget_spent_ms"].get<std::string>();
  long long spent = 0;
  auto [sp, sec] =
      std::from_chars(spent_str.data(), spent_str.data() + spent_str.size(),
                      spent);
  if (sec != std::errc() || sp != spent_str.data() + spent_str.size()) {
    why = "budget_spent_ms out of range";
    return false;
  }

  out.index = index;
  out.factors = std::move(f);
  out.budget_spent = std::chrono::milliseconds(spent);
  out.tool_version = version;
  return true;
}

// RAII advisory lock on "<path>.lock"; released on destruction.
class FileLock {
 public:
  explicit FileLock(const std::string& path) {
    fd_ = ::open((path + ".lock").c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ >= 0) ::flock(fd_, LOCK_EX);
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace

std::string cache_entry_line(const CacheEntry& entry) {
  json j = entry_to_json(entry);
  j["crc"] = crc32_hex(j.dump());
  return j.dump() + "\n";
}

CacheLoadResult cache_load(const std::string& path) {
  CacheLoadResult result;
  std::ifstream in(path);
  if (!in) {
    if (::access(path.c_str(), F_OK) != 0) return result;  // no file yet
    throw config_error("cache file " + path + " is not readable");
  }
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    CacheEntry entry;
    std::string why;
    if (!parse_line(line, entry, why)) {
      result.warnings.push_back(path + ":" + std::to_string(lineno) + ": " +
                                why + "; line skipped");
      continue;
    }
    auto it = std::find_if(
        result.entries.begin(), result.entries.end(),
        [&](const CacheEntry& e) { return e.index == entry.index; });
    if (it != result.entries.end()) {
      result.warnings.push_back(path + ":" + std::to_string(lineno) +
                                ": duplicate index " +
                                std::to_string(entry.index) +
                                "; later line wins");
      *it = std::move(entry);
    } else {
      result.entries.push_back(std::move(entry));
    }
  }
  std::sort(result.entries.begin(), result.entries.end(),
            [](const CacheEntry& a, const CacheEntry& b) {
              return a.index < b.index;
            });
  return result;
}

void cache_store(const std::string& path,
                 const std::vector<CacheEntry>& entries) {
  std::vector<CacheEntry> sorted = entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const CacheEntry& a, const CacheEntry& b) {
              return a.index < b.index;
            });
  std::string payload;
  for (const CacheEntry& e : sorted) payload += cache_entry_line(e);

  FileLock lock(path);
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  int fd = ::open(tmp.c_str(), O_CREAT | O_TRUNC | O_WRONLY, 0644);
  if (fd < 0)
    throw config_error("cannot write cache file " + tmp + ": " +
                       std::strerror(errno));
  const char* data = payload.data();
  std::size_t left = payload.size();
  while (left > 0) {
    ssize_t n = ::write(fd, data, left);
    if (n < 0) {
      ::close(fd);
      ::unlink(tmp.c_str());
      throw config_error("cannot write cache file " + tmp + ": " +
                         std::strerror(errno));
    }
    data += n;
    left -= static_cast<std::size_t>(n);
  }
  ::fsync(fd);
  ::close(fd);
  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    ::unlink(tmp.c_str());
    throw config_error("cannot replace cache file " + path + ": " +
                       std::strerror(errno));
  }
}

std::size_t cache_repair(const std::string& path,
                         std::vector<std::string>* warnings) {
  CacheLoadResult loaded = cache_load(path);
  if (warnings)
    warnings->insert(warnings->end(), loaded.warnings.begin(),
                     loaded.warnings.end());
  cache_store(path, loaded.entries);
  return loaded.entries.size();
}

void cache_upsert(std::vector<CacheEntry>& entries, CacheEntry entry) {
  auto it = std::find_if(
      entries.begin(), entries.end(),
      [&](const CacheEntry& e) { return e.index == entry.index; });
  if (it != entries.end()) {
    *it = std::move(entry);
    return;
  }
  entries.push_back(std::move(entry));
  std::sort(entries.begin(), entries.end(),
            [](const CacheEntry& a, const CacheEntry& b) {
              return a.index < b.index;
            });
}

}  // namespace balnum::cli
