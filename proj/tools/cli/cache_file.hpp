#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "balnum/factor.hpp"
#include "balnum/seq.hpp"

namespace balnum::cli {

struct CacheEntry {
  SeqIndex index = 0;
  Factorization factors;
  std::chrono::milliseconds budget_spent{0};
  std::string tool_version;
};

struct CacheLoadResult {
  std::vector<CacheEntry> entries;    // validated, ascending by index
  std::vector<std::string> warnings;  // one per rejected or replaced line
};

// One cache entry as a JSONL line (LF-terminated): compact JSON with a CRC32
// field computed over the line with the crc key absent.
std::string cache_entry_line(const CacheEntry& entry);

// Loads a cache file. Lines failing to parse, failing the checksum, carrying
// an incompatible tool version, or whose factors do not re-multiply to
// balancing(index) are skipped with a warning; the rest load normally. A
// missing file is an empty cache, an unreadable one throws config_error.
CacheLoadResult cache_load(const std::string& path);

// Atomically replaces the file: writes a temp file in the same directory,
// fsyncs, then renames over the target. Writers serialize on an advisory
// flock over "<path>.lock". Entries are written ascending by index.
void cache_store(const std::string& path,
                 const std::vector<CacheEntry>& entries);

// Rewrites the file keeping only lines that pass validation. Returns the
// number of entries kept; warnings describe what was dropped.
std::size_t cache_repair(const std::string& path,
                         std::vector<std::string>* warnings);

// Replaces or inserts by index, keeping the list ascending.
void cache_upsert(std::vector<CacheEntry>& entries, CacheEntry entry);

}  // namespace balnum::cli
