// Copyright 2026 The expsum-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expsum/charsums.hpp"
#include "expsum/moments.hpp"

namespace expsum {

std::string to_hex(const PolyId& id);
std::string sha256_hex(std::string_view bytes);

enum class CacheKind { Table, Dist };

struct CacheEntry {
  std::string poly_hash;  // 64 hex digits
  u64 p = 0;
  CacheKind kind = CacheKind::Table;
  std::filesystem::path path;
  std::string checksum;
  std::uintmax_t bytes = 0;
};

/// On-disk store: <dir>/<poly hash>/<p>.exps (tables) and <p>.expd (value
/// distributions), each with a <file>.sha256 sidecar. Writes go to a temp
/// file that is renamed into place under an O_EXCL lock file, so readers
/// never see a partial entry. Anything failing its checksum or header check
/// is deleted and counted, never returned.
class TableCache {
 public:
  explicit TableCache(std::filesystem::path dir);

  /// $EXPSUM_CACHE_DIR if set, else ./.expsum-cache
  static std::filesystem::path default_dir();

  const std::filesystem::path& dir() const noexcept { return dir_; }

  std::optional<SumTable> load_table(const PolyId& id, u64 p);
  std::optional<ValueDist> load_dist(const PolyId& id, u64 p);
  /// False when another writer holds the key; the caller's data is still good.
  bool store(const SumTable& t);
  bool store(const PolyId& id, const ValueDist& d);

  /// Entries sorted by (hash, p, kind). Does not read file contents.
  std::vector<CacheEntry> list() const;
  /// Removes every entry whose hash starts with the prefix (all when empty).
  std::size_t evict(std::string_view hash_prefix);

  struct VerifyResult {
    std::size_t ok = 0;
    std::vector<CacheEntry> corrupt;  // already removed
  };
  VerifyResult verify();

  /// Plain tables of f mod p, read through the cache. Thread-safe.
  TableProvider provider();

  struct Stats {
    std::size_t hits = 0, misses = 0, corrupt = 0, stored = 0;
  };
  Stats stats() const noexcept;
  /// Paths of entries found corrupt so far, with the reason.
  std::vector<std::string> corrupt_log() const;

 private:
  std::filesystem::path entry_path(const std::string& hash, u64 p, CacheKind kind) const;
  std::optional<std::string> read_verified(const std::filesystem::path& path);
  bool write_atomic(const std::filesystem::path& path, const std::string& bytes);
  void mark_corrupt(const std::filesystem::path& path, const std::string& why);

  std::filesystem::path dir_;
  std::atomic<std::size_t> hits_{0}, misses_{0}, corrupt_{0}, stored_{0};
  mutable std::vector<std::string> log_;
  mutable std::mutex log_mutex_;
};

}  // namespace expsum
