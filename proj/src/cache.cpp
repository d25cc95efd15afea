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

#include "expsum/cache.hpp"

#include <fcntl.h>
#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "expsum/error.hpp"

namespace expsum {

namespace fs = std::filesystem;

namespace {

const char* extension(CacheKind k) { return k == CacheKind::Table ? ".exps" : ".expd"; }

bool is_hash_dir(const std::string& s) {
  return s.size() == 64 && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

std::optional<u64> parse_prime_stem(const std::string& stem) {
  if (stem.empty() || stem.size() > 19 || !std::all_of(stem.begin(), stem.end(), ::isdigit)) return std::nullopt;
  return std::stoull(stem);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void remove_quietly(const fs::path& p) {
  std::error_code ec;
  fs::remove(p, ec);
}

// O_EXCL lock file; released on scope exit. Stale locks (writer died) are
// broken after a minute.
class KeyLock {
 public:
  explicit KeyLock(fs::path path) : path_(std::move(path)) {
    for (int attempt = 0; attempt < 200; ++attempt) {
      const int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
      if (fd >= 0) {
        ::close(fd);
        held_ = true;
        return;
      }
      std::error_code ec;
      const auto age = fs::file_time_type::clock::now() - fs::last_write_time(path_, ec);
      if (!ec && age > std::chrono::minutes(1)) remove_quietly(path_);
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  }
  ~KeyLock() {
    if (held_) remove_quietly(path_);
  }
  KeyLock(const KeyLock&) = delete;
  KeyLock& operator=(const KeyLock&) = delete;
  bool held() const noexcept { return held_; }

 private:
  fs::path path_;
  bool held_ = false;
};

}  // namespace

std::string to_hex(const PolyId& id) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (auto b : id) {
    s += digits[b >> 4];
    s += digits[b & 15];
  }
  return s;
}

std::string sha256_hex(std::string_view bytes) {
  PolyId out{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 || len != 32) {
    throw Error(ErrorCode::Internal, "SHA-256 failed");
  }
  return to_hex(out);
}

TableCache::TableCache(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create cache directory " + dir_.string() + ": " + ec.message());
}

fs::path TableCache::default_dir() {
  if (const char* env = std::getenv("EXPSUM_CACHE_DIR"); env && *env) return env;
  return ".expsum-cache";
}

fs::path TableCache::entry_path(const std::string& hash, u64 p, CacheKind kind) const {
  return dir_ / hash / (std::to_string(p) + extension(kind));
}

void TableCache::mark_corrupt(const fs::path& path, const std::string& why) {
  remove_quietly(path);
  remove_quietly(path.string() + ".sha256");
  ++corrupt_;
  std::lock_guard<std::mutex> lock(log_mutex_);
  log_.push_back(path.string() + ": " + why);
}

std::optional<std::string> TableCache::read_verified(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  std::string bytes = slurp(path);
  std::string want = slurp(path.string() + ".sha256");
  while (!want.empty() && (want.back() == '\n' || want.back() == ' ')) want.pop_back();
  if (want.empty()) {
    mark_corrupt(path, "missing checksum");
    return std::nullopt;
  }
  if (sha256_hex(bytes) != want) {
    mark_corrupt(path, "checksum mismatch");
    return std::nullopt;
  }
  return bytes;
}

bool TableCache::write_atomic(const fs::path& path, const std::string& bytes) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + path.parent_path().string());
  KeyLock lock(path.string() + ".lock");
  if (!lock.held()) return false;
  const std::string sum = sha256_hex(bytes);
  const fs::path tmp = path.string() + ".tmp";
  const fs::path sum_tmp = path.string() + ".sha256.tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    std::ofstream so(sum_tmp, std::ios::trunc);
    so << sum << '\n';
    if (!out || !so) {
      remove_quietly(tmp);
      remove_quietly(sum_tmp);
      throw Error(ErrorCode::Io, "write failed under " + path.parent_path().string());
    }
  }
  // Checksum first: a data file without a matching sidecar reads as corrupt,
  // which is safe; the reverse order could not be told apart from a good entry.
  fs::rename(sum_tmp, path.string() + ".sha256", ec);
  if (!ec) fs::rename(tmp, path, ec);
  if (ec) {
    remove_quietly(tmp);
    remove_quietly(sum_tmp);
    throw Error(ErrorCode::Io, "rename failed: " + ec.message());
  }
  ++stored_;
  return true;
}

std::optional<SumTable> TableCache::load_table(const PolyId& id, u64 p) {
  const fs::path path = entry_path(to_hex(id), p, CacheKind::Table);
  auto bytes = read_verified(path);
  if (!bytes) return std::nullopt;
  try {
    std::istringstream in(*bytes);
    SumTable t = read_table(in);
    if (t.p != p || t.poly_id != id) {
      mark_corrupt(path, "header does not match its key");
      return std::nullopt;
    }
    return t;
  } catch (const Error& e) {
    mark_corrupt(path, e.what());
    return std::nullopt;
  }
}

std::optional<ValueDist> TableCache::load_dist(const PolyId& id, u64 p) {
  const fs::path path = entry_path(to_hex(id), p, CacheKind::Dist);
  auto bytes = read_verified(path);
  if (!bytes) return std::nullopt;
  try {
    std::istringstream in(*bytes);
    ValueDist d = read_value_dist(in);
    if (d.p != p) {
      mark_corrupt(path, "header does not match its key");
      return std::nullopt;
    }
    return d;
  } catch (const Error& e) {
    mark_corrupt(path, e.what());
    return std::nullopt;
  }
}

bool TableCache::store(const SumTable& t) {
  std::ostringstream os;
  write_table(os, t);
  return write_atomic(entry_path(to_hex(t.poly_id), t.p, CacheKind::Table), os.str());
}

bool TableCache::store(const PolyId& id, const ValueDist& d) {
  std::ostringstream os;
  write_value_dist(os, d);
  return write_atomic(entry_path(to_hex(id), d.p, CacheKind::Dist), os.str());
}

std::vector<CacheEntry> TableCache::list() const {
  std::vector<CacheEntry> out;
  std::error_code ec;
  for (const auto& sub : fs::directory_iterator(dir_, ec)) {
    const std::string hash = sub.path().filename().string();
    if (!sub.is_directory() || !is_hash_dir(hash)) continue;
    for (const auto& f : fs::directory_iterator(sub.path(), ec)) {
      const std::string ext = f.path().extension().string();
      CacheKind kind;
      if (ext == ".exps") kind = CacheKind::Table;
      else if (ext == ".expd") kind = CacheKind::Dist;
      else continue;
      auto p = parse_prime_stem(f.path().stem().string());
      if (!p) continue;
      CacheEntry e;
      e.poly_hash = hash;
      e.p = *p;
      e.kind = kind;
      e.path = f.path();
      e.bytes = f.file_size(ec);
      e.checksum = slurp(f.path().string() + ".sha256");
      while (!e.checksum.empty() && e.checksum.back() == '\n') e.checksum.pop_back();
      out.push_back(std::move(e));
    }
  }
  std::sort(out.begin(), out.end(), [](const CacheEntry& a, const CacheEntry& b) {
    return std::tie(a.poly_hash, a.p, a.kind) < std::tie(b.poly_hash, b.p, b.kind);
  });
  return out;
}

std::size_t TableCache::evict(std::string_view prefix) {
  std::size_t n = 0;
  for (const auto& e : list()) {
    if (e.poly_hash.compare(0, prefix.size(), prefix) != 0) continue;
    remove_quietly(e.path);
    remove_quietly(e.path.string() + ".sha256");
    ++n;
  }
  std::error_code ec;
  for (const auto& sub : fs::directory_iterator(dir_, ec))
    if (sub.is_directory() && is_hash_dir(sub.path().filename().string()) && fs::is_empty(sub.path(), ec))
      fs::remove(sub.path(), ec);
  return n;
}

TableCache::VerifyResult TableCache::verify() {
  VerifyResult r;
  for (const auto& e : list()) {
    const std::size_t before = corrupt_;
    PolyId id{};
    for (std::size_t i = 0; i < 32; ++i) id[i] = static_cast<std::uint8_t>(std::stoul(e.poly_hash.substr(2 * i, 2), nullptr, 16));
    if (e.kind == CacheKind::Table) load_table(id, e.p);
    else load_dist(id, e.p);
    if (corrupt_ != before) r.corrupt.push_back(e);
    else ++r.ok;
  }
  return r;
}

TableProvider TableCache::provider() {
  return [this](const PolyExact& f, u64 p) {
    const PolyId id = f.hash();
    if (auto t = load_table(id, p)) {
      ++hits_;
      return std::move(*t);
    }
    ++misses_;
    SumTable t = compute_table(f, p);
    store(t);
    return t;
  };
}

TableCache::Stats TableCache::stats() const noexcept {
  return Stats{hits_.load(), misses_.load(), corrupt_.load(), stored_.load()};
}

std::vector<std::string> TableCache::corrupt_log() const {
  std::lock_guard<std::mutex> lock(log_mutex_);
  return log_;
}

}  // namespace expsum
