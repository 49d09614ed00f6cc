#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "cornersampler/farfield.hpp"
#include "cornersampler/medium.hpp"
#include "cornersampler/obstacle.hpp"

namespace cornersampler {

/// 64-bit FNV-1a over raw bytes; stable across platforms with the same
/// double representation.
class Fnv1a {
public:
  Fnv1a &bytes(const void *data, std::size_t n);
  Fnv1a &add(double v) { return bytes(&v, sizeof v); }
  Fnv1a &add(std::int64_t v) { return bytes(&v, sizeof v); }
  Fnv1a &add(const std::string &s) { return bytes(s.data(), s.size()); }
  std::uint64_t value() const { return h_; }

private:
  std::uint64_t h_ = 14695981039346656037ull;
};

std::uint64_t operator_key(const Medium &med, const TestDisk &disk, int N, int M);

// "ffop v1 N=<N>" followed by N rows of N comma-separated "re im" pairs.
void write_ffop(std::ostream &os, const FarFieldOperatorMatrix &F);
FarFieldOperatorMatrix read_ffop(std::istream &is);
void write_ffop_file(const std::filesystem::path &path, const FarFieldOperatorMatrix &F);
FarFieldOperatorMatrix read_ffop_file(const std::filesystem::path &path);

/// Writes `contents` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path &path, const std::string &contents);

/// Content-addressed store of obstacle far-field operators. Always memoises
/// in memory; also persists to `directory` when one is set. Thread-safe.
class OperatorCache {
public:
  OperatorCache() = default;
  explicit OperatorCache(std::filesystem::path directory);

  std::optional<FarFieldOperatorMatrix> lookup(const Medium &med, const TestDisk &disk, int N,
                                               int M);
  void store(const Medium &med, const TestDisk &disk, int N, int M,
             const FarFieldOperatorMatrix &F);

  const std::optional<std::filesystem::path> &directory() const { return dir_; }
  std::filesystem::path path_for(std::uint64_t key) const;

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

private:
  std::optional<std::filesystem::path> dir_;
  std::map<std::uint64_t, FarFieldOperatorMatrix> memory_;
  std::mutex mutex_;
  std::size_t hits_ = 0, misses_ = 0;
};

} // namespace cornersampler
