#include "cornersampler/cache.hpp"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace cornersampler {

Fnv1a &Fnv1a::bytes(const void *data, std::size_t n) {
  const auto *p = static_cast<const unsigned char *>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h_ ^= p[i];
    h_ *= 1099511628211ull;
  }
  return *this;
}

std::uint64_t operator_key(const Medium &med, const TestDisk &disk, int N, int M) {
  Fnv1a h;
  h.add(std::string("ffop v1"));
  h.add(med.k).add(med.n0).add(med.R).add(med.lambda);
  h.add(disk.center.x()).add(disk.center.y()).add(disk.radius);
  h.add(static_cast<std::int64_t>(N)).add(static_cast<std::int64_t>(M));
  return h.value();
}

namespace {

void append_double(std::string &out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc())
    throw Error("failed to format double");
  out.append(buf, ptr);
}

} // namespace

void write_ffop(std::ostream &os, const FarFieldOperatorMatrix &F) {
  const int N = F.size();
  std::string out = "ffop v1 N=" + std::to_string(N) + "\n";
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if (j > 0)
        out += ',';
      append_double(out, F.kernel()(i, j).real());
      out += ' ';
      append_double(out, F.kernel()(i, j).imag());
    }
    out += '\n';
  }
  os << out;
}

FarFieldOperatorMatrix read_ffop(std::istream &is) {
  std::string header;
  if (!std::getline(is, header))
    throw Error("ffop: missing header");
  int N = 0;
  if (std::sscanf(header.c_str(), "ffop v1 N=%d", &N) != 1 || N <= 0)
    throw Error("ffop: bad header '" + header + "'");
  CMatrix K(N, N);
  std::string line;
  for (int i = 0; i < N; ++i) {
    if (!std::getline(is, line))
      throw Error("ffop: truncated at row " + std::to_string(i));
    const char *p = line.data();
    const char *end = p + line.size();
    for (int j = 0; j < N; ++j) {
      double re = 0.0, im = 0.0;
      auto r1 = std::from_chars(p, end, re);
      if (r1.ec != std::errc() || r1.ptr == end || *r1.ptr != ' ')
        throw Error("ffop: malformed entry at row " + std::to_string(i));
      auto r2 = std::from_chars(r1.ptr + 1, end, im);
      if (r2.ec != std::errc())
        throw Error("ffop: malformed entry at row " + std::to_string(i));
      p = r2.ptr;
      if (j + 1 < N) {
        if (p == end || *p != ',')
          throw Error("ffop: expected ',' in row " + std::to_string(i));
        ++p;
      }
      K(i, j) = cplx(re, im);
    }
    if (p != end)
      throw Error("ffop: trailing data in row " + std::to_string(i));
  }
  return FarFieldOperatorMatrix(std::move(K));
}

void write_file_atomic(const std::filesystem::path &path, const std::string &contents) {
  static std::atomic<unsigned long> counter{0};
  auto tmp = path;
  std::ostringstream suffix;
  suffix << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "." << counter++;
  tmp += suffix.str();
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os)
      throw Error("cannot open " + tmp.string() + " for writing");
    os << contents;
    if (!os)
      throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_ffop_file(const std::filesystem::path &path, const FarFieldOperatorMatrix &F) {
  std::ostringstream os;
  write_ffop(os, F);
  write_file_atomic(path, os.str());
}

FarFieldOperatorMatrix read_ffop_file(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw Error("cannot open " + path.string());
  return read_ffop(is);
}

OperatorCache::OperatorCache(std::filesystem::path directory) : dir_(std::move(directory)) {
  std::filesystem::create_directories(*dir_);
}

std::filesystem::path OperatorCache::path_for(std::uint64_t key) const {
  char name[40];
  std::snprintf(name, sizeof name, "ffop_%016llx.txt", static_cast<unsigned long long>(key));
  return dir_ ? *dir_ / name : std::filesystem::path(name);
}

std::optional<FarFieldOperatorMatrix> OperatorCache::lookup(const Medium &med,
                                                            const TestDisk &disk, int N, int M) {
  const auto key = operator_key(med, disk, N, M);
  {
    std::lock_guard lock(mutex_);
    if (auto it = memory_.find(key); it != memory_.end()) {
      ++hits_;
      return it->second;
    }
  }
  if (dir_) {
    const auto path = path_for(key);
    if (std::filesystem::exists(path)) {
      try {
        auto F = read_ffop_file(path);
        if (F.size() == N) {
          std::lock_guard lock(mutex_);
          memory_.emplace(key, F);
          ++hits_;
          return F;
        }
      } catch (const Error &) {
        // A corrupt entry is recomputed and overwritten.
      }
    }
  }
  std::lock_guard lock(mutex_);
  ++misses_;
  return std::nullopt;
}

void OperatorCache::store(const Medium &med, const TestDisk &disk, int N, int M,
                          const FarFieldOperatorMatrix &F) {
  const auto key = operator_key(med, disk, N, M);
  if (dir_)
    write_ffop_file(path_for(key), F);
  std::lock_guard lock(mutex_);
  memory_.emplace(key, F);
}

} // namespace cornersampler
