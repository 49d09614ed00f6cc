#include "cornersampler/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "cornersampler/cache.hpp"

namespace cornersampler {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc())
    throw Error("failed to format double");
  return std::string(buf, ptr);
}

namespace {

double parse_double(std::string_view s, const std::string &context) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(context + ": cannot parse number '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos)
      return out;
    start = pos + 1;
  }
}

} // namespace

void write_fffile(std::ostream &os, const FarFieldVector &u, double k) {
  std::string out = "# fffile v1 N=" + std::to_string(u.size()) + " k=" + format_double(k) + "\n";
  for (int i = 0; i < u.size(); ++i) {
    out += format_double(grid_angle(i, u.size()));
    out += ',';
    out += format_double(u.values(i).real());
    out += ',';
    out += format_double(u.values(i).imag());
    out += '\n';
  }
  os << out;
}

FarFieldFile read_fffile(std::istream &is) {
  std::string line;
  if (!std::getline(is, line))
    throw Error("fffile: empty input");
  int N = 0;
  char kbuf[64] = {};
  if (std::sscanf(line.c_str(), "# fffile v1 N=%d k=%63s", &N, kbuf) != 2 || N <= 0)
    throw Error("fffile: bad header '" + line + "'");
  FarFieldFile f;
  f.k = parse_double(kbuf, "fffile header");
  f.data.values.resize(N);
  int row = 0;
  while (std::getline(is, line)) {
    if (line.empty())
      continue;
    if (row == 0 && line == "theta,re,im")
      continue;
    if (row >= N)
      throw Error("fffile: more than N=" + std::to_string(N) + " rows");
    const auto cols = split(line, ',');
    if (cols.size() != 3)
      throw Error("fffile: row " + std::to_string(row) + " does not have 3 columns");
    const double theta = parse_double(cols[0], "fffile");
    if (std::abs(theta - grid_angle(row, N)) > 1e-9)
      throw Error("fffile: row " + std::to_string(row) + " is off the uniform grid");
    f.data.values(row) = {parse_double(cols[1], "fffile"), parse_double(cols[2], "fffile")};
    ++row;
  }
  if (row != N)
    throw Error("fffile: expected " + std::to_string(N) + " rows, got " + std::to_string(row));
  return f;
}

void write_fffile(const std::filesystem::path &path, const FarFieldVector &u, double k) {
  std::ostringstream os;
  write_fffile(os, u, k);
  write_file_atomic(path, os.str());
}

FarFieldFile read_fffile(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("fffile: cannot open " + path.string());
  return read_fffile(in);
}

FarFieldVector add_noise(const FarFieldVector &u, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0))
    throw DomainError("add_noise: delta must be non-negative");
  FarFieldVector out = u;
  if (delta == 0.0)
    return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double scale = delta * u.norm() / std::sqrt(2.0 * kPi);
  for (int i = 0; i < out.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    out.values(i) += scale * cplx(re, im);
  }
  return out;
}

std::string indicator_csv(const IndicatorMap &map) {
  std::string out = "cx,cy,rho,W,cutoff,status\n";
  for (const auto &r : map.records) {
    out += format_double(r.disk.center.x()) + ',' + format_double(r.disk.center.y()) + ',' +
           format_double(r.disk.radius) + ',' + format_double(r.W) + ',' +
           std::to_string(r.cutoff) + ',' + to_string(r.status) + '\n';
  }
  return out;
}

std::string spectrum_csv(const PicardData &p) {
  std::string out = "j,lambda_j,coeff_sq_j,ratio_j\n";
  for (std::size_t j = 0; j < p.terms.size(); ++j) {
    const auto &t = p.terms[j];
    out += std::to_string(j + 1) + ',' + format_double(t.lambda) + ',' + format_double(t.coeff_sq) +
           ',' + format_double(t.ratio) + '\n';
  }
  return out;
}

std::string mask_pgm(const SupportEstimate &est) {
  const int n = est.resolution;
  std::string out = "P2\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
  for (int row = n - 1; row >= 0; --row) {
    for (int col = 0; col < n; ++col) {
      if (col > 0)
        out += ' ';
      out += est.at(row, col) ? "255" : "0";
    }
    out += '\n';
  }
  return out;
}

std::string mask_csv(const SupportEstimate &est) {
  std::string out = "x,y,inside\n";
  for (int row = 0; row < est.resolution; ++row)
    for (int col = 0; col < est.resolution; ++col) {
      const Vec2 p = est.pixel_center(row, col);
      out += format_double(p.x()) + ',' + format_double(p.y()) + ',' + (est.at(row, col) ? "1" : "0") +
             '\n';
    }
  return out;
}

nlohmann::json disks_json(const std::vector<TestDisk> &disks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &d : disks)
    arr.push_back({{"center", {d.center.x(), d.center.y()}}, {"radius", d.radius}});
  return arr;
}

TestDisk parse_disk(const std::string &text) {
  const auto cols = split(text, ',');
  if (cols.size() != 3)
    throw ConfigError("disk must be given as cx,cy,rho");
  TestDisk d{{parse_double(cols[0], "disk"), parse_double(cols[1], "disk")},
             parse_double(cols[2], "disk")};
  if (!(d.radius > 0.0))
    throw ConfigError("disk radius must be positive");
  return d;
}

} // namespace cornersampler
