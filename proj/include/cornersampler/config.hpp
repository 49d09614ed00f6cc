#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "cornersampler/reconstruct.hpp"
#include "cornersampler/source.hpp"

namespace cornersampler {

inline constexpr int kConfigSchemaVersion = 1;

struct DiscretizationConfig {
  int N = 64;          // inversion grid
  int M = 30;          // inversion truncation
  int quad_order = kDataQuadOrder;
  std::optional<int> data_N; // defaults to 2 N
  std::optional<int> data_M; // defaults to M + 10

  int effective_data_N() const { return data_N.value_or(2 * N); }
  int effective_data_M() const { return data_M.value_or(M + 10); }
};

struct SamplingConfig {
  TestDiskFamily family = FixedRadiusGrid{};
  double tau = 10.0;
  std::optional<double> eps_rel; // unset: 1e-12, or (2 delta)^2 when noisy
  std::optional<TestDisk> reference; // unset: centred disk of radius 0.95 R
  int mask_resolution = 128;
};

struct NoiseConfig {
  double delta = 0.0;
  std::uint64_t seed = 1;
};

struct PathsConfig {
  std::optional<std::string> cache_dir;
  std::string output_dir = "out";
};

struct RunConfig {
  Medium medium{2.0, 4.0, 1.0, 0.5};
  SourceSpec source{Polygon(), ConstantAmplitude{}};
  std::optional<int> corner_of_interest; // vertex index of a polygon region
  DiscretizationConfig discretization;
  SamplingConfig sampling;
  NoiseConfig noise;
  PathsConfig paths;

  double eps_rel() const;
  TestDisk reference_disk() const;
  /// The polygon support when the source region is one.
  std::optional<Polygon> ground_truth() const;
};

/// Parses and validates every block and all cross-field preconditions.
/// Throws ConfigError with the offending key.
RunConfig config_from_json(const nlohmann::json &j);
nlohmann::json config_to_json(const RunConfig &cfg);
RunConfig load_config(const std::filesystem::path &path);

/// Cross-field checks, also run by config_from_json.
void validate_config(const RunConfig &cfg);

/// The triangle benchmark: D = (0.1,0.1),(0.5,0.15),(0.2,0.5) with f = 1 in
/// the (2, 4, 1, 0.5) medium, default sweep and discretizations.
RunConfig benchmark_config();

/// Cache directory: CORNER_SAMPLER_CACHE if set and non-empty, else the
/// config path, else none.
std::optional<std::filesystem::path> resolve_cache_dir(const RunConfig &cfg);

} // namespace cornersampler
