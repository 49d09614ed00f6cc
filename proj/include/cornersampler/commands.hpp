#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "cornersampler/config.hpp"
#include "cornersampler/io.hpp"

namespace cornersampler {

/// Far-field data per the config's data-side discretisation, with noise
/// applied when noise.delta > 0.
FarFieldVector simulate_data(const RunConfig &cfg);

struct ReconstructionResult {
  IndicatorMap map;
  std::vector<TestDisk> family;       // as enumerated, before admissibility
  TestDisk reference;
  double W_ref = 0.0;
  std::vector<TestDisk> contained;    // family disks classified contained
  std::optional<SupportEstimate> estimate;
  nlohmann::json metrics;
};

/// Sweep, classification and support estimate. Throws Error("empty admissible
/// family") when no family disk passes the admissibility check.
ReconstructionResult reconstruct(const RunConfig &cfg, const FarFieldVector &data, int threads,
                                 OperatorCache *cache);

struct CommandOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> data;
  std::optional<std::string> disk; // "cx,cy,rho"
  int threads = 1;
  std::optional<std::uint64_t> seed;
  double inject_wronskian = 0.0; // validate self-test hook
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

int cmd_validate(const CommandOptions &opts);
int cmd_simulate(const CommandOptions &opts);
int cmd_operator(const CommandOptions &opts);
int cmd_indicate(const CommandOptions &opts);
int cmd_reconstruct(const CommandOptions &opts);
int cmd_spectrum(const CommandOptions &opts);

} // namespace cornersampler
