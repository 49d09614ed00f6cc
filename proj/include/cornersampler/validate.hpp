#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace cornersampler {

struct CheckResult {
  std::string name;
  double value = 0.0;     // measured defect
  double tolerance = 0.0; // pass iff value <= tolerance
  bool pass = false;
  std::string error;      // set when the check threw
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  bool pass() const;
};

struct ValidateOptions {
  /// Harness self-test: adds this to every Wronskian residual.
  double wronskian_perturbation = 0.0;
};

/// Module invariant suites: specialfun, geometry, medium, source_radiation,
/// obstacle, factorization, reconstruct, cli_io.
std::vector<SuiteResult> run_validation(const ValidateOptions &opts = {});

nlohmann::json validation_summary(const std::vector<SuiteResult> &suites);

} // namespace cornersampler
