#pragma once

#include "santalo/config.hpp"
#include "santalo/verify.hpp"

namespace santalo {

struct ExperimentResult {
  std::vector<VerificationReport> reports;  // sorted (body, measure, id)
  std::vector<std::string> summary;         // one line per check
  std::vector<std::string> warnings;
  bool all_passed = true;
};

// Runs every requested check over corpus x measures. Deterministic for a
// given config: per-item seeds derive from (config seed, item index) and the
// report order is sorted, so --jobs never changes the artifact.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// One CSV row per grid point: P_mu(rB) for kind "radius", log mu(e^t B) for
// kind "ball_growth".
std::string run_sweep_csv(const ExperimentConfig& cfg);

}  // namespace santalo
