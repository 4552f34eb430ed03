#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "searchgames/core.hpp"
#include "searchgames/rng.hpp"

namespace searchgames {

// One executed self-check. residual is the measured deviation, tolerance the
// bound it must stay under; note carries context for failures.
struct CheckResult {
  std::string name;
  std::string scope;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct VerifyOptions {
  // Empty means every scope. Valid scopes: core, matrix-game, box-perfect,
  // box-imperfect, line, montecarlo.
  std::vector<std::string> scopes;
  std::uint64_t seed = 20240817;
};

std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

// Random instance with n in [nMin, nMax], times in [0.5, 3], a proper
// nonempty prediction, and the given detection probability.
BoxInstance random_box_instance(Rng& rng, int nMin, int nMax, double q);

}  // namespace searchgames
