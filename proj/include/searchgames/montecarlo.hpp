#pragma once

#include "searchgames/core.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace searchgames {

struct SimEstimate {
  double mean = 0.0;
  double standardError = 0.0;  // sample standard deviation / sqrt(trials)
  long trials = 0;
};

// Accumulates a running mean/variance (Welford).
class RunningStat {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / n_;
    m2_ += d * (x - mean_);
  }
  SimEstimate estimate() const;

 private:
  long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// A sampler emits the next box to open; a factory builds one per trial from a
// trial-specific seed, so trials are independent and reproducible.
using BoxSampler = std::function<int()>;
using BoxSamplerFactory = std::function<BoxSampler(std::uint64_t)>;

// "Search the predicted set first with probability alpha": alternating
// optimal-order passes over H and H^c, starting side drawn once. Works for any
// q (with q = 1 only the first two blocks are ever consumed).
BoxSamplerFactory make_sstar_factory(const BoxInstance& inst, double alpha);

// The s^k(beta) family (requires q < 1).
BoxSamplerFactory make_sk_factory(const BoxInstance& inst, int k, double beta);

// Walks per-trial sequences, flipping a q-coin at every visit to hiderBox;
// returns the mean/stderr of the detection time. Throws a starvation error if
// a trial exceeds stepCap openings (default 64 * n / q).
SimEstimate simulate_box(const BoxSamplerFactory& factory, int hiderBox,
                         const std::vector<double>& times, double q, long trials,
                         std::uint64_t seed, long stepCap = 0);

struct BoxCREstimate {
  std::vector<SimEstimate> perBox;
  SimEstimate consistencyHat;  // estimate of the worst predicted box
  SimEstimate robustnessHat;   // estimate of the worst box overall
  int argmaxPredicted = -1;
  int argmaxAll = -1;
};

// Estimates every box's expected detection time with common random numbers:
// per trial one sequence is walked once and one geometric(q) look-count is
// shared across boxes, so per-box estimates are positively correlated.
BoxCREstimate estimate_CR_box(const BoxSamplerFactory& factory, const BoxInstance& inst,
                              long trials, std::uint64_t seed, long stepCap = 0);

}  // namespace searchgames
