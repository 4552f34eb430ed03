#include "searchgames/montecarlo.hpp"

#include "searchgames/box_imperfect.hpp"
#include "searchgames/box_perfect.hpp"
#include "searchgames/rng.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace searchgames {
namespace {

long default_step_cap(int n, double q) {
  return static_cast<long>(std::ceil(64.0 * n / q));
}

[[noreturn]] void starvation(int box) {
  throw std::runtime_error("starvation: box " + std::to_string(box) +
                           " was not detected within the step cap; the sampler starves it");
}

}  // namespace

SimEstimate RunningStat::estimate() const {
  SimEstimate e;
  e.trials = n_;
  e.mean = mean_;
  e.standardError = n_ > 1 ? std::sqrt(m2_ / (n_ - 1) / n_) : 0.0;
  return e;
}

BoxSamplerFactory make_sstar_factory(const BoxInstance& instIn, double alpha) {
  const BoxInstance inst = validate_instance(instIn);
  if (!(alpha >= 0.0) || alpha > 1.0) throw std::invalid_argument("alpha must lie in [0, 1]");
  const auto h = inst.prediction;
  const auto hc = complement(inst);
  const auto times = inst.times;
  return [=](std::uint64_t seed) -> BoxSampler {
    auto rng = std::make_shared<Rng>(seed);
    auto hFirst = std::make_shared<bool>(rng->uniform() < alpha);
    auto block = std::make_shared<std::vector<int>>();
    auto pos = std::make_shared<std::size_t>(0);
    return [=]() -> int {
      if (*pos >= block->size()) {
        *block = sample_sZ(times, *hFirst ? h : hc, *rng);
        *hFirst = !*hFirst;
        *pos = 0;
      }
      return (*block)[(*pos)++];
    };
  };
}

BoxSamplerFactory make_sk_factory(const BoxInstance& instIn, int k, double beta) {
  const BoxInstance inst = validate_instance(instIn);
  // Constructor arguments are validated by SkSequence itself.
  return [=](std::uint64_t seed) -> BoxSampler {
    auto seq = std::make_shared<SkSequence>(inst, k, beta, seed);
    return [seq]() { return seq->next(); };
  };
}

SimEstimate simulate_box(const BoxSamplerFactory& factory, int hiderBox,
                         const std::vector<double>& times, double q, long trials,
                         std::uint64_t seed, long stepCap) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  if (!(q > 0.0) || q > 1.0) throw std::invalid_argument("detection probability q must lie in (0, 1]");
  if (hiderBox < 0 || hiderBox >= static_cast<int>(times.size())) {
    throw std::invalid_argument("unknown hider box");
  }
  const long cap = stepCap > 0 ? stepCap : default_step_cap(static_cast<int>(times.size()), q);

  RunningStat stat;
  for (long trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(trial));
    BoxSampler next = factory(rng.raw());
    double elapsed = 0.0;
    bool found = false;
    for (long step = 0; step < cap; ++step) {
      const int b = next();
      elapsed += times.at(b);
      if (b == hiderBox && (q == 1.0 || rng.uniform() < q)) {
        stat.add(elapsed);
        found = true;
        break;
      }
    }
    if (!found) starvation(hiderBox);
  }
  return stat.estimate();
}

BoxCREstimate estimate_CR_box(const BoxSamplerFactory& factory, const BoxInstance& instIn,
                              long trials, std::uint64_t seed, long stepCap) {
  const BoxInstance inst = validate_instance(instIn);
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  const int n = inst.n();
  const long cap = stepCap > 0 ? stepCap : default_step_cap(n, inst.q);

  std::vector<RunningStat> stats(n);
  std::vector<long> visits(n);
  std::vector<double> findTime(n);
  for (long trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(trial));
    // One geometric(q) look count shared by every conditioned hider position:
    // the common-random-numbers coupling.
    long looksNeeded = 1;
    while (rng.uniform() >= inst.q) ++looksNeeded;
    BoxSampler next = factory(rng.raw());

    std::fill(visits.begin(), visits.end(), 0L);
    int remaining = n;
    double elapsed = 0.0;
    for (long step = 0; step < cap && remaining > 0; ++step) {
      const int b = next();
      elapsed += inst.times[b];
      if (++visits[b] == looksNeeded) {
        findTime[b] = elapsed;
        --remaining;
      }
    }
    if (remaining > 0) {
      for (int b = 0; b < n; ++b)
        if (visits[b] < looksNeeded) starvation(b);
    }
    for (int b = 0; b < n; ++b) stats[b].add(findTime[b]);
  }

  BoxCREstimate out;
  out.perBox.reserve(n);
  for (int b = 0; b < n; ++b) out.perBox.push_back(stats[b].estimate());
  for (int b : inst.prediction) {
    if (out.argmaxPredicted < 0 || out.perBox[b].mean > out.consistencyHat.mean) {
      out.consistencyHat = out.perBox[b];
      out.argmaxPredicted = b;
    }
  }
  for (int b = 0; b < n; ++b) {
    if (out.argmaxAll < 0 || out.perBox[b].mean > out.robustnessHat.mean) {
      out.robustnessHat = out.perBox[b];
      out.argmaxAll = b;
    }
  }
  return out;
}

}  // namespace searchgames
