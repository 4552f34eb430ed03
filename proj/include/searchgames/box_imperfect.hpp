#pragma once

#include "searchgames/box_perfect.hpp"
#include "searchgames/core.hpp"
#include "searchgames/rng.hpp"

#include <functional>
#include <vector>

namespace searchgames {

// Box search with imperfect detection: a look into box i costs times[i] and
// finds a hider there with probability q < 1, independently per look. Searcher
// strategies are infinite sequences of looks.

// Game value over the boxes in idx:
//   t/q - sum_{i<j} t_i t_j / t   (equivalently V_1(idx) + (1-q) t / q).
// Both forms are evaluated and cross-checked within 1e-9; q = 1 is routed to
// the perfect-detection value.
double value_imperfect(const std::vector<double>& times, const std::vector<int>& idx, double q);
double value_imperfect(const std::vector<double>& times, double q);  // all boxes

// Mixing weight at which the k = 0 block strategy attains the game value:
//   1/q - (V_q(Y) - V_q(H)) / t(H^c). Lies in (0, 1). Requires q < 1.
double beta_star(const BoxInstance& inst);

struct SkExpectedTimes {
  double inPrediction = 0.0;
  double offPrediction = 0.0;
};

// Expected find times of s^k(beta): with probability beta play the (k+1)-block
// strategy, else the k-block strategy, where the j-block strategy opens j
// optimal passes of H and then alternates H^c, H, H^c, ... Each pass is an
// independent draw of the optimal subset order.
//   in H:   V_q(H) + (1/q - beta) (1-q)^k t(H^c)
//   in H^c: V_q(H^c) + (beta + k + (1-q)/q) t(H)
// Requires q < 1, k >= 0, beta in [0, 1].
SkExpectedTimes expected_times_sk(const BoxInstance& inst, int k, double beta);

// Infinite look sequence sampler for s^k(beta); next() returns box indices.
// A fixed seed reproduces the same sequence.
class SkSequence {
 public:
  SkSequence(const BoxInstance& inst, int k, double beta, std::uint64_t seed);
  int next();

 private:
  void refill();

  std::vector<double> times_;
  std::vector<int> h_, hc_;
  Rng rng_;
  int passesLeft_;    // full H passes still owed before alternation
  bool nextIsHc_ = true;
  std::vector<int> block_;
  std::size_t pos_ = 0;
};

// Consistency breakpoints v_k = V_q(H) + (1-q)^k t(H^c) / q; v_0 > V_q(Y) > v_1.
double frontier_breakpoint(const BoxInstance& inst, int k);

struct ImperfectFrontierSegment {
  int k = 0;
  double cLo = 0.0, cHi = 0.0;  // consistency range [v_{k+1}, v_k] (segment 0 ends at V_q(Y))
  double coefC = 0.0;           // t(H) / (1-q)^k
  double coefR = 0.0;           // t(H^c)
  double rhs = 0.0;
};

struct ImperfectFrontier {
  std::vector<ImperfectFrontierSegment> segments;  // k = 0, 1, ..., kMax
  ParetoCurve curve;                               // ascending consistency
  double uncoveredLo = 0.0;  // (V_q(H), v_{kMax+1}) is not covered by the curve
  double uncoveredHi = 0.0;
};

// Piecewise-linear tradeoff: segment k satisfies
//   t(H)/(1-q)^k c + t(H^c) r = t(Y) V_q(Y)
//       + ((1 - (1-q)^k) / (1-q)^k) t(H) V_q(H) + k t(H) t(H^c).
// Curve points carry (k, beta); segments share their breakpoint endpoints.
// Requires q < 1, kMax >= 0, pointsPerSegment >= 2.
ImperfectFrontier frontier_imperfect(const BoxInstance& inst, int kMax = 10,
                                     int pointsPerSegment = 9);

struct HkDistribution {
  DiscreteHiderDistribution dist;
  double lambda;  // normalizer (t(H)/(1-q)^k + t(H^c))^{-1}
};

// Hider distribution h^k: mass proportional to t_j/(1-q)^k on the prediction
// and to t_j outside it. Requires q < 1, k >= 0.
HkDistribution hider_hk(const BoxInstance& inst, int k);

// Expected find time of the best response against h^k:
//   lambda_k [ t(H) V_q(H) / (1-q)^k + t(H^c) V_q(H^c)
//              + ((2-q)/q + k) t(H) t(H^c) ].
double best_response_value_hk(const BoxInstance& inst, int k);

struct GreedyResponse {
  std::vector<int> sequence;  // boxes opened, in order
  double expectedTime = 0.0;  // accumulated over performed looks
  double tailBound = 0.0;     // certified bound on the truncated remainder
};

// Expected-time-minimizing response to a known hider distribution: repeatedly
// open the box maximizing (current mass) / time, discounting mass by (1-q)
// after each look. Runs until the certified tail bound
//   residualMass * (elapsed + t(Y)/q)
// drops below tailTol, or horizon looks if horizon > 0. The true best-response
// value lies in [expectedTime, expectedTime + tailBound].
GreedyResponse best_response_greedy(const std::vector<double>& times, double q,
                                    const DiscreteHiderDistribution& h, long horizon = 0,
                                    double tailTol = 1e-9);

// Slack of the value identity
//   t(Y) V_q(Y) - [t(H) V_q(H) + t(H^c) V_q(H^c) + ((2-q)/q) t(H) t(H^c)],
// zero for every instance; exposed for verification.
double tradeoff_lower_gap(const BoxInstance& inst);

}  // namespace searchgames
