#pragma once

#include "searchgames/core.hpp"
#include "searchgames/matrix_game.hpp"
#include "searchgames/rng.hpp"

#include <vector>

namespace searchgames {

// Box search with perfect detection (q = 1): opening a box always reveals a
// hider in it, so a pure searcher strategy is an opening order.

// Time to find a hider in box `hider` under opening order `order` (a
// permutation of 0..n-1): cumulative time up to and including the hider's box.
double search_cost(const std::vector<double>& times, const std::vector<int>& order, int hider);

// Game value of searching the boxes in `idx`: (sum_sq + sum^2) / (2 sum) where
// sum = total time, sum_sq = sum of squared times.
double value_perfect(const std::vector<double>& times, const std::vector<int>& idx);
double value_perfect(const std::vector<double>& times);  // all boxes

// Optimal hider over `idx`: probability of box j proportional to times[j].
DiscreteHiderDistribution hider_proportional(const std::vector<double>& times,
                                             const std::vector<int>& idx);

// Optimal searcher order over `idx`: first box with probability proportional
// to its time, remaining boxes in uniformly random order.
std::vector<int> sample_sZ(const std::vector<double>& times, const std::vector<int>& idx,
                           Rng& rng);

// Mixing weight alpha* at which searching the predicted set first becomes
// optimal for the whole game: 1 - (V(Y) - V(H)) / t(H^c). Lies in (0, 1).
double alpha_star(const BoxInstance& inst);

struct SStarExpectedTimes {
  double inPrediction = 0.0;   // expected find time for hiders in H
  double offPrediction = 0.0;  // expected find time for hiders in H^c
};

// Expected find times of the strategy "with probability alpha search H then
// H^c, else H^c then H", each subset searched by its optimal order:
//   in H:    V(H) + (1 - alpha) t(H^c)
//   in H^c:  V(H^c) + alpha t(H)
SStarExpectedTimes expected_times_sstar(const BoxInstance& inst, double alpha);

struct PerfectFrontierSegment {
  double cMin = 0.0;   // V(H)
  double cMax = 0.0;   // V(Y)
  double coefC = 0.0;  // t(H)
  double coefR = 0.0;  // t(H^c)
  double rhs = 0.0;    // t(Y) V(Y)
};

struct PerfectFrontier {
  PerfectFrontierSegment segment;
  ParetoCurve curve;
};

// The full tradeoff is the line t(H) c + t(H^c) r = t(Y) V(Y) for
// c in [V(H), V(Y)]; the curve samples nPoints evenly in c, each point
// carrying the alpha that attains it. Requires q = 1 and nPoints >= 2.
PerfectFrontier frontier_perfect(const BoxInstance& inst, int nPoints = 11);

// Slack of the frontier identity
//   t(Y) V(Y) - [t(H) V(H) + t(H^c) V(H^c) + t(H) t(H^c)]
// which is zero for every instance; exposed for verification.
double lowerbound_gap_perfect(const BoxInstance& inst);

// Explicit matrix form of the box game: rows are all n! opening orders
// (labels like "0-2-1"), columns the boxes, hColumns the prediction.
// Exhaustive, so only sensible for small n; throws if n > maxN.
PredictedMatrixGame permutation_matrix_game(const BoxInstance& inst, int maxN = 8);

}  // namespace searchgames
