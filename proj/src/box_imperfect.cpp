#include "searchgames/box_imperfect.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace searchgames {
namespace {

BoxInstance require_imperfect(BoxInstance inst) {
  inst = validate_instance(std::move(inst));
  if (inst.q >= 1.0) {
    throw std::invalid_argument(
        "imperfect-detection operation requires q < 1; use the perfect-detection routines for q = 1");
  }
  return inst;
}

std::vector<int> all_boxes(std::size_t n) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

double pair_product_sum(const std::vector<double>& times, const std::vector<int>& idx) {
  double sum = 0.0, sumSq = 0.0;
  for (int i : idx) {
    sum += times[i];
    sumSq += times[i] * times[i];
  }
  return 0.5 * (sum * sum - sumSq);
}

}  // namespace

double value_imperfect(const std::vector<double>& times, const std::vector<int>& idx, double q) {
  if (!(q > 0.0) || q > 1.0) throw std::invalid_argument("detection probability q must lie in (0, 1]");
  if (q == 1.0) return value_perfect(times, idx);
  const double t = subset_time(times, idx);
  if (!(t > 0.0)) throw std::invalid_argument("subset must have positive total time");
  const double direct = t / q - pair_product_sum(times, idx) / t;
  const double viaPerfect = value_perfect(times, idx) + (1.0 - q) * t / q;
  if (std::abs(direct - viaPerfect) > 1e-9) {
    throw std::runtime_error("imperfect value cross-check failed");
  }
  return direct;
}

double value_imperfect(const std::vector<double>& times, double q) {
  return value_imperfect(times, all_boxes(times.size()), q);
}

double beta_star(const BoxInstance& instIn) {
  const BoxInstance inst = require_imperfect(instIn);
  const SubsetTotals st = subset_totals(inst);
  const double vY = value_imperfect(inst.times, inst.q);
  const double vH = value_imperfect(inst.times, inst.prediction, inst.q);
  return 1.0 / inst.q - (vY - vH) / st.tHc;
}

SkExpectedTimes expected_times_sk(const BoxInstance& instIn, int k, double beta) {
  const BoxInstance inst = require_imperfect(instIn);
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  if (!(beta >= 0.0) || beta > 1.0) throw std::invalid_argument("beta must lie in [0, 1]");
  const SubsetTotals st = subset_totals(inst);
  const double q = inst.q;
  const double decay = std::pow(1.0 - q, k);
  SkExpectedTimes et;
  et.inPrediction =
      value_imperfect(inst.times, inst.prediction, q) + (1.0 / q - beta) * decay * st.tHc;
  et.offPrediction =
      value_imperfect(inst.times, complement(inst), q) + (beta + k + (1.0 - q) / q) * st.tH;
  return et;
}

SkSequence::SkSequence(const BoxInstance& instIn, int k, double beta, std::uint64_t seed)
    : rng_(seed) {
  const BoxInstance inst = require_imperfect(instIn);
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  if (!(beta >= 0.0) || beta > 1.0) throw std::invalid_argument("beta must lie in [0, 1]");
  times_ = inst.times;
  h_ = inst.prediction;
  hc_ = complement(inst);
  passesLeft_ = k + (rng_.uniform() < beta ? 1 : 0);
}

void SkSequence::refill() {
  if (passesLeft_ > 0) {
    --passesLeft_;
    block_ = sample_sZ(times_, h_, rng_);
  } else if (nextIsHc_) {
    nextIsHc_ = false;
    block_ = sample_sZ(times_, hc_, rng_);
  } else {
    nextIsHc_ = true;
    block_ = sample_sZ(times_, h_, rng_);
  }
  pos_ = 0;
}

int SkSequence::next() {
  if (pos_ >= block_.size()) refill();
  return block_[pos_++];
}

double frontier_breakpoint(const BoxInstance& instIn, int k) {
  const BoxInstance inst = require_imperfect(instIn);
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  const SubsetTotals st = subset_totals(inst);
  return value_imperfect(inst.times, inst.prediction, inst.q) +
         std::pow(1.0 - inst.q, k) / inst.q * st.tHc;
}

ImperfectFrontier frontier_imperfect(const BoxInstance& instIn, int kMax, int pointsPerSegment) {
  const BoxInstance inst = require_imperfect(instIn);
  if (kMax < 0) throw std::invalid_argument("kMax must be nonnegative");
  if (pointsPerSegment < 2) throw std::invalid_argument("each segment needs at least 2 points");
  const SubsetTotals st = subset_totals(inst);
  const double q = inst.q;
  const double vY = value_imperfect(inst.times, q);
  const double vH = value_imperfect(inst.times, inst.prediction, q);

  ImperfectFrontier f;
  f.uncoveredLo = vH;
  f.uncoveredHi = frontier_breakpoint(inst, kMax + 1);

  for (int k = 0; k <= kMax; ++k) {
    const double decay = std::pow(1.0 - q, k);
    ImperfectFrontierSegment seg;
    seg.k = k;
    seg.cLo = frontier_breakpoint(inst, k + 1);
    seg.cHi = k == 0 ? vY : frontier_breakpoint(inst, k);
    seg.coefC = st.tH / decay;
    seg.coefR = st.tHc;
    seg.rhs = st.tY * vY + (1.0 - decay) / decay * st.tH * vH + k * st.tH * st.tHc;
    f.segments.push_back(seg);
  }

  // Points come from the (k, beta) closed forms rather than the segment line:
  // same values analytically, but immune to the 1/(1-q)^k blowup of the line
  // coefficients, and exactly continuous at breakpoints (beta = 1 on segment k
  // is beta = 0 on segment k+1).
  const double betaTop = beta_star(inst);
  std::vector<ParetoPoint> pts;
  for (int k = kMax; k >= 0; --k) {
    const double betaLo = k == 0 ? betaTop : 0.0;
    const int last = pointsPerSegment - 1;
    for (int i = (k == kMax ? 0 : 1); i <= last; ++i) {
      const double beta = 1.0 + (betaLo - 1.0) * i / last;
      const SkExpectedTimes et = expected_times_sk(inst, k, beta);
      pts.push_back(ParetoPoint{et.inPrediction, et.offPrediction, KBetaParams{k, beta}});
    }
  }
  f.curve = make_pareto_curve(std::move(pts));
  return f;
}

HkDistribution hider_hk(const BoxInstance& instIn, int k) {
  const BoxInstance inst = require_imperfect(instIn);
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  const SubsetTotals st = subset_totals(inst);
  const double decay = std::pow(1.0 - inst.q, k);
  HkDistribution out;
  out.lambda = 1.0 / (st.tH / decay + st.tHc);
  out.dist.probs.assign(inst.times.size(), 0.0);
  for (int j : inst.prediction) out.dist.probs[j] = out.lambda * inst.times[j] / decay;
  for (int j : complement(inst)) out.dist.probs[j] = out.lambda * inst.times[j];
  validate_distribution(out.dist);
  return out;
}

double best_response_value_hk(const BoxInstance& instIn, int k) {
  const BoxInstance inst = require_imperfect(instIn);
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  const SubsetTotals st = subset_totals(inst);
  const double q = inst.q;
  const double decay = std::pow(1.0 - q, k);
  const double lambda = 1.0 / (st.tH / decay + st.tHc);
  const double vH = value_imperfect(inst.times, inst.prediction, q);
  const double vHc = value_imperfect(inst.times, complement(inst), q);
  return lambda *
         (st.tH * vH / decay + st.tHc * vHc + ((2.0 - q) / q + k) * st.tH * st.tHc);
}

GreedyResponse best_response_greedy(const std::vector<double>& times, double q,
                                    const DiscreteHiderDistribution& h, long horizon,
                                    double tailTol) {
  if (!(q > 0.0) || q >= 1.0) throw std::invalid_argument("detection probability q must lie in (0, 1)");
  if (h.probs.size() != times.size()) {
    throw std::invalid_argument("hider distribution size does not match the boxes");
  }
  validate_distribution(h);
  if (horizon <= 0 && !(tailTol > 0.0)) {
    throw std::invalid_argument("unlimited horizon requires a positive tail tolerance");
  }
  for (double t : times) {
    if (!std::isfinite(t) || t <= 0.0) throw std::invalid_argument("nonpositive time");
  }
  const int n = static_cast<int>(times.size());
  const double tTotal = std::accumulate(times.begin(), times.end(), 0.0);

  GreedyResponse out;
  std::vector<double> mass = h.probs;
  double elapsed = 0.0;
  double residual = 1.0;
  for (long step = 0; horizon <= 0 || step < horizon; ++step) {
    int best = -1;
    double bestRatio = -1.0;
    for (int j = 0; j < n; ++j) {
      const double ratio = mass[j] / times[j];
      if (ratio > bestRatio) {
        bestRatio = ratio;
        best = j;
      }
    }
    elapsed += times[best];
    out.expectedTime += mass[best] * q * elapsed;
    residual -= mass[best] * q;
    mass[best] *= 1.0 - q;
    out.sequence.push_back(best);
    // Greedy is optimal from any posterior, and one full round-robin pass per
    // remaining detection bounds the continuation by elapsed + t(Y)/q.
    out.tailBound = std::max(residual, 0.0) * (elapsed + tTotal / q);
    if (horizon <= 0 && out.tailBound < tailTol) break;
  }
  return out;
}

double tradeoff_lower_gap(const BoxInstance& instIn) {
  const BoxInstance inst = require_imperfect(instIn);
  const SubsetTotals st = subset_totals(inst);
  const double q = inst.q;
  const double vY = value_imperfect(inst.times, q);
  const double vH = value_imperfect(inst.times, inst.prediction, q);
  const double vHc = value_imperfect(inst.times, complement(inst), q);
  return st.tY * vY - (st.tH * vH + st.tHc * vHc + (2.0 - q) / q * st.tH * st.tHc);
}

}  // namespace searchgames
