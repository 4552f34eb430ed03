#include "searchgames/box_perfect.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace searchgames {
namespace {

void require_subset(const std::vector<double>& times, const std::vector<int>& idx) {
  if (idx.empty()) throw std::invalid_argument("subset must be nonempty");
  for (int i : idx) {
    if (i < 0 || i >= static_cast<int>(times.size()))
      throw std::invalid_argument("subset index out of range");
  }
}

BoxInstance require_perfect(BoxInstance inst) {
  inst = validate_instance(std::move(inst));
  if (inst.q != 1.0) {
    throw std::invalid_argument("perfect-detection operation requires q = 1");
  }
  return inst;
}

}  // namespace

double search_cost(const std::vector<double>& times, const std::vector<int>& order, int hider) {
  if (order.size() != times.size()) throw std::invalid_argument("order must cover every box");
  std::vector<bool> seen(times.size(), false);
  double t = 0.0;
  for (int b : order) {
    if (b < 0 || b >= static_cast<int>(times.size()) || seen[b])
      throw std::invalid_argument("order is not a permutation of the boxes");
    seen[b] = true;
    t += times[b];
    if (b == hider) return t;
  }
  throw std::invalid_argument("hider box missing from the order");
}

double value_perfect(const std::vector<double>& times, const std::vector<int>& idx) {
  require_subset(times, idx);
  double sum = 0.0, sumSq = 0.0;
  for (int i : idx) {
    sum += times[i];
    sumSq += times[i] * times[i];
  }
  return (sumSq + sum * sum) / (2.0 * sum);
}

double value_perfect(const std::vector<double>& times) {
  std::vector<int> all(times.size());
  std::iota(all.begin(), all.end(), 0);
  return value_perfect(times, all);
}

DiscreteHiderDistribution hider_proportional(const std::vector<double>& times,
                                             const std::vector<int>& idx) {
  require_subset(times, idx);
  DiscreteHiderDistribution h;
  h.probs.assign(times.size(), 0.0);
  const double total = subset_time(times, idx);
  for (int i : idx) h.probs[i] = times[i] / total;
  validate_distribution(h);
  return h;
}

std::vector<int> sample_sZ(const std::vector<double>& times, const std::vector<int>& idx,
                           Rng& rng) {
  require_subset(times, idx);
  std::vector<double> w;
  w.reserve(idx.size());
  for (int i : idx) w.push_back(times[i]);
  const int firstPos = rng.weighted(w);

  std::vector<int> order = idx;
  std::swap(order[0], order[firstPos]);
  if (order.size() > 2) {
    std::vector<int> rest(order.begin() + 1, order.end());
    rng.shuffle(rest);
    std::copy(rest.begin(), rest.end(), order.begin() + 1);
  }
  return order;
}

double alpha_star(const BoxInstance& instIn) {
  const BoxInstance inst = require_perfect(instIn);
  const SubsetTotals st = subset_totals(inst);
  const double vY = value_perfect(inst.times);
  const double vH = value_perfect(inst.times, inst.prediction);
  return 1.0 - (vY - vH) / st.tHc;
}

SStarExpectedTimes expected_times_sstar(const BoxInstance& instIn, double alpha) {
  const BoxInstance inst = require_perfect(instIn);
  if (!(alpha >= 0.0) || alpha > 1.0) throw std::invalid_argument("alpha must lie in [0, 1]");
  const SubsetTotals st = subset_totals(inst);
  SStarExpectedTimes et;
  et.inPrediction = value_perfect(inst.times, inst.prediction) + (1.0 - alpha) * st.tHc;
  et.offPrediction = value_perfect(inst.times, complement(inst)) + alpha * st.tH;
  return et;
}

PerfectFrontier frontier_perfect(const BoxInstance& instIn, int nPoints) {
  const BoxInstance inst = require_perfect(instIn);
  if (nPoints < 2) throw std::invalid_argument("frontier needs at least 2 points");
  const SubsetTotals st = subset_totals(inst);
  const double vY = value_perfect(inst.times);
  const double vH = value_perfect(inst.times, inst.prediction);

  PerfectFrontier f;
  f.segment = {vH, vY, st.tH, st.tHc, st.tY * vY};

  std::vector<ParetoPoint> pts;
  for (int i = 0; i < nPoints; ++i) {
    const double c = vH + (vY - vH) * i / (nPoints - 1);
    const double r = (f.segment.rhs - st.tH * c) / st.tHc;
    const double alpha = 1.0 - (c - vH) / st.tHc;
    pts.push_back(ParetoPoint{c, r, AlphaParams{alpha}});
  }
  f.curve = make_pareto_curve(std::move(pts));
  return f;
}

double lowerbound_gap_perfect(const BoxInstance& instIn) {
  const BoxInstance inst = require_perfect(instIn);
  const SubsetTotals st = subset_totals(inst);
  const double vY = value_perfect(inst.times);
  const double vH = value_perfect(inst.times, inst.prediction);
  const double vHc = value_perfect(inst.times, complement(inst));
  return st.tY * vY - (st.tH * vH + st.tHc * vHc + st.tH * st.tHc);
}

PredictedMatrixGame permutation_matrix_game(const BoxInstance& instIn, int maxN) {
  const BoxInstance inst = require_perfect(instIn);
  const int n = inst.n();
  if (n > maxN) throw std::invalid_argument("exhaustive oracle limited to n <= " + std::to_string(maxN));

  PredictedMatrixGame pg;
  for (int c = 0; c < n; ++c) pg.game.colLabels.push_back(std::to_string(c));
  pg.hColumns = inst.prediction;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  do {
    std::string label;
    std::vector<double> row(n);
    double t = 0.0;
    for (int b : order) {
      t += inst.times[b];
      row[b] = t;
      if (!label.empty()) label += '-';
      label += std::to_string(b);
    }
    pg.game.payoff.push_back(std::move(row));
    pg.game.rowLabels.push_back(std::move(label));
  } while (std::next_permutation(order.begin(), order.end()));
  return pg;
}

}  // namespace searchgames
