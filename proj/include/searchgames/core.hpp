#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <variant>
#include <vector>

namespace searchgames {

// Default absolute tolerance for floating-point comparisons throughout the
// library. Individual checks may tighten it, never loosen it silently.
inline constexpr double kDefaultTol = 1e-9;

// Hide-and-seek instance over n boxes. Box i takes times[i] > 0 to open and a
// look inside finds a hider there independently with probability q. The
// prediction is the subset of boxes the searcher was told to trust (0-based,
// nonempty, proper).
struct BoxInstance {
  std::vector<double> times;
  double q = 1.0;
  std::vector<int> prediction;

  int n() const { return static_cast<int>(times.size()); }
};

// Normalizes (sorts/dedups the prediction) and checks every structural
// requirement; throws std::invalid_argument on the first violation.
BoxInstance validate_instance(BoxInstance inst);

// Boxes outside the prediction, ascending.
std::vector<int> complement(const BoxInstance& inst);

struct SubsetTotals {
  double tH = 0.0;   // total time of predicted boxes
  double tHc = 0.0;  // total time of the rest
  double tY = 0.0;   // tH + tHc
};

// Requires a validated instance.
SubsetTotals subset_totals(const BoxInstance& inst);

// Sum of times[i] over idx.
double subset_time(const std::vector<double>& times, const std::vector<int>& idx);

// Probability distribution over boxes (or any finite support).
struct DiscreteHiderDistribution {
  std::vector<double> probs;
};

// Checks nonnegativity and that probs sum to 1 within 1e-12.
void validate_distribution(const DiscreteHiderDistribution& h);

// --- Strategy parameterizations attached to frontier points -----------------

// Box search, perfect detection: play the predicted set first with probability
// alpha, the complement first otherwise.
struct AlphaParams {
  double alpha = 0.0;
};

// Box search, imperfect detection: k full passes over the predicted set before
// alternating; beta mixes the k-pass and (k+1)-pass strategies.
struct KBetaParams {
  int k = 0;
  double beta = 0.0;
};

// Line search: biased geometric strategy with base alpha and bias mu.
struct LineParams {
  double alpha = 0.0;
  double mu = 1.0;
};

// Mixed strategy over an explicit matrix game's rows.
struct OracleParams {
  std::vector<double> rowMix;
};

using StrategyParams = std::variant<AlphaParams, KBetaParams, LineParams, OracleParams>;

nlohmann::json params_to_json(const StrategyParams& params);
StrategyParams params_from_json(const nlohmann::json& j);

// One point of a consistency/robustness tradeoff curve. consistency is the
// worst case over predicted hider positions, robustness over all positions.
struct ParetoPoint {
  double consistency = 0.0;
  double robustness = 0.0;
  StrategyParams params;
};

struct ParetoCurve {
  std::vector<ParetoPoint> points;
};

// Throws std::invalid_argument unless points are sorted by strictly increasing
// consistency, strictly decreasing robustness, and consistency <= robustness
// everywhere (within tol slack on the last inequality).
void check_pareto_curve(const ParetoCurve& curve, double tol = kDefaultTol);

// Sorts by consistency, merges points equal within mergeTol in both
// coordinates, drops dominated points, then checks the curve invariant.
ParetoCurve make_pareto_curve(std::vector<ParetoPoint> points, double mergeTol = kDefaultTol);

// --- JSON instance format ----------------------------------------------------
// {"times": [1.0, 2.0], "q": 0.5, "prediction": [0]}
// q defaults to 1 when absent; prediction is required.

nlohmann::json instance_to_json(const BoxInstance& inst);
BoxInstance instance_from_json(const nlohmann::json& j);

}  // namespace searchgames
