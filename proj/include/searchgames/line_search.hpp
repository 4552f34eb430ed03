#pragma once

#include "searchgames/core.hpp"
#include "searchgames/montecarlo.hpp"
#include "searchgames/rng.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace searchgames {

// Search on the real line with a directional hint. The hider sits at a
// nonzero point y; positive y means the predicted halfline. The searcher walks
// from the origin, turning at increasing distances; the payoff is the total
// distance walked until reaching y, divided by |y|.

struct LineTurn {
  double distance = 0.0;
  bool predictedSide = true;
};

// Alternating turn list. Valid when directions alternate, distances are
// positive, and same-side distances strictly increase.
struct PureLineStrategy {
  std::vector<LineTurn> turns;
};

void validate_line_strategy(const PureLineStrategy& s);

// Randomized family: turn i goes to alpha^(i+u) on the side searched at even
// iterations (the predicted one when predictedSideFirst), and to
// mu * alpha^(i+u) on the other side; u ~ Uniform[0,2] per sample.
struct BiasedGeometricStrategy {
  double alphaBase = 0.0;
  double mu = 1.0;
  bool predictedSideFirst = true;
};

void validate_biased_geometric(const BiasedGeometricStrategy& s);

// Finite turn window of a biased geometric strategy at a fixed offset u:
// indices run from low enough that skipped prefix distance is negligible
// against minCover, up to the first turns covering needPredicted /
// needUnpredicted on their sides (either may be 0 to not require coverage).
PureLineStrategy biased_turn_window(const BiasedGeometricStrategy& s, double u, double minCover,
                                    double needPredicted, double needUnpredicted);

// Hider density on one halfline: support [|anchor|, |anchor|*bigR] with pdf
// epsilon/|x| plus an atom of mass epsilon at the far endpoint; anchor's sign
// selects the halfline. Total mass epsilon*ln(bigR) + epsilon = 1 forces
// bigR = exp((1-epsilon)/epsilon).
struct LineHiderDensity {
  double anchor = 0.0;
  double epsilon = 0.0;
  double bigR = 0.0;
};

LineHiderDensity make_line_hider_density(double anchor, double epsilon);

// (|y| + 2 * sum of all turn distances strictly before the first turn whose
// side and distance cover y) / |y|. Throws if no turn covers y.
double normalized_cost(const PureLineStrategy& s, double y);

struct SymmetricOptimum {
  double alphaStar = 0.0;  // argmin of (1+a)/ln a, i.e. ln a = 1 + 1/a
  double rhoStar = 0.0;    // 1 + (1+alphaStar)/ln(alphaStar) = 1 + alphaStar
};

// Solved to 1e-10 by bisection on the first-order condition.
SymmetricOptimum rho_star();

struct LineBounds {
  double consistency = 0.0;  // 1 + (1 + mu*alpha)/ln alpha
  double robustness = 0.0;   // 1 + (1 + alpha/mu)/ln alpha
};

// Closed-form guarantees of s_{alpha,mu}; alpha > 1, mu in (0,1].
LineBounds upper_bounds(double alphaBase, double mu);

// Minimizer of f(a) = 1+lambda + (1+lambda+2*sqrt(lambda)*a)/ln a over a > 1,
// located to 1e-10; lambda in (0,1].
double optimal_alpha(double lambda);
double lambda_objective(double lambda, double alphaBase);  // f(a) above

// One frontier point per lambda: mu = sqrt(lambda), alpha = optimal_alpha.
// Grid values must lie strictly inside (0,1).
ParetoCurve frontier_line(const std::vector<double>& lambdaGrid);

// Monte-Carlo estimate of E[normalized_cost(s_{alpha,mu}, y)] over the random
// offset u.
SimEstimate expected_ratio_biased(const BiasedGeometricStrategy& s, double y, long trials,
                                  std::uint64_t seed);

// Integral of normalized_cost(S, .) against the density part of h plus the
// atom contribution, by adaptive Simpson per smooth piece; absolute error at
// most quadTol. Requires S to cover h's support on h's side.
double payoff_vs_density(const PureLineStrategy& s, const LineHiderDensity& h,
                         double quadTol = 1e-8);

// (1-epsilon) * f(alphaBar): the guarantee every pure strategy's combined
// payoff respects against the anchored density pair.
double lower_bound_value(double lambda, double epsilon);

// --- Adversarial lower-bound gauntlet ---------------------------------------
// Four shapes of finite strategies ending at the boundary turns
// sqrt(lambda)*R (unpredicted) and R/sqrt(lambda) (predicted):
//   shape 1: even turn count parity, first turn predicted
//   shape 2: even, first turn unpredicted
//   shape 3: odd, first turn predicted
//   shape 4: odd, first turn unpredicted
// ("even"/"odd" refer to n where turns are indexed 0..n.)

struct CaseStrategy {
  int shape = 1;
  std::vector<double> xs;  // turn distances x_0..x_n
  PureLineStrategy strategy;
};

// Random admissible strategy of the given shape: per-side turn distances
// log-uniform between the shape's floor and cap, sorted, capped exactly.
CaseStrategy random_case_strategy(int shape, double lambda, double bigR, Rng& rng, int maxN = 24);

struct CaseClosedForms {
  double predictedSide = 0.0;    // payoff against the density anchored at 1/sqrt(lambda)
  double unpredictedSide = 0.0;  // payoff against the density anchored at -sqrt(lambda)
  double combined = 0.0;         // predictedSide + lambda * unpredictedSide
  double certified = 0.0;        // AM-GM lower bound on combined for this shape
};

// Exact payoff expressions for a shape's strategy; the quadrature oracle must
// reproduce predictedSide/unpredictedSide within quadTol.
CaseClosedForms case_closed_forms(int shape, const std::vector<double>& xs, double lambda,
                                  double epsilon);

struct GauntletParams {
  double lambda = 0.0;
  double epsilon = 0.0;  // density parameter; bigR = exp((1-eps)/eps)
  double eta = 0.0;      // guarantee level: combined >= (1-eta) f(alphaBar)
  double bigR = 0.0;
  int capN = 0;          // block-length threshold used by the eta analysis
};

// Direct parameterization: given epsilon, certify the smallest eta the
// analysis supports (scan N upward while R^(1/N) keeps the bound inequality).
GauntletParams gauntlet_params_from_epsilon(double lambda, double epsilon);

// Analysis-first parameterization: delta = eta/2, N the smallest integer with
// lambda^(1/(2N)) >= 1-delta, R grown from max(e, exp((1-delta)/delta)) until
// the bound inequality holds at N, epsilon = 1/(ln R + 1).
GauntletParams gauntlet_params_from_eta(double lambda, double eta);

struct GauntletResult {
  GauntletParams params;
  double minCombined = 0.0;              // minimum over all evaluated strategies
  double lowerBound = 0.0;               // (1-eta) f(alphaBar)
  std::array<double, 4> perShapeMin{};   // minima per shape (0 entries for skipped shapes)
  double geometricCombined = 0.0;        // min over offsets for s_{alphaBar, sqrt(lambda)}
  long strategiesEvaluated = 0;
};

// Evaluates randomTrials random strategies per requested shape plus the
// near-optimal biased geometric strategy over a dense offset grid, each via
// payoff_vs_density against both anchored densities.
GauntletResult adversary_gauntlet(const GauntletParams& params, const std::vector<int>& shapes,
                                  int randomTrials, std::uint64_t seed, double quadTol = 1e-8);

}  // namespace searchgames
