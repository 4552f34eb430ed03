#pragma once

#include "searchgames/core.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace searchgames {

// Finite zero-sum game. Rows are searcher strategies (minimizer), columns are
// hider positions (maximizer); payoff[r][c] is the cost to the row player.
struct MatrixGame {
  std::vector<std::vector<double>> payoff;
  std::vector<std::string> rowLabels;
  std::vector<std::string> colLabels;

  int rows() const { return static_cast<int>(payoff.size()); }
  int cols() const { return payoff.empty() ? 0 : static_cast<int>(payoff.front().size()); }
};

// A matrix game plus the columns the prediction points at.
struct PredictedMatrixGame {
  MatrixGame game;
  std::vector<int> hColumns;  // ascending, nonempty, proper subset of columns
};

struct GameSolution {
  double value = 0.0;
  std::vector<double> rowMix;
  std::vector<double> colMix;
  double dualityGap = 0.0;  // computed from the returned mixes, never assumed
};

// Throws std::invalid_argument on ragged/empty payoff or non-finite entries.
void validate_game(const MatrixGame& g);
void validate_game(const PredictedMatrixGame& pg);

// Solves the game by dense simplex (both orientations) and certifies the
// result: dualityGap is max_c(rowMix'M)_c - min_r(M colMix)_r and value the
// midpoint. Throws std::runtime_error if the gap exceeds tol or the simplex
// hits its iteration cap.
GameSolution solve(const MatrixGame& g, double tol = kDefaultTol);

// Two-column auxiliary game: for every pair (y1 in hColumns, y2 in any column)
// the column payoff is lambda1*u(x,y1) + lambda2*u(x,y2). Column labels are
// "(a,b)" built from the source labels; hColumns of the result is empty
// (the auxiliary game is solved as a plain game).
MatrixGame auxiliary_game(const PredictedMatrixGame& pg, double lambda1, double lambda2);

// Worst-case expected payoff of rowMix over hColumns (consistency) and over
// all columns (robustness).
std::pair<double, double> consistency_robustness(const PredictedMatrixGame& pg,
                                                 const std::vector<double>& rowMix);

struct FrontierTrace {
  ParetoCurve curve;
  std::vector<std::string> warnings;  // lambda values whose solve failed
};

// Sweeps lambda = (0,1) plus (1, g) for each g in lambdaGrid (g >= 0), solves
// the auxiliary games, evaluates (C, R) of each optimal row mix, and reduces
// to a Pareto curve (duplicates within 1e-9 merged, dominated points dropped).
FrontierTrace trace_frontier(const PredictedMatrixGame& pg, const std::vector<double>& lambdaGrid,
                             double tol = kDefaultTol);

// --- JSON game format --------------------------------------------------------
// {"payoff": [[...],...], "rowLabels": [...], "colLabels": [...],
//  "hColumns": [...]}   hColumns optional; absent means a plain game.

nlohmann::json game_to_json(const PredictedMatrixGame& pg);
PredictedMatrixGame game_from_json(const nlohmann::json& j);

}  // namespace searchgames
