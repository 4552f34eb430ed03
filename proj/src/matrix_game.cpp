#include "searchgames/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace searchgames {
namespace {

// Dense tableau simplex for: maximize c'x subject to Ax <= b, x >= 0.
// Classic two-phase formulation with lexicographic (value, label) pivot
// selection, which rules out cycling; the iteration cap is a hard backstop.
struct LPSolver {
  static constexpr double eps = 1e-11;

  int m, n;
  long iterationCap;
  std::vector<int> N, B;
  std::vector<std::vector<double>> D;

  LPSolver(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
           const std::vector<double>& c)
      : m(static_cast<int>(b.size())),
        n(static_cast<int>(c.size())),
        iterationCap(200L * (m + n) + 10000L),
        N(n + 1),
        B(m),
        D(m + 2, std::vector<double>(n + 2)) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) D[i][j] = A[i][j];
    for (int i = 0; i < m; ++i) {
      B[i] = n + i;
      D[i][n] = -1.0;
      D[i][n + 1] = b[i];
    }
    for (int j = 0; j < n; ++j) {
      N[j] = j;
      D[m][j] = -c[j];
    }
    N[n] = -1;
    D[m + 1][n] = 1.0;
  }

  void pivot(int r, int s) {
    double* a = D[r].data();
    double inv = 1.0 / a[s];
    for (int i = 0; i < m + 2; ++i) {
      if (i != r && std::abs(D[i][s]) > eps) {
        double* bb = D[i].data();
        double inv2 = bb[s] * inv;
        for (int j = 0; j < n + 2; ++j) bb[j] -= a[j] * inv2;
        bb[s] = a[s] * inv2;
      }
    }
    for (int j = 0; j < n + 2; ++j)
      if (j != s) D[r][j] *= inv;
    for (int i = 0; i < m + 2; ++i)
      if (i != r) D[i][s] *= -inv;
    D[r][s] = inv;
    std::swap(B[r], N[s]);
  }

  bool simplex(int phase) {
    int x = m + phase - 1;
    for (;;) {
      if (--iterationCap < 0) throw std::runtime_error("LP iteration cap exceeded");
      int s = -1;
      for (int j = 0; j <= n; ++j) {
        if (N[j] == -phase) continue;
        if (s == -1 || std::make_pair(D[x][j], N[j]) < std::make_pair(D[x][s], N[s])) s = j;
      }
      if (D[x][s] >= -eps) return true;
      int r = -1;
      for (int i = 0; i < m; ++i) {
        if (D[i][s] <= eps) continue;
        if (r == -1 || std::make_pair(D[i][n + 1] / D[i][s], B[i]) <
                           std::make_pair(D[r][n + 1] / D[r][s], B[r]))
          r = i;
      }
      if (r == -1) return false;  // unbounded
      pivot(r, s);
    }
  }

  // Returns the optimum, or -inf when infeasible / +inf when unbounded.
  double solve(std::vector<double>& x) {
    int r = 0;
    for (int i = 1; i < m; ++i)
      if (D[i][n + 1] < D[r][n + 1]) r = i;
    if (D[r][n + 1] < -eps) {
      pivot(r, n);
      if (!simplex(2) || D[m + 1][n + 1] < -eps)
        return -std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (B[i] == -1) {
          int s = 0;
          for (int j = 1; j <= n; ++j)
            if (std::make_pair(D[i][j], N[j]) < std::make_pair(D[i][s], N[s])) s = j;
          pivot(i, s);
        }
      }
    }
    bool ok = simplex(1);
    x.assign(n, 0.0);
    for (int i = 0; i < m; ++i)
      if (B[i] < n) x[B[i]] = D[i][n + 1];
    return ok ? D[m][n + 1] : std::numeric_limits<double>::infinity();
  }
};

// Optimal mix for the row player (minimizer of max_c (x'M)_c). Shift the
// payoff positive, then "max 1'u s.t. M'u <= 1, u >= 0" has optimum 1/v' and
// the normalized u is the minimax mix.
std::vector<double> solve_row_mix(const std::vector<std::vector<double>>& M) {
  const int rows = static_cast<int>(M.size());
  const int cols = static_cast<int>(M.front().size());
  double lo = M[0][0];
  for (const auto& row : M)
    for (double v : row) lo = std::min(lo, v);
  const double shift = 1.0 - lo;

  // Constraints: for each column c, sum_r u_r * (M[r][c] + shift) <= 1.
  std::vector<std::vector<double>> A(cols, std::vector<double>(rows));
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) A[c][r] = M[r][c] + shift;
  std::vector<double> b(cols, 1.0), obj(rows, 1.0), u;
  LPSolver lp(A, b, obj);
  const double total = lp.solve(u);
  if (!std::isfinite(total) || total <= 0.0) {
    throw std::runtime_error("matrix game LP did not produce a finite positive optimum");
  }
  double s = 0.0;
  for (double& v : u) {
    v = std::max(v, 0.0);
    s += v;
  }
  if (s <= 0.0) throw std::runtime_error("matrix game LP returned a zero mix");
  for (double& v : u) v /= s;
  return u;
}

}  // namespace

void validate_game(const MatrixGame& g) {
  if (g.payoff.empty() || g.payoff.front().empty()) {
    throw std::invalid_argument("matrix game needs at least one row and column");
  }
  const std::size_t cols = g.payoff.front().size();
  for (const auto& row : g.payoff) {
    if (row.size() != cols) throw std::invalid_argument("matrix game payoff is ragged");
    for (double v : row)
      if (!std::isfinite(v)) throw std::invalid_argument("matrix game payoff has non-finite entry");
  }
  if (!g.rowLabels.empty() && g.rowLabels.size() != g.payoff.size())
    throw std::invalid_argument("rowLabels size mismatch");
  if (!g.colLabels.empty() && g.colLabels.size() != cols)
    throw std::invalid_argument("colLabels size mismatch");
}

void validate_game(const PredictedMatrixGame& pg) {
  validate_game(pg.game);
  const int cols = pg.game.cols();
  if (pg.hColumns.empty() || static_cast<int>(pg.hColumns.size()) >= cols) {
    throw std::invalid_argument("hColumns must be a nonempty proper subset of the columns");
  }
  for (std::size_t i = 0; i < pg.hColumns.size(); ++i) {
    if (pg.hColumns[i] < 0 || pg.hColumns[i] >= cols)
      throw std::invalid_argument("hColumns index out of range");
    if (i > 0 && pg.hColumns[i] <= pg.hColumns[i - 1])
      throw std::invalid_argument("hColumns must be strictly ascending");
  }
}

GameSolution solve(const MatrixGame& g, double tol) {
  validate_game(g);
  const int rows = g.rows();
  const int cols = g.cols();

  GameSolution sol;
  sol.rowMix = solve_row_mix(g.payoff);

  // The column player's optimal mix is the row mix of the negated transpose.
  std::vector<std::vector<double>> MT(static_cast<std::size_t>(cols),
                                      std::vector<double>(static_cast<std::size_t>(rows)));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) MT[c][r] = -g.payoff[r][c];
  sol.colMix = solve_row_mix(MT);

  double upper = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < cols; ++c) {
    double v = 0.0;
    for (int r = 0; r < rows; ++r) v += sol.rowMix[r] * g.payoff[r][c];
    upper = std::max(upper, v);
  }
  double lower = std::numeric_limits<double>::infinity();
  for (int r = 0; r < rows; ++r) {
    double v = 0.0;
    for (int c = 0; c < cols; ++c) v += g.payoff[r][c] * sol.colMix[c];
    lower = std::min(lower, v);
  }
  sol.dualityGap = upper - lower;
  sol.value = 0.5 * (upper + lower);
  if (!(sol.dualityGap <= tol)) {
    throw std::runtime_error("matrix game solve did not reach the requested tolerance");
  }
  return sol;
}

MatrixGame auxiliary_game(const PredictedMatrixGame& pg, double lambda1, double lambda2) {
  validate_game(pg);
  if (!std::isfinite(lambda1) || !std::isfinite(lambda2) || lambda1 < 0.0 || lambda2 < 0.0 ||
      lambda1 + lambda2 <= 0.0) {
    throw std::invalid_argument("auxiliary game weights must be nonnegative, not both zero");
  }
  const int rows = pg.game.rows();
  const int cols = pg.game.cols();
  auto colName = [&](int c) {
    return pg.game.colLabels.empty() ? std::to_string(c) : pg.game.colLabels[c];
  };

  MatrixGame aux;
  aux.rowLabels = pg.game.rowLabels;
  aux.payoff.assign(static_cast<std::size_t>(rows), {});
  for (int y1 : pg.hColumns) {
    for (int y2 = 0; y2 < cols; ++y2) {
      aux.colLabels.push_back("(" + colName(y1) + "," + colName(y2) + ")");
      for (int r = 0; r < rows; ++r) {
        const auto& row = pg.game.payoff[r];
        aux.payoff[r].push_back(lambda1 * row[y1] +
                                                          lambda2 * row[y2]);
      }
    }
  }
  return aux;
}

std::pair<double, double> consistency_robustness(const PredictedMatrixGame& pg,
                                                 const std::vector<double>& rowMix) {
  validate_game(pg);
  if (rowMix.size() != static_cast<std::size_t>(pg.game.rows())) {
    throw std::invalid_argument("rowMix size does not match the game");
  }
  const int cols = pg.game.cols();
  std::vector<double> expected(static_cast<std::size_t>(cols), 0.0);
  for (int r = 0; r < pg.game.rows(); ++r) {
    const double w = rowMix[r];
    if (w == 0.0) continue;
    const auto& row = pg.game.payoff[r];
    for (int c = 0; c < cols; ++c) expected[c] += w * row[c];
  }
  double consistency = -std::numeric_limits<double>::infinity();
  for (int c : pg.hColumns) consistency = std::max(consistency, expected[c]);
  double robustness = -std::numeric_limits<double>::infinity();
  for (double v : expected) robustness = std::max(robustness, v);
  return {consistency, robustness};
}

FrontierTrace trace_frontier(const PredictedMatrixGame& pg, const std::vector<double>& lambdaGrid,
                             double tol) {
  validate_game(pg);
  FrontierTrace trace;
  std::vector<ParetoPoint> raw;

  auto addPoint = [&](double l1, double l2) {
    try {
      MatrixGame aux = auxiliary_game(pg, l1, l2);
      GameSolution sol = solve(aux, tol);
      auto [c, r] = consistency_robustness(pg, sol.rowMix);
      // The scalarized optimum must price its own (C, R) pair.
      if (std::abs(l1 * c + l2 * r - sol.value) > 2.0 * tol * std::max(1.0, std::abs(sol.value))) {
        throw std::runtime_error("scalarization identity violated");
      }
      raw.push_back(ParetoPoint{c, r, OracleParams{sol.rowMix}});
    } catch (const std::exception& e) {
      trace.warnings.push_back("lambda=(" + std::to_string(l1) + "," + std::to_string(l2) +
                               "): " + e.what());
    }
  };

  addPoint(0.0, 1.0);
  for (double g : lambdaGrid) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw std::invalid_argument("lambda grid entries must be nonnegative");
    }
    addPoint(1.0, g);
  }
  trace.curve = make_pareto_curve(std::move(raw));
  return trace;
}

nlohmann::json game_to_json(const PredictedMatrixGame& pg) {
  nlohmann::json j;
  j["payoff"] = pg.game.payoff;
  j["rowLabels"] = pg.game.rowLabels;
  j["colLabels"] = pg.game.colLabels;
  if (!pg.hColumns.empty()) j["hColumns"] = pg.hColumns;
  return j;
}

PredictedMatrixGame game_from_json(const nlohmann::json& j) {
  PredictedMatrixGame pg;
  pg.game.payoff = j.at("payoff").get<std::vector<std::vector<double>>>();
  pg.game.rowLabels = j.value("rowLabels", std::vector<std::string>{});
  pg.game.colLabels = j.value("colLabels", std::vector<std::string>{});
  pg.hColumns = j.value("hColumns", std::vector<int>{});
  if (pg.hColumns.empty()) {
    validate_game(pg.game);
  } else {
    validate_game(pg);
  }
  return pg;
}

}  // namespace searchgames
