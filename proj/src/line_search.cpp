#include "searchgames/line_search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace searchgames {
namespace {

constexpr double kRootTol = 1e-12;

// f must be increasing with f(lo) < 0 < f(hi).
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > kRootTol * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double simpson_rule(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson_rule(a, m, fa, flm, fm);
  const double right = simpson_rule(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return adaptive_simpson(f, a, b, fa, fm, fb, simpson_rule(a, b, fa, fm, fb), tol, 48);
}

struct ShapeInfo {
  bool startPredicted;
  bool evenN;
  double oddFloor;   // x_{-1}: floor of the side searched at odd turns
  double evenFloor;  // x_{-2}: floor of the side searched at even turns
};

ShapeInfo shape_info(int shape, double lambda) {
  const double rt = std::sqrt(lambda);
  switch (shape) {
    case 1: return {true, true, rt, 1.0 / rt};
    case 2: return {false, true, 1.0 / rt, rt};
    case 3: return {true, false, rt, 1.0 / rt};
    case 4: return {false, false, 1.0 / rt, rt};
    default: throw std::invalid_argument("shape must be 1, 2, 3 or 4");
  }
}

// Scan target level that alphaBar attains: min over a > 1 of
// (1 + lambda + 2 sqrt(lambda) a) / ln a.
double scan_target(double lambda, double alphaBar) {
  return (1.0 + lambda + 2.0 * std::sqrt(lambda) * alphaBar) / std::log(alphaBar);
}

double eq12_lhs(double lambda, double bigR, int blocks) {
  const double z = std::exp(std::log(bigR) / blocks);
  return (1.0 + lambda + 2.0 * lambda * z) / std::log(z);
}

}  // namespace

void validate_line_strategy(const PureLineStrategy& s) {
  if (s.turns.empty()) throw std::invalid_argument("strategy needs at least one turn");
  double lastPred = 0.0, lastUnpred = 0.0;
  for (std::size_t i = 0; i < s.turns.size(); ++i) {
    const LineTurn& t = s.turns[i];
    if (!(t.distance > 0.0) || !std::isfinite(t.distance)) {
      throw std::invalid_argument("turn distances must be positive");
    }
    if (i > 0 && t.predictedSide == s.turns[i - 1].predictedSide) {
      throw std::invalid_argument("turn directions must alternate");
    }
    double& last = t.predictedSide ? lastPred : lastUnpred;
    if (t.distance <= last) {
      throw std::invalid_argument("same-side turn distances must strictly increase");
    }
    last = t.distance;
  }
}

void validate_biased_geometric(const BiasedGeometricStrategy& s) {
  if (!(s.alphaBase > 1.0) || !std::isfinite(s.alphaBase)) {
    throw std::invalid_argument("alphaBase must exceed 1");
  }
  if (!(s.mu > 0.0) || s.mu > 1.0) throw std::invalid_argument("mu must lie in (0, 1]");
}

PureLineStrategy biased_turn_window(const BiasedGeometricStrategy& s, double u, double minCover,
                                    double needPredicted, double needUnpredicted) {
  validate_biased_geometric(s);
  if (!(minCover > 0.0)) throw std::invalid_argument("minCover must be positive");
  const double logAlpha = std::log(s.alphaBase);
  // Omitted early turns sum to below ~smallest * alpha/(alpha-1), negligible
  // against every cost queried at |y| >= minCover; the window also always
  // starts below minCover / alpha^2.
  const double smallest = minCover * std::min(1e-13, std::pow(s.alphaBase, -3.0));
  long i = static_cast<long>(std::floor(std::log(smallest) / logAlpha - u));

  PureLineStrategy out;
  bool coveredPred = needPredicted <= 0.0, coveredUnpred = needUnpredicted <= 0.0;
  for (long guard = 0; !(coveredPred && coveredUnpred); ++i, ++guard) {
    if (guard > 4'000'000) {
      throw std::runtime_error("turn window too long; alphaBase too close to 1");
    }
    const bool even = (i % 2) == 0;
    const bool predicted = even == s.predictedSideFirst;
    const double dist = (even ? 1.0 : s.mu) * std::exp((static_cast<double>(i) + u) * logAlpha);
    out.turns.push_back({dist, predicted});
    if (predicted && dist >= needPredicted) coveredPred = true;
    if (!predicted && dist >= needUnpredicted) coveredUnpred = true;
  }
  return out;
}

LineHiderDensity make_line_hider_density(double anchor, double epsilon) {
  if (anchor == 0.0 || !std::isfinite(anchor)) throw std::invalid_argument("anchor must be nonzero");
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  LineHiderDensity h;
  h.anchor = anchor;
  h.epsilon = epsilon;
  h.bigR = std::exp((1.0 - epsilon) / epsilon);
  // Total mass eps*ln(bigR) + eps = 1 by construction; guard against rounding.
  if (std::abs(epsilon * std::log(h.bigR) + epsilon - 1.0) > 1e-12) {
    throw std::runtime_error("hider density mass check failed");
  }
  return h;
}

double normalized_cost(const PureLineStrategy& s, double y) {
  if (y == 0.0 || !std::isfinite(y)) throw std::invalid_argument("hider position must be nonzero");
  const bool predicted = y > 0.0;
  const double target = std::abs(y);
  double prior = 0.0;
  for (const LineTurn& t : s.turns) {
    if (t.predictedSide == predicted && t.distance >= target) {
      return (target + 2.0 * prior) / target;
    }
    prior += t.distance;
  }
  throw std::invalid_argument("strategy never reaches the hider position");
}

SymmetricOptimum rho_star() {
  const double a = bisect([](double x) { return std::log(x) - 1.0 - 1.0 / x; }, 1.5, 100.0);
  return {a, 1.0 + (1.0 + a) / std::log(a)};
}

LineBounds upper_bounds(double alphaBase, double mu) {
  validate_biased_geometric({alphaBase, mu, true});
  const double logAlpha = std::log(alphaBase);
  return {1.0 + (1.0 + mu * alphaBase) / logAlpha, 1.0 + (1.0 + alphaBase / mu) / logAlpha};
}

double lambda_objective(double lambda, double alphaBase) {
  return 1.0 + lambda + (1.0 + lambda + 2.0 * std::sqrt(lambda) * alphaBase) / std::log(alphaBase);
}

double optimal_alpha(double lambda) {
  if (!(lambda > 0.0) || lambda > 1.0) throw std::invalid_argument("lambda must lie in (0, 1]");
  const double srl = std::sqrt(lambda);
  // Stationarity of f: 2 sqrt(lambda) a ln a - (1 + lambda) - 2 sqrt(lambda) a = 0,
  // increasing in a, so the minimizer is its unique root.
  auto fo = [&](double a) { return 2.0 * srl * a * (std::log(a) - 1.0) - (1.0 + lambda); };
  double hi = 8.0;
  while (fo(hi) < 0.0) hi *= 2.0;
  return bisect(fo, 1.0 + 1e-12, hi);
}

ParetoCurve frontier_line(const std::vector<double>& lambdaGrid) {
  std::vector<ParetoPoint> pts;
  for (double lambda : lambdaGrid) {
    if (!(lambda > 0.0) || !(lambda < 1.0)) {
      throw std::invalid_argument("lambda grid values must lie strictly inside (0, 1)");
    }
    const double alphaBar = optimal_alpha(lambda);
    const double mu = std::sqrt(lambda);
    const LineBounds b = upper_bounds(alphaBar, mu);
    pts.push_back(ParetoPoint{b.consistency, b.robustness, LineParams{alphaBar, mu}});
  }
  return make_pareto_curve(std::move(pts));
}

SimEstimate expected_ratio_biased(const BiasedGeometricStrategy& s, double y, long trials,
                                  std::uint64_t seed) {
  validate_biased_geometric(s);
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  if (y == 0.0 || !std::isfinite(y)) throw std::invalid_argument("hider position must be nonzero");
  const double target = std::abs(y);
  const double needPred = y > 0.0 ? target : 0.0;
  const double needUnpred = y > 0.0 ? 0.0 : target;

  RunningStat stat;
  Rng rng(seed);
  for (long t = 0; t < trials; ++t) {
    const double u = 2.0 * rng.uniform();
    const PureLineStrategy window = biased_turn_window(s, u, target, needPred, needUnpred);
    stat.add(normalized_cost(window, y));
  }
  return stat.estimate();
}

double payoff_vs_density(const PureLineStrategy& s, const LineHiderDensity& h, double quadTol) {
  validate_line_strategy(s);
  if (!(quadTol > 0.0)) throw std::invalid_argument("quadTol must be positive");
  if (!(h.epsilon > 0.0) || !(h.epsilon < 1.0) || !(h.bigR > 1.0) || h.anchor == 0.0) {
    throw std::invalid_argument("malformed hider density");
  }
  if (std::abs(h.epsilon * std::log(h.bigR) + h.epsilon - 1.0) > 1e-9) {
    throw std::invalid_argument("hider density mass is not 1");
  }
  const bool predicted = h.anchor > 0.0;
  const double a = std::abs(h.anchor);
  const double top = a * h.bigR;

  // Smooth pieces (lo, hi] of the support, each with the constant sum of turn
  // distances walked before its covering turn.
  struct Piece {
    double lo, hi, prior;
  };
  std::vector<Piece> pieces;
  double atomPrior = -1.0;
  {
    double lo = a;
    double prefix = 0.0;
    for (const LineTurn& t : s.turns) {
      if (t.predictedSide != predicted) {
        prefix += t.distance;
        continue;
      }
      if (t.distance >= top) {
        pieces.push_back({lo, top, prefix});
        atomPrior = prefix;
        break;
      }
      if (t.distance > lo) {
        pieces.push_back({lo, t.distance, prefix});
        lo = t.distance;
      }
      prefix += t.distance;
    }
  }
  if (atomPrior < 0.0) throw std::invalid_argument("strategy does not cover the density support");

  const double eps = h.epsilon;
  const double tolPiece = quadTol / static_cast<double>(pieces.size());
  double total = 0.0;
  for (const Piece& p : pieces) {
    auto f = [&](double x) { return (1.0 + 2.0 * p.prior / x) * eps / x; };
    total += integrate(f, p.lo, p.hi, tolPiece);
  }
  total += eps * (1.0 + 2.0 * atomPrior / top);
  return total;
}

double lower_bound_value(double lambda, double epsilon) {
  if (!(lambda > 0.0) || lambda > 1.0) throw std::invalid_argument("lambda must lie in (0, 1]");
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  return (1.0 - epsilon) * lambda_objective(lambda, optimal_alpha(lambda));
}

CaseStrategy random_case_strategy(int shape, double lambda, double bigR, Rng& rng, int maxN) {
  if (!(lambda > 0.0) || !(lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0, 1)");
  if (!(bigR > 1.0)) throw std::invalid_argument("bigR must exceed 1");
  const ShapeInfo info = shape_info(shape, lambda);
  const double rt = std::sqrt(lambda);
  const double capPred = bigR / rt, capUnpred = rt * bigR;
  if (maxN < 4) throw std::invalid_argument("maxN too small");

  // n is the top turn index; turn i is on the start side iff i is even.
  int n;
  CaseStrategy cs;
  cs.shape = shape;
  do {
    n = info.evenN ? 2 * (1 + rng.index(maxN / 2)) : 3 + 2 * rng.index((maxN - 2) / 2);
    const int startCount = n / 2 + 1;          // turns 0, 2, ..., (n or n-1)
    const int otherCount = (n + 1) / 2;        // turns 1, 3, ...
    const bool startIsPred = info.startPredicted;

    // Interior distances are log-uniform between the side's floor and its
    // cap; the last turn on each side is pinned to the cap.
    auto drawSide = [&](int count, double floor, double cap) {
      std::vector<double> v(count);
      v.back() = cap;
      for (int i = 0; i + 1 < count; ++i) {
        v[i] = floor * std::exp(rng.uniform() * std::log(cap / floor));
      }
      std::sort(v.begin(), v.end() - 1);
      return v;
    };
    const double startFloor = info.evenFloor, otherFloor = info.oddFloor;
    const double startCapDist = startIsPred ? capPred : capUnpred;
    const double otherCapDist = startIsPred ? capUnpred : capPred;
    std::vector<double> startVals = drawSide(startCount, startFloor, startCapDist);
    std::vector<double> otherVals = drawSide(otherCount, otherFloor, otherCapDist);

    cs.xs.assign(n + 1, 0.0);
    cs.strategy.turns.clear();
    std::size_t si = 0, oi = 0;
    for (int i = 0; i <= n; ++i) {
      const bool onStart = (i % 2) == 0;
      const double d = onStart ? startVals[si++] : otherVals[oi++];
      cs.xs[i] = d;
      cs.strategy.turns.push_back({d, onStart == info.startPredicted});
    }
    // Reject the rare draw with a same-side tie.
  } while ([&] {
    for (std::size_t i = 2; i < cs.xs.size(); ++i)
      if (cs.xs[i] <= cs.xs[i - 2]) return true;
    return false;
  }());
  validate_line_strategy(cs.strategy);
  return cs;
}

CaseClosedForms case_closed_forms(int shape, const std::vector<double>& xs, double lambda,
                                  double epsilon) {
  if (xs.size() < 2) throw std::invalid_argument("shape strategy needs at least two turns");
  const ShapeInfo info = shape_info(shape, lambda);
  const int n = static_cast<int>(xs.size()) - 1;
  if (info.evenN != (n % 2 == 0)) throw std::invalid_argument("turn count parity does not match the shape");
  const double eps = epsilon;
  const double xm1 = info.oddFloor;

  auto ratioSum = [&](int from, int to, int step) {
    double sum = 0.0;
    for (int i = from; i <= to; i += step) {
      sum += xs[i] / (i == 0 ? xm1 : xs[i - 1]);
    }
    return sum;
  };

  // The density range follows from epsilon alone.
  const double bigR = std::exp((1.0 - eps) / eps);

  double startSide, otherSide, certified;
  const double rootN = std::pow(bigR, 1.0 / n);
  const double rt = std::sqrt(lambda);
  if (info.evenN) {
    startSide = 1.0 + eps * n + 2.0 * eps * ratioSum(1, n - 1, 2);
    otherSide = 1.0 + eps * (n - 2) + 2.0 * eps * ratioSum(0, n - 2, 2);
    certified = (1.0 + lambda) * (1.0 + eps * n) -
                2.0 * eps * (info.startPredicted ? lambda : 1.0) +
                2.0 * eps * n * rt * rootN;
  } else {
    startSide = 1.0 + eps * (n - 1) + 2.0 * eps * ratioSum(1, n - 2, 2);
    otherSide = 1.0 + eps * (n - 1) + 2.0 * eps * ratioSum(0, n - 1, 2);
    const double lamPow = std::pow(lambda, (info.startPredicted ? -1.0 : 1.0) / (2.0 * n));
    certified = (1.0 + lambda) * (1.0 + eps * (n - 1)) + 2.0 * eps * n * rt * lamPow * rootN;
  }

  CaseClosedForms out;
  out.predictedSide = info.startPredicted ? startSide : otherSide;
  out.unpredictedSide = info.startPredicted ? otherSide : startSide;
  out.combined = out.predictedSide + lambda * out.unpredictedSide;
  out.certified = certified;
  return out;
}

GauntletParams gauntlet_params_from_epsilon(double lambda, double epsilon) {
  if (!(lambda > 0.0) || !(lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0, 1)");
  if (!(epsilon > 0.0) || epsilon >= 0.5) {
    throw std::invalid_argument("epsilon must lie in (0, 0.5) so the density range exceeds e");
  }
  GauntletParams p;
  p.lambda = lambda;
  p.epsilon = epsilon;
  p.bigR = std::exp((1.0 - epsilon) / epsilon);
  const double target = scan_target(lambda, optimal_alpha(lambda));
  // Largest prefix-closed block count whose R^(1/N) still clears the target.
  int bestN = 0;
  for (int N = 1; N <= 4000; ++N) {
    if (std::exp(std::log(p.bigR) / N) <= 1.0 + 1e-12) break;
    if (eq12_lhs(lambda, p.bigR, N) >= target - 1e-12) {
      bestN = N;
    } else {
      break;
    }
  }
  p.capN = bestN;
  if (bestN == 0) {
    p.eta = 1.0;  // the analysis certifies nothing at this epsilon
  } else {
    const double delta = std::max(epsilon, 1.0 - std::pow(lambda, 1.0 / (2.0 * bestN)));
    p.eta = std::min(1.0, 2.0 * delta);
  }
  return p;
}

GauntletParams gauntlet_params_from_eta(double lambda, double eta) {
  if (!(lambda > 0.0) || !(lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0, 1)");
  if (!(eta > 0.0) || !(eta < 1.0)) throw std::invalid_argument("eta must lie in (0, 1)");
  const double delta = 0.5 * eta;
  int blocks = 1;
  while (std::pow(lambda, 1.0 / (2.0 * blocks)) < 1.0 - delta) {
    if (++blocks > 1'000'000) throw std::runtime_error("no viable block count for eta");
  }
  const double target = scan_target(lambda, optimal_alpha(lambda));
  double bigR = std::max(std::exp(1.0), std::exp((1.0 - delta) / delta));
  auto prefixHolds = [&](double R) {
    for (int N = 1; N <= blocks; ++N) {
      if (eq12_lhs(lambda, R, N) < target) return false;
    }
    return true;
  };
  for (int it = 0; !prefixHolds(bigR); ++it) {
    if (it > 4000) throw std::runtime_error("could not grow the density range for eta");
    bigR *= 2.0;
  }
  GauntletParams p;
  p.lambda = lambda;
  p.eta = eta;
  p.bigR = bigR;
  p.epsilon = 1.0 / (std::log(bigR) + 1.0);
  p.capN = blocks;
  return p;
}

GauntletResult adversary_gauntlet(const GauntletParams& params, const std::vector<int>& shapes,
                                  int randomTrials, std::uint64_t seed, double quadTol) {
  if (shapes.empty()) throw std::invalid_argument("at least one shape is required");
  if (randomTrials < 0) throw std::invalid_argument("randomTrials must be nonnegative");
  const double lambda = params.lambda;
  const double rt = std::sqrt(lambda);
  const LineHiderDensity hPred = make_line_hider_density(1.0 / rt, params.epsilon);
  const LineHiderDensity hUnpred = make_line_hider_density(-rt, params.epsilon);
  if (std::abs(hPred.bigR - params.bigR) > 1e-6 * params.bigR) {
    throw std::invalid_argument("params.bigR does not match exp((1-eps)/eps)");
  }
  const double alphaBar = optimal_alpha(lambda);

  GauntletResult res;
  res.params = params;
  res.lowerBound = (1.0 - params.eta) * lambda_objective(lambda, alphaBar);
  res.minCombined = std::numeric_limits<double>::infinity();

  auto evalCombined = [&](const PureLineStrategy& s) {
    return payoff_vs_density(s, hPred, quadTol) +
           lambda * payoff_vs_density(s, hUnpred, quadTol);
  };

  for (int shape : shapes) {
    if (shape < 1 || shape > 4) throw std::invalid_argument("shape must be 1, 2, 3 or 4");
    double shapeMin = std::numeric_limits<double>::infinity();
    for (int t = 0; t < randomTrials; ++t) {
      Rng rng = Rng::substream(seed, (static_cast<std::uint64_t>(shape) << 32) |
                                         static_cast<std::uint64_t>(t));
      const CaseStrategy cs = random_case_strategy(shape, lambda, params.bigR, rng);
      const double combined = evalCombined(cs.strategy);
      const CaseClosedForms forms = case_closed_forms(shape, cs.xs, lambda, params.epsilon);
      // The quadrature and the closed form are two routes to the same number;
      // disagreement beyond the quadrature budget means a bug, not bad luck.
      if (std::abs(combined - forms.combined) > 100.0 * quadTol * (1.0 + lambda)) {
        throw std::runtime_error("gauntlet closed form and quadrature disagree");
      }
      shapeMin = std::min(shapeMin, combined);
      ++res.strategiesEvaluated;
    }
    if (randomTrials > 0) {
      res.perShapeMin[shape - 1] = shapeMin;
      res.minCombined = std::min(res.minCombined, shapeMin);
    }
  }

  // The near-optimal randomized strategy, frozen at a grid of offsets.
  const BiasedGeometricStrategy geo{alphaBar, rt, true};
  const double needPred = params.bigR / rt, needUnpred = rt * params.bigR;
  double geoMin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 40; ++i) {
    const double u = 2.0 * i / 40.0;
    const PureLineStrategy window = biased_turn_window(geo, u, rt, needPred, needUnpred);
    geoMin = std::min(geoMin, evalCombined(window));
    ++res.strategiesEvaluated;
  }
  res.geometricCombined = geoMin;
  res.minCombined = std::min(res.minCombined, geoMin);
  return res;
}

}  // namespace searchgames
