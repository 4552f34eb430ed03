#include "searchgames/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "searchgames/box_imperfect.hpp"
#include "searchgames/box_perfect.hpp"
#include "searchgames/line_search.hpp"
#include "searchgames/matrix_game.hpp"
#include "searchgames/montecarlo.hpp"

namespace searchgames {
namespace {

struct Collector {
  std::vector<CheckResult>& out;
  std::string scope;

  void residual(const std::string& name, double value, double tol, const std::string& note = "") {
    out.push_back({name, scope, std::abs(value), tol, std::abs(value) <= tol, note});
  }

  void require(const std::string& name, bool ok, const std::string& note = "") {
    out.push_back({name, scope, ok ? 0.0 : 1.0, 0.0, ok, note});
  }

  void expect_throw(const std::string& name, const std::function<void()>& fn) {
    bool threw = false;
    std::string what;
    try {
      fn();
    } catch (const std::exception& e) {
      threw = true;
      what = e.what();
    }
    require(name, threw, threw ? what : "no exception was thrown");
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

void check_core(Collector& c, Rng& rng) {
  {
    std::vector<ParetoPoint> pts;
    for (int i = 0; i < 25; ++i) {
      const double cc = rng.uniform(1.0, 5.0);
      pts.push_back({cc, rng.uniform(cc, 6.0), AlphaParams{rng.uniform()}});
    }
    const ParetoCurve curve = make_pareto_curve(pts);
    c.require("pareto-reduction-valid", !curve.points.empty());
  }
  c.expect_throw("pareto-rejects-rising-robustness", [] {
    ParetoCurve bad;
    bad.points.push_back({1.0, 3.0, AlphaParams{0.5}});
    bad.points.push_back({2.0, 3.5, AlphaParams{0.6}});
    check_pareto_curve(bad);
  });
  c.expect_throw("pareto-rejects-c-above-r", [] {
    ParetoCurve bad;
    bad.points.push_back({2.0, 1.0, AlphaParams{0.5}});
    check_pareto_curve(bad);
  });
  {
    const StrategyParams cases[] = {StrategyParams{AlphaParams{0.375}},
                                    StrategyParams{KBetaParams{3, 0.625}},
                                    StrategyParams{LineParams{3.5, 0.25}},
                                    StrategyParams{OracleParams{{0.25, 0.75}}}};
    bool ok = true;
    for (const StrategyParams& p : cases) {
      ok = ok && params_to_json(params_from_json(params_to_json(p))) == params_to_json(p);
    }
    c.require("params-json-roundtrip", ok);
  }
  {
    const BoxInstance inst = random_box_instance(rng, 3, 6, 0.5);
    const BoxInstance back = instance_from_json(instance_to_json(inst));
    const bool ok = back.times == inst.times && back.q == inst.q &&
                    back.prediction == inst.prediction;
    c.require("instance-json-roundtrip", ok);
  }
  c.expect_throw("instance-rejects-bad-q",
                 [] { validate_instance({{1.0, 2.0}, 0.0, {0}}); });
  c.expect_throw("instance-rejects-full-prediction",
                 [] { validate_instance({{1.0, 2.0}, 1.0, {0, 1}}); });
  c.expect_throw("instance-rejects-single-box", [] { validate_instance({{1.0}, 1.0, {0}}); });
}

void check_matrix_game(Collector& c, Rng& rng) {
  {
    MatrixGame pennies;
    pennies.payoff = {{1.0, 0.0}, {0.0, 1.0}};
    pennies.rowLabels = {"r0", "r1"};
    pennies.colLabels = {"c0", "c1"};
    const GameSolution sol = solve(pennies);
    c.residual("pennies-value", sol.value - 0.5, 1e-9);
    c.residual("pennies-row-mix", std::abs(sol.rowMix[0] - 0.5) + std::abs(sol.rowMix[1] - 0.5),
               1e-7);
  }
  {
    double worstGap = 0.0;
    bool mixesOk = true;
    for (int it = 0; it < 6; ++it) {
      MatrixGame g;
      const int m = 3 + rng.index(4), n = 3 + rng.index(4);
      g.payoff.assign(m, std::vector<double>(n));
      for (auto& row : g.payoff)
        for (double& x : row) x = rng.uniform(0.0, 4.0);
      for (int i = 0; i < m; ++i) g.rowLabels.push_back("r" + std::to_string(i));
      for (int j = 0; j < n; ++j) g.colLabels.push_back("c" + std::to_string(j));
      const GameSolution sol = solve(g);
      worstGap = std::max(worstGap, sol.dualityGap);
      try {
        validate_distribution({sol.rowMix});
        validate_distribution({sol.colMix});
      } catch (const std::exception&) {
        mixesOk = false;
      }
    }
    c.residual("solve-duality-gap", worstGap, 1e-9);
    c.require("solve-mixes-are-distributions", mixesOk);
  }
  {
    double worst = 0.0;
    bool crOrder = true;
    for (int it = 0; it < 4; ++it) {
      PredictedMatrixGame pg;
      const int m = 4, n = 4;
      pg.game.payoff.assign(m, std::vector<double>(n));
      for (auto& row : pg.game.payoff)
        for (double& x : row) x = rng.uniform(1.0, 5.0);
      for (int i = 0; i < m; ++i) pg.game.rowLabels.push_back("r" + std::to_string(i));
      for (int j = 0; j < n; ++j) pg.game.colLabels.push_back("c" + std::to_string(j));
      pg.hColumns = {0, 2};
      const double l1 = 1.0, l2 = rng.uniform(0.1, 3.0);
      const GameSolution sol = solve(auxiliary_game(pg, l1, l2));
      const auto [cons, rob] = consistency_robustness(pg, sol.rowMix);
      worst = std::max(worst, std::abs(l1 * cons + l2 * rob - sol.value));
      crOrder = crOrder && cons <= rob + 1e-12;
    }
    c.residual("aux-scalarization-identity", worst, 1e-7);
    c.require("consistency-below-robustness", crOrder);
  }
  {
    PredictedMatrixGame pg;
    pg.game.payoff = {{1.0, 4.0, 2.0}, {3.0, 1.0, 2.5}, {2.0, 2.0, 1.0}};
    pg.game.rowLabels = {"a", "b", "c"};
    pg.game.colLabels = {"x", "y", "z"};
    pg.hColumns = {1};
    const FrontierTrace tr = trace_frontier(pg, {0.25, 0.5, 1.0, 2.0, 4.0});
    c.require("trace-frontier-no-warnings", tr.warnings.empty(),
              tr.warnings.empty() ? "" : tr.warnings.front());
    const PredictedMatrixGame back = game_from_json(game_to_json(pg));
    c.require("game-json-roundtrip",
              back.game.payoff == pg.game.payoff && back.hColumns == pg.hColumns);
  }
}

void check_box_perfect(Collector& c, Rng& rng) {
  c.residual("value-three-boxes", value_perfect({1.0, 2.0, 3.0}) - 25.0 / 6.0, 1e-12);
  {
    const BoxInstance inst = random_box_instance(rng, 4, 4, 1.0);
    const GameSolution sol = solve(permutation_matrix_game(inst).game, 1e-7);
    c.residual("value-matches-exhaustive-solve", sol.value - value_perfect(inst.times), 1e-6);
  }
  {
    double worstGap = 0.0, worstAlpha = 1.0;
    for (int it = 0; it < 8; ++it) {
      const BoxInstance inst = random_box_instance(rng, 2, 7, 1.0);
      worstGap = std::max(worstGap, std::abs(lowerbound_gap_perfect(inst)));
      const double a = alpha_star(inst);
      worstAlpha = std::min({worstAlpha, a, 1.0 - a});
    }
    c.residual("value-decomposition-identity", worstGap, 1e-9);
    c.require("alpha-star-strictly-interior", worstAlpha > 1e-12,
              "min margin " + fmt(worstAlpha));
  }
  {
    const BoxInstance inst = random_box_instance(rng, 3, 6, 1.0);
    const SubsetTotals tot = subset_totals(inst);
    const double vH = value_perfect(inst.times, inst.prediction);
    const double vHc = value_perfect(inst.times, complement(inst));
    const double vY = value_perfect(inst.times);
    const SStarExpectedTimes one = expected_times_sstar(inst, 1.0);
    const SStarExpectedTimes star = expected_times_sstar(inst, alpha_star(inst));
    c.residual("sstar-alpha-one-endpoint",
               std::abs(one.inPrediction - vH) + std::abs(one.offPrediction - (vHc + tot.tH)),
               1e-9);
    c.residual("sstar-alpha-star-endpoint",
               std::abs(star.inPrediction - vY) + std::abs(star.offPrediction - vY), 1e-9);
    double worstLine = 0.0;
    for (int it = 0; it < 6; ++it) {
      const double a = rng.uniform(alpha_star(inst), 1.0);
      const SStarExpectedTimes et = expected_times_sstar(inst, a);
      worstLine = std::max(worstLine, std::abs(tot.tH * et.inPrediction +
                                               tot.tHc * et.offPrediction - tot.tY * vY));
    }
    c.residual("sstar-on-tradeoff-line", worstLine, 1e-9);

    const PerfectFrontier f = frontier_perfect(inst, 9);
    const ParetoPoint& first = f.curve.points.front();
    const ParetoPoint& last = f.curve.points.back();
    c.residual("frontier-endpoints",
               std::abs(first.consistency - vH) + std::abs(first.robustness - (vHc + tot.tH)) +
                   std::abs(last.consistency - vY) + std::abs(last.robustness - vY),
               1e-9);
  }
  {
    // A hider proportional to opening times equalizes every opening order.
    const BoxInstance inst = random_box_instance(rng, 3, 6, 1.0);
    std::vector<int> all(inst.times.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    const DiscreteHiderDistribution h = hider_proportional(inst.times, all);
    const double vY = value_perfect(inst.times);
    double worst = 0.0;
    for (int it = 0; it < 3; ++it) {
      std::vector<int> order = all;
      rng.shuffle(order);
      double expect = 0.0;
      for (std::size_t b = 0; b < inst.times.size(); ++b) {
        expect += h.probs[b] * search_cost(inst.times, order, static_cast<int>(b));
      }
      worst = std::max(worst, std::abs(expect - vY));
    }
    c.residual("proportional-hider-equalizes-orders", worst, 1e-12);
    bool permOk = true;
    for (int it = 0; it < 20 && permOk; ++it) {
      std::vector<int> order = sample_sZ(inst.times, all, rng);
      std::vector<int> sorted = order;
      std::sort(sorted.begin(), sorted.end());
      permOk = sorted == all;
    }
    c.require("sampled-orders-are-permutations", permOk);
  }
}

void check_box_imperfect(Collector& c, Rng& rng) {
  {
    double worstCross = 0.0, worstLimit = 0.0, worstBeta = 1.0, worstEq5 = 0.0;
    for (int it = 0; it < 8; ++it) {
      const BoxInstance inst = random_box_instance(rng, 2, 6, rng.uniform(0.1, 0.95));
      const SubsetTotals tot = subset_totals(inst);
      worstCross = std::max(
          worstCross, std::abs(value_imperfect(inst.times, inst.q) -
                               (value_perfect(inst.times) + (1.0 - inst.q) * tot.tY / inst.q)));
      worstLimit = std::max(worstLimit, std::abs(value_imperfect(inst.times, 1.0 - 1e-10) -
                                                 value_perfect(inst.times)));
      const double b = beta_star(inst);
      worstBeta = std::min({worstBeta, b, 1.0 - b});
      worstEq5 = std::max(worstEq5, std::abs(tradeoff_lower_gap(inst)));
    }
    c.residual("value-difference-form", worstCross, 1e-9);
    c.residual("value-q-to-one-limit", worstLimit, 1e-6);
    c.require("beta-star-strictly-interior", worstBeta > 1e-12, "min margin " + fmt(worstBeta));
    c.residual("value-decomposition-identity", worstEq5, 1e-9);
  }
  {
    // sum_{j=1}^{k-1} q (1-q)^j j telescopes into closed form.
    double worst = 0.0;
    for (int k : {1, 2, 3, 5, 8}) {
      const double q = rng.uniform(0.05, 0.95);
      double lhs = 0.0;
      for (int j = 1; j <= k - 1; ++j) lhs += q * std::pow(1.0 - q, j) * j;
      const double p = std::pow(1.0 - q, k);
      const double rhs = (1.0 - p) * (1.0 - q) / q - k * p;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    c.residual("pass-count-telescoping-identity", worst, 1e-12);
  }
  {
    const BoxInstance inst = random_box_instance(rng, 3, 5, 0.45);
    const SubsetTotals tot = subset_totals(inst);
    const double vqY = value_imperfect(inst.times, inst.q);
    const double vqH = value_imperfect(inst.times, inst.prediction, inst.q);
    double worstCont = 0.0;
    for (int k = 0; k < 4; ++k) {
      const SkExpectedTimes hi = expected_times_sk(inst, k, 1.0);
      const SkExpectedTimes lo = expected_times_sk(inst, k + 1, 0.0);
      worstCont = std::max({worstCont, std::abs(hi.inPrediction - lo.inPrediction),
                            std::abs(hi.offPrediction - lo.offPrediction)});
    }
    c.residual("sk-breakpoint-continuity", worstCont, 1e-9);
    c.residual("breakpoint-order",
               std::max(0.0, vqY - frontier_breakpoint(inst, 0)) +
                   std::max(0.0, frontier_breakpoint(inst, 1) - vqY),
               0.0, "v_0 >= V_q(Y) >= v_1");

    const ImperfectFrontier f = frontier_imperfect(inst, 6, 7);
    double worstLine = 0.0, worstAdj = 0.0;
    for (const ImperfectFrontierSegment& seg : f.segments) {
      for (const ParetoPoint& p : f.curve.points) {
        if (p.consistency < seg.cLo - 1e-12 || p.consistency > seg.cHi + 1e-12) continue;
        worstLine = std::max(worstLine, std::abs(seg.coefC * p.consistency +
                                                 seg.coefR * p.robustness - seg.rhs) /
                                            std::max(1.0, std::abs(seg.rhs)));
      }
    }
    for (std::size_t k = 0; k + 1 < f.segments.size(); ++k) {
      worstAdj = std::max(worstAdj, std::abs(f.segments[k].cLo - f.segments[k + 1].cHi));
    }
    c.residual("frontier-points-on-segment-lines", worstLine, 1e-9);
    c.residual("frontier-segments-contiguous", worstAdj, 1e-12);
    c.residual("frontier-uncovered-window",
               std::abs(f.uncoveredLo - vqH) +
                   std::abs(f.uncoveredHi - frontier_breakpoint(inst, 7)),
               1e-12);

    double worstHk = 0.0;
    for (int k = 0; k < 3; ++k) {
      const HkDistribution hk = hider_hk(inst, k);
      validate_distribution(hk.dist);
      const double lam = 1.0 / (tot.tH / std::pow(1.0 - inst.q, k) + tot.tHc);
      worstHk = std::max(worstHk, std::abs(hk.lambda - lam));
      const GreedyResponse br = best_response_greedy(inst.times, inst.q, hk.dist, 0, 1e-10);
      const double closed = best_response_value_hk(inst, k);
      const double below = br.expectedTime - 1e-7 - closed;
      const double above = closed - (br.expectedTime + br.tailBound + 1e-7);
      c.residual("greedy-brackets-closed-form-k" + std::to_string(k),
                 std::max({0.0, below, above}), 0.0,
                 "greedy " + fmt(br.expectedTime) + " + tail " + fmt(br.tailBound) + " vs " +
                     fmt(closed));
    }
    c.residual("hk-normalizer", worstHk, 1e-12);
  }
  {
    const BoxInstance inst = random_box_instance(rng, 3, 4, 0.5);
    SkSequence seq(inst, 2, 0.5, 1234);
    bool ok = true;
    std::vector<int> firstPass;
    for (std::size_t i = 0; i < inst.prediction.size(); ++i) firstPass.push_back(seq.next());
    std::sort(firstPass.begin(), firstPass.end());
    ok = firstPass == inst.prediction;
    for (int i = 0; i < 200 && ok; ++i) {
      const int b = seq.next();
      ok = b >= 0 && b < inst.n();
    }
    c.require("sk-sequence-first-pass-covers-prediction", ok);
  }
}

void check_line(Collector& c, Rng& rng) {
  {
    const SymmetricOptimum s = rho_star();
    c.residual("rho-star-stationarity", std::log(s.alphaStar) - 1.0 - 1.0 / s.alphaStar, 1e-9);
    c.residual("rho-star-equals-one-plus-alpha", s.rhoStar - (1.0 + s.alphaStar), 1e-9);
  }
  {
    double worstStat = 0.0, worstObj = 0.0;
    for (int it = 0; it < 6; ++it) {
      const double lambda = rng.uniform(0.05, 0.95);
      const double a = optimal_alpha(lambda);
      const double srl = std::sqrt(lambda);
      worstStat = std::max(worstStat,
                           std::abs(2.0 * srl * a * (std::log(a) - 1.0) - (1.0 + lambda)));
      const LineBounds b = upper_bounds(a, srl);
      worstObj = std::max(worstObj, std::abs(b.consistency + lambda * b.robustness -
                                             lambda_objective(lambda, a)));
    }
    c.residual("optimal-alpha-stationarity", worstStat, 1e-6);
    c.residual("scalarized-objective-identity", worstObj, 1e-12);
  }
  {
    PureLineStrategy s;
    s.turns = {{1.0, true}, {2.0, false}, {4.0, true}};
    // Covering turn is the second one; only the first turn's distance doubles.
    c.residual("normalized-cost-example", normalized_cost(s, -1.5) - 7.0 / 3.0, 1e-12);
    c.residual("normalized-cost-detour", normalized_cost(s, 2.0) - (2.0 + 2.0 * 3.0) / 2.0,
               1e-12);
    double worstScale = 0.0;
    for (int it = 0; it < 5; ++it) {
      const double scale = rng.uniform(0.2, 40.0);
      PureLineStrategy t = s;
      for (LineTurn& turn : t.turns) turn.distance *= scale;
      const double y = rng.uniform() < 0.5 ? rng.uniform(0.3, 3.9) : -rng.uniform(0.3, 1.9);
      worstScale = std::max(worstScale,
                            std::abs(normalized_cost(t, y * scale) - normalized_cost(s, y)));
    }
    c.residual("normalized-cost-scale-invariance", worstScale, 1e-12);
  }
  {
    std::vector<double> grid;
    for (double l = 0.1; l < 0.95; l += 0.1) grid.push_back(l);
    const ParetoCurve curve = frontier_line(grid);
    c.require("frontier-line-valid", curve.points.size() == grid.size());
    double worstMass = 0.0;
    for (int it = 0; it < 4; ++it) {
      const LineHiderDensity h = make_line_hider_density(1.0, rng.uniform(0.05, 0.6));
      worstMass = std::max(worstMass,
                           std::abs(h.epsilon * std::log(h.bigR) + h.epsilon - 1.0));
    }
    c.residual("density-mass-is-one", worstMass, 1e-12);
  }
  {
    const double lambda = 0.3, eps = 0.1;
    const GauntletParams gp = gauntlet_params_from_epsilon(lambda, eps);
    const LineHiderDensity hPred = make_line_hider_density(1.0 / std::sqrt(lambda), eps);
    const LineHiderDensity hUnpred = make_line_hider_density(-std::sqrt(lambda), eps);
    double worstQuad = 0.0, worstCert = 0.0;
    for (int shape = 1; shape <= 4; ++shape) {
      Rng sub = Rng::substream(rng.raw(), static_cast<std::uint64_t>(shape));
      const CaseStrategy cs = random_case_strategy(shape, lambda, gp.bigR, sub);
      const CaseClosedForms forms = case_closed_forms(shape, cs.xs, lambda, eps);
      const double pPred = payoff_vs_density(cs.strategy, hPred, 1e-9);
      const double pUnpred = payoff_vs_density(cs.strategy, hUnpred, 1e-9);
      worstQuad = std::max({worstQuad, std::abs(pPred - forms.predictedSide),
                            std::abs(pUnpred - forms.unpredictedSide)});
      worstCert = std::max(worstCert, forms.certified - forms.combined);
    }
    c.residual("quadrature-matches-closed-forms", worstQuad, 1e-6);
    c.residual("certified-bound-below-combined", std::max(0.0, worstCert), 1e-9);
  }
  {
    const BiasedGeometricStrategy s{2.2, 0.7, true};
    const double y = 1.3;
    const SimEstimate e1 = expected_ratio_biased(s, y, 4000, 777);
    const SimEstimate e2 = expected_ratio_biased(s, y * s.alphaBase * s.alphaBase, 4000, 778);
    c.residual("expected-ratio-periodicity", e1.mean - e2.mean,
               5.0 * (e1.standardError + e2.standardError) + 1e-9,
               fmt(e1.mean) + " vs " + fmt(e2.mean));
  }
  {
    const GauntletParams gp = gauntlet_params_from_epsilon(0.5, 0.12);
    const GauntletResult res = adversary_gauntlet(gp, {1, 2, 3, 4}, 6, 4242, 1e-7);
    c.residual("gauntlet-respects-lower-bound",
               std::max(0.0, res.lowerBound - res.minCombined), 1e-6,
               "min " + fmt(res.minCombined) + " bound " + fmt(res.lowerBound));
  }
}

void check_montecarlo(Collector& c, Rng& rng) {
  {
    const std::vector<double> times = {1.0, 2.0};
    BoxSamplerFactory fixed = [](std::uint64_t) {
      auto pos = std::make_shared<int>(0);
      return BoxSampler([pos]() { return (*pos)++ % 2; });
    };
    const SimEstimate e = simulate_box(fixed, 1, times, 1.0, 64, 99);
    c.residual("fixed-order-exact-mean", e.mean - 3.0, 0.0);
    c.residual("fixed-order-zero-stderr", e.standardError, 0.0);
  }
  {
    const BoxInstance inst = random_box_instance(rng, 3, 5, 1.0);
    const double alpha = rng.uniform(alpha_star(inst), 1.0);
    const SStarExpectedTimes et = expected_times_sstar(inst, alpha);
    const BoxCREstimate cr = estimate_CR_box(make_sstar_factory(inst, alpha), inst, 4000, 314);
    const double seC = std::max(cr.consistencyHat.standardError, 1e-12);
    const double seR = std::max(cr.robustnessHat.standardError, 1e-12);
    c.residual("sstar-consistency-within-5se",
               (cr.consistencyHat.mean - et.inPrediction) / seC, 5.0,
               fmt(cr.consistencyHat.mean) + " vs " + fmt(et.inPrediction));
    c.residual("sstar-robustness-within-5se",
               (cr.robustnessHat.mean - std::max(et.inPrediction, et.offPrediction)) / seR, 5.0);
    c.require("consistency-hat-below-robustness-hat",
              cr.consistencyHat.mean <= cr.robustnessHat.mean + 1e-12);
  }
  {
    BoxInstance inst = random_box_instance(rng, 3, 4, 0.5);
    const int k = 1;
    const double beta = 0.5;
    const SkExpectedTimes et = expected_times_sk(inst, k, beta);
    const BoxCREstimate cr = estimate_CR_box(make_sk_factory(inst, k, beta), inst, 4000, 2718);
    const double seC = std::max(cr.consistencyHat.standardError, 1e-12);
    c.residual("sk-consistency-within-5se", (cr.consistencyHat.mean - et.inPrediction) / seC,
               5.0, fmt(cr.consistencyHat.mean) + " vs " + fmt(et.inPrediction));
  }
  {
    const BoxInstance inst = random_box_instance(rng, 3, 4, 0.6);
    const BoxSamplerFactory f = make_sstar_factory(inst, 0.5);
    const BoxCREstimate a = estimate_CR_box(f, inst, 500, 11);
    const BoxCREstimate b = estimate_CR_box(f, inst, 500, 11);
    c.residual("same-seed-bitwise-reproducible",
               std::abs(a.consistencyHat.mean - b.consistencyHat.mean) +
                   std::abs(a.robustnessHat.standardError - b.robustnessHat.standardError),
               0.0);
  }
  c.expect_throw("starved-box-detected", [] {
    BoxSamplerFactory only0 = [](std::uint64_t) { return BoxSampler([]() { return 0; }); };
    simulate_box(only0, 1, {1.0, 1.0}, 1.0, 2, 5);
  });
}

}  // namespace

BoxInstance random_box_instance(Rng& rng, int nMin, int nMax, double q) {
  if (nMin < 2 || nMax < nMin) throw std::invalid_argument("need nMax >= nMin >= 2");
  const int n = nMin + rng.index(nMax - nMin + 1);
  BoxInstance inst;
  inst.q = q;
  for (int i = 0; i < n; ++i) inst.times.push_back(rng.uniform(0.5, 3.0));
  const int hSize = 1 + rng.index(n - 1);
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  rng.shuffle(all);
  inst.prediction.assign(all.begin(), all.begin() + hSize);
  return validate_instance(std::move(inst));
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  const std::vector<std::string> all = {"core",          "matrix-game", "box-perfect",
                                        "box-imperfect", "line",        "montecarlo"};
  std::vector<std::string> scopes = options.scopes.empty() ? all : options.scopes;
  std::vector<CheckResult> results;
  for (const std::string& scope : scopes) {
    if (std::find(all.begin(), all.end(), scope) == all.end()) {
      throw std::invalid_argument("unknown verification scope: " + scope);
    }
    Collector c{results, scope};
    Rng rng = Rng::substream(options.seed, std::hash<std::string>{}(scope));
    try {
      if (scope == "core") check_core(c, rng);
      if (scope == "matrix-game") check_matrix_game(c, rng);
      if (scope == "box-perfect") check_box_perfect(c, rng);
      if (scope == "box-imperfect") check_box_imperfect(c, rng);
      if (scope == "line") check_line(c, rng);
      if (scope == "montecarlo") check_montecarlo(c, rng);
    } catch (const std::exception& e) {
      results.push_back({"unexpected-exception", scope, 1.0, 0.0, false, e.what()});
    }
  }
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace searchgames
