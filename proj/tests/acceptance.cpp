// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Tolerances are pinned here on purpose; loosening them is a behavior change.

#include "searchgames/box_imperfect.hpp"
#include "searchgames/box_perfect.hpp"
#include "searchgames/core.hpp"
#include "searchgames/line_search.hpp"
#include "searchgames/matrix_game.hpp"
#include "searchgames/montecarlo.hpp"
#include "searchgames/rng.hpp"
#include "searchgames/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace searchgames;

namespace {

struct Gate {
  std::ostringstream detail;
  bool ok = true;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      detail << what;
      ok = false;
    }
  }
  void within(double actual, double expected, double tol, const std::string& what) {
    if (!(std::abs(actual - expected) <= tol)) {
      require(false, what + ": got " + std::to_string(actual) + ", want " +
                         std::to_string(expected) + " +/- " + std::to_string(tol));
    }
  }
};

BoxInstance example_perfect() {
  BoxInstance inst;
  inst.times = {1.0, 1.0};
  inst.prediction = {0};
  return validate_instance(inst);
}

BoxInstance example_imperfect() {
  BoxInstance inst = example_perfect();
  inst.q = 0.5;
  return validate_instance(inst);
}

void criterion1(Gate& g) {
  const BoxInstance inst = example_perfect();
  g.within(value_perfect(inst.times, inst.prediction), 1.0, 1e-12, "V(H)");
  g.within(value_perfect(inst.times), 1.5, 1e-12, "V(Y)");
  const PerfectFrontier f = frontier_perfect(inst, 11);
  g.within(f.segment.cMin, 1.0, 1e-12, "segment cMin");
  g.within(f.segment.cMax, 1.5, 1e-12, "segment cMax");
  g.within(f.segment.coefC, 1.0, 1e-12, "segment coefC");
  g.within(f.segment.coefR, 1.0, 1e-12, "segment coefR");
  g.within(f.segment.rhs, 3.0, 1e-12, "segment rhs");
  for (const ParetoPoint& p : f.curve.points) {
    g.within(p.consistency + p.robustness, 3.0, 1e-12, "point off the line c + r = 3");
  }
  g.within(f.curve.points.front().consistency, 1.0, 1e-12, "left endpoint c");
  g.within(f.curve.points.front().robustness, 2.0, 1e-12, "left endpoint r");
  g.within(f.curve.points.back().consistency, 1.5, 1e-12, "right endpoint c");
  g.within(f.curve.points.back().robustness, 1.5, 1e-12, "right endpoint r");
}

void criterion2(Gate& g) {
  const BoxInstance inst = example_imperfect();
  g.within(value_imperfect(inst.times, inst.prediction, inst.q), 2.0, 1e-12, "V_q(H)");
  g.within(value_imperfect(inst.times, inst.q), 3.5, 1e-12, "V_q(Y)");
  const ImperfectFrontier f = frontier_imperfect(inst, 7, 9);
  g.require(f.segments.size() == 8, "expected segments for k = 0..7");
  for (const ImperfectFrontierSegment& s : f.segments) {
    const double scale = std::pow(2.0, s.k);
    g.within(s.coefC, scale, 1e-12 * scale, "segment coefC");
    g.within(s.coefR, 1.0, 1e-12, "segment coefR");
  }
  for (int k = 0; k <= 7; ++k) {
    g.within(frontier_breakpoint(inst, k), 2.0 + std::pow(0.5, k - 1), 1e-12,
             "breakpoint v_k");
  }
  // Neighboring segment lines meet at the breakpoints; the first kink is (3,4)
  // and the robustness at the low end of segment k grows without bound.
  for (std::size_t i = 0; i + 1 < f.segments.size(); ++i) {
    const ImperfectFrontierSegment& a = f.segments[i];
    const ImperfectFrontierSegment& b = f.segments[i + 1];
    const double c = a.cLo;
    const double ra = (a.rhs - a.coefC * c) / a.coefR;
    const double rb = (b.rhs - b.coefC * c) / b.coefR;
    g.within(ra, rb, 1e-9, "segment lines disagree at their shared breakpoint");
    g.within(ra, static_cast<double>(i) + 4.0, 1e-9, "robustness at breakpoint");
  }
  const ImperfectFrontierSegment& s0 = f.segments[0];
  g.within((s0.rhs - s0.coefC * 3.0) / s0.coefR, 4.0, 1e-12, "kink (3,4)");
  const ImperfectFrontierSegment& last = f.segments.back();
  g.require((last.rhs - last.coefC * last.cLo) / last.coefR > 10.0,
            "robustness fails to climb toward the c -> V_q(H) limit");
}

void criterion3(Gate& g) {
  Rng rng(101);
  const std::vector<double> grid = {1e-3, 1e-2, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 10.0, 100.0, 1e3};
  for (int rep = 0; rep < 25 && g.ok; ++rep) {
    const BoxInstance inst = random_box_instance(rng, 2, 4, 1.0);
    const PredictedMatrixGame pg = permutation_matrix_game(inst);
    const FrontierTrace trace = trace_frontier(pg, grid, 1e-7);
    g.require(trace.warnings.empty(), "scalarized solve produced warnings");
    const PerfectFrontier closed = frontier_perfect(inst, 2);
    const PerfectFrontierSegment& s = closed.segment;
    for (const ParetoPoint& p : trace.curve.points) {
      g.within(s.coefC * p.consistency + s.coefR * p.robustness, s.rhs, 1e-6,
               "traced point off the closed-form segment");
      g.require(p.consistency >= s.cMin - 1e-6 && p.consistency <= s.cMax + 1e-6,
                "traced consistency outside [V(H), V(Y)]");
    }
    for (const ParetoPoint& target : closed.curve.points) {
      double best = 1e300;
      for (const ParetoPoint& p : trace.curve.points) {
        best = std::min(best, std::max(std::abs(p.consistency - target.consistency),
                                       std::abs(p.robustness - target.robustness)));
      }
      g.require(best <= 1e-6, "frontier endpoint not attained by the trace");
    }
  }
}

void criterion4(Gate& g) {
  Rng rng(202);
  const double qs[3] = {0.3, 0.5, 0.8};
  for (int rep = 0; rep < 10 && g.ok; ++rep) {
    const BoxInstance inst = random_box_instance(rng, 2, 4, qs[rep % 3]);
    const SubsetTotals st = subset_totals(inst);
    for (int k = 0; k <= 3 && g.ok; ++k) {
      const HkDistribution h = hider_hk(inst, k);
      const GreedyResponse greedy = best_response_greedy(inst.times, inst.q, h.dist, 0, 1e-9);
      const double plus = best_response_value_hk(inst, k);
      g.require(plus >= greedy.expectedTime - 1e-6 &&
                    plus <= greedy.expectedTime + greedy.tailBound + 1e-6,
                "closed form escapes the greedy bracket at k=" + std::to_string(k));
      if (k >= 1) {
        const double p = std::pow(1.0 - inst.q, k);
        const double minus =
            h.lambda * (st.tH * value_imperfect(inst.times, inst.prediction, inst.q) / p +
                        st.tHc * value_imperfect(inst.times, complement(inst), inst.q) +
                        ((2.0 - inst.q) / inst.q - k) * st.tH * st.tHc);
        const double margin = h.lambda * 2.0 * k * st.tH * st.tHc;
        g.require(greedy.expectedTime - minus >= margin - 1e-6,
                  "sign-flipped pass-count form not rejected at k=" + std::to_string(k));
      }
    }
  }
}

void criterion5(Gate& g) {
  Rng rng(303);
  for (int rep = 0; rep < 5 && g.ok; ++rep) {
    BoxInstance inst;
    inst.times = {rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0)};
    inst.prediction = {0};
    inst = validate_instance(inst);
    const double alpha = rng.uniform();
    const BoxCREstimate est =
        estimate_CR_box(make_sstar_factory(inst, alpha), inst, 100000, 404 + rep);
    const SStarExpectedTimes closed = expected_times_sstar(inst, alpha);
    g.within(est.perBox[0].mean, closed.inPrediction,
             3.0 * est.perBox[0].standardError + 1e-9, "s*(alpha) predicted-box mean");
    g.within(est.perBox[1].mean, closed.offPrediction,
             3.0 * est.perBox[1].standardError + 1e-9, "s*(alpha) other-box mean");
  }
  for (int rep = 0; rep < 5 && g.ok; ++rep) {
    BoxInstance inst;
    inst.times = {rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0)};
    inst.prediction = {0};
    inst.q = 0.3 + 0.5 * rng.uniform();
    inst = validate_instance(inst);
    const int k = rep % 4;
    const double beta = rng.uniform();
    const BoxCREstimate est =
        estimate_CR_box(make_sk_factory(inst, k, beta), inst, 100000, 515 + rep);
    const SkExpectedTimes closed = expected_times_sk(inst, k, beta);
    g.within(est.perBox[0].mean, closed.inPrediction,
             3.0 * est.perBox[0].standardError + 1e-9, "s^k(beta) predicted-box mean");
    g.within(est.perBox[1].mean, closed.offPrediction,
             3.0 * est.perBox[1].standardError + 1e-9, "s^k(beta) other-box mean");
  }
}

void criterion6(Gate& g) {
  Rng rng(505);
  for (int rep = 0; rep < 100 && g.ok; ++rep) {
    const BoxInstance perfect = random_box_instance(rng, 2, 6, 1.0);
    g.within(lowerbound_gap_perfect(perfect), 0.0, 1e-9, "perfect value decomposition");

    const double q = 0.2 + 0.6 * rng.uniform();
    const BoxInstance imperfect = random_box_instance(rng, 2, 6, q);
    g.within(tradeoff_lower_gap(imperfect), 0.0, 1e-9, "imperfect value decomposition");

    const int k = 1 + rep % 8;
    double lhs = 0.0;
    for (int j = 1; j < k; ++j) lhs += q * std::pow(1.0 - q, j) * j;
    const double p = std::pow(1.0 - q, k);
    g.within(lhs, (1.0 - p) * (1.0 - q) / q - k * p, 1e-12, "pass-count identity");
  }
  // Conditioning decomposition: the mixed-hider mean is the prediction-mass
  // weighted average of the per-side conditional means, with the per-box
  // estimates reused on both sides.
  for (int rep = 0; rep < 5 && g.ok; ++rep) {
    const BoxInstance inst = random_box_instance(rng, 2, 5, 0.3 + 0.5 * rng.uniform());
    const HkDistribution h = hider_hk(inst, 1);
    const BoxCREstimate est =
        estimate_CR_box(make_sk_factory(inst, 1, 0.5), inst, 500, 606 + rep);
    double mixed = 0.0;
    for (std::size_t j = 0; j < est.perBox.size(); ++j) {
      mixed += h.dist.probs[j] * est.perBox[j].mean;
    }
    double massH = 0.0, condH = 0.0, condHc = 0.0;
    for (int j : inst.prediction) {
      massH += h.dist.probs[j];
      condH += h.dist.probs[j] * est.perBox[static_cast<std::size_t>(j)].mean;
    }
    for (int j : complement(inst)) {
      condHc += h.dist.probs[j] * est.perBox[static_cast<std::size_t>(j)].mean;
    }
    const double grouped = massH * (condH / massH) + (1.0 - massH) * (condHc / (1.0 - massH));
    g.within(mixed, grouped, 1e-9, "hider-conditioning decomposition");
  }
}

void criterion7(Gate& g) {
  const SymmetricOptimum opt = rho_star();
  g.require(opt.alphaStar >= 3.58 && opt.alphaStar <= 3.60, "alphaStar outside [3.58, 3.60]");
  g.require(opt.rhoStar >= 4.58 && opt.rhoStar <= 4.60, "rhoStar outside [4.58, 4.60]");
  const ParetoCurve nearOne = frontier_line({1.0 - 1e-9});
  g.require(nearOne.points.size() == 1, "frontier_line near lambda = 1");
  g.within(nearOne.points[0].consistency, opt.rhoStar, 1e-3, "consistency limit");
  g.within(nearOne.points[0].robustness, opt.rhoStar, 1e-3, "robustness limit");
}

void criterion8(Gate& g) {
  for (double lambda : {0.25, 0.5, 0.75}) {
    if (!g.ok) break;
    const GauntletParams params = gauntlet_params_from_epsilon(lambda, 0.05);
    const GauntletResult res = adversary_gauntlet(params, {1, 2, 3, 4}, 1000, 808);
    const double bound = lower_bound_value(lambda, params.eta);
    g.require(std::abs(bound - res.lowerBound) <= 1e-12, "bound bookkeeping");
    g.require(res.minCombined >= bound - 1e-6,
              "a strategy beat the certified bound at lambda=" + std::to_string(lambda) +
                  " (min " + std::to_string(res.minCombined) + " vs " + std::to_string(bound) +
                  ")");
    const double simple = lower_bound_value(lambda, params.epsilon);
    g.require(std::abs(res.geometricCombined - simple) <= 0.1 * simple,
              "geometric strategy not within 10% of the bound at lambda=" +
                  std::to_string(lambda));
  }
}

void criterion9(Gate& g) {
  Rng rng(909);
  const double lambda = 0.4;
  const double eps = 0.08;
  const LineHiderDensity hPred = make_line_hider_density(1.0 / std::sqrt(lambda), eps);
  const LineHiderDensity hUnpred = make_line_hider_density(-std::sqrt(lambda), eps);
  for (int rep = 0; rep < 100 && g.ok; ++rep) {
    const CaseStrategy cs = random_case_strategy(1, lambda, hPred.bigR, rng);
    const CaseClosedForms forms = case_closed_forms(1, cs.xs, lambda, eps);
    g.within(payoff_vs_density(cs.strategy, hPred, 1e-9), forms.predictedSide, 1e-6,
             "predicted-side payoff");
    g.within(payoff_vs_density(cs.strategy, hUnpred, 1e-9), forms.unpredictedSide, 1e-6,
             "unpredicted-side payoff");
  }
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* label;
    std::function<void(Gate&)> fn;
  };
  const std::vector<Entry> entries = {
      {1, "two-box perfect-detection tradeoff line", criterion1},
      {2, "two-box imperfect-detection staircase", criterion2},
      {3, "LP oracle matches the closed-form frontier", criterion3},
      {4, "greedy best response certifies the pass-count form", criterion4},
      {5, "Monte-Carlo estimates match closed-form expected times", criterion5},
      {6, "algebraic identity suite", criterion6},
      {7, "line-search optimum constants", criterion7},
      {8, "line lower-bound gauntlet", criterion8},
      {9, "quadrature reproduces the case closed forms", criterion9},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    Gate gate;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      e.fn(gate);
    } catch (const std::exception& ex) {
      gate.require(false, std::string("exception: ") + ex.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (gate.ok) {
      std::printf("[PASS] criterion %d: %s (%.2fs)\n", e.id, e.label, secs);
    } else {
      ++failures;
      std::printf("[FAIL] criterion %d: %s (%.2fs) -- %s\n", e.id, e.label, secs,
                  gate.detail.str().c_str());
    }
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
