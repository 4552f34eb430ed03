#include "doctest.h"

#include "searchgames/box_imperfect.hpp"
#include "searchgames/box_perfect.hpp"
#include "searchgames/core.hpp"
#include "searchgames/rng.hpp"
#include "searchgames/verify.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace searchgames;

namespace {

BoxInstance half_detect() {
  BoxInstance inst;
  inst.times = {1.0, 1.0};
  inst.q = 0.5;
  inst.prediction = {0};
  return validate_instance(inst);
}

}  // namespace

TEST_SUITE("box-imperfect") {

TEST_CASE("value_imperfect closed form and the difference form agree") {
  CHECK(value_imperfect({1.0, 1.0}, 0.5) == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(value_imperfect({1.0, 1.0}, {0}, 0.5) == doctest::Approx(2.0).epsilon(1e-12));

  Rng rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    const BoxInstance inst = random_box_instance(rng, 2, 5, 0.3 + 0.5 * rng.uniform());
    const double direct = value_imperfect(inst.times, inst.q);
    double total = 0.0;
    for (double t : inst.times) total += t;
    const double viaPerfect = value_perfect(inst.times) + (1.0 - inst.q) * total / inst.q;
    CHECK(direct == doctest::Approx(viaPerfect).epsilon(1e-12));
  }
}

TEST_CASE("value_imperfect approaches the perfect value as q approaches 1") {
  const std::vector<double> times = {0.6, 1.9, 2.4};
  CHECK(value_imperfect(times, 1.0) == doctest::Approx(value_perfect(times)).epsilon(1e-12));
  CHECK(value_imperfect(times, 1.0 - 1e-9) ==
        doctest::Approx(value_perfect(times)).epsilon(1e-6));
}

TEST_CASE("beta_star of the half-detect example is one half") {
  CHECK(beta_star(half_detect()) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("beta_star is strictly interior") {
  Rng rng(29);
  for (int rep = 0; rep < 30; ++rep) {
    const BoxInstance inst = random_box_instance(rng, 2, 5, 0.2 + 0.6 * rng.uniform());
    const double b = beta_star(inst);
    CHECK(b > 0.0);
    CHECK(b < 1.0);
  }
}

TEST_CASE("expected_times_sk frozen values on the half-detect example") {
  const BoxInstance inst = half_detect();
  const SkExpectedTimes kink = expected_times_sk(inst, 1, 0.0);
  CHECK(kink.inPrediction == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(kink.offPrediction == doctest::Approx(4.0).epsilon(1e-12));

  const SkExpectedTimes mid = expected_times_sk(inst, 1, 0.5);
  CHECK(mid.inPrediction == doctest::Approx(2.75).epsilon(1e-12));
  CHECK(mid.offPrediction == doctest::Approx(4.5).epsilon(1e-12));

  // At (k = 0, beta = beta_star) both sides sit at the game value.
  const SkExpectedTimes star = expected_times_sk(inst, 0, beta_star(inst));
  CHECK(star.inPrediction == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(star.offPrediction == doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("pass-count telescoping identity") {
  for (double q : {0.3, 0.5, 0.8}) {
    for (int k : {1, 2, 3, 5, 8}) {
      double lhs = 0.0;
      for (int j = 1; j < k; ++j) lhs += q * std::pow(1.0 - q, j) * j;
      const double p = std::pow(1.0 - q, k);
      const double rhs = (1.0 - p) * (1.0 - q) / q - k * p;
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("sk sequences at the breakpoints are continuous") {
  Rng rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    const BoxInstance inst = random_box_instance(rng, 2, 4, 0.2 + 0.6 * rng.uniform());
    for (int k : {0, 1, 2}) {
      const SkExpectedTimes hi = expected_times_sk(inst, k, 1.0);
      const SkExpectedTimes lo = expected_times_sk(inst, k + 1, 0.0);
      CHECK(hi.inPrediction == doctest::Approx(lo.inPrediction).epsilon(1e-12));
      CHECK(hi.offPrediction == doctest::Approx(lo.offPrediction).epsilon(1e-12));
    }
  }
}

TEST_CASE("frontier breakpoints interleave the value") {
  const BoxInstance inst = half_detect();
  CHECK(frontier_breakpoint(inst, 0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(frontier_breakpoint(inst, 1) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(frontier_breakpoint(inst, 2) == doctest::Approx(2.5).epsilon(1e-12));

  Rng rng(37);
  for (int rep = 0; rep < 20; ++rep) {
    const BoxInstance r = random_box_instance(rng, 2, 5, 0.2 + 0.6 * rng.uniform());
    const double vY = value_imperfect(r.times, r.q);
    CHECK(frontier_breakpoint(r, 0) >= vY);
    CHECK(frontier_breakpoint(r, 1) <= vY);
  }
}

TEST_CASE("frontier_imperfect segment lines and the kink at (3,4)") {
  const BoxInstance inst = half_detect();
  const ImperfectFrontier f = frontier_imperfect(inst, 3, 9);
  REQUIRE(f.segments.size() == 4);

  const ImperfectFrontierSegment& s0 = f.segments[0];
  CHECK(s0.k == 0);
  CHECK(s0.coefC == doctest::Approx(1.0));
  CHECK(s0.coefR == doctest::Approx(1.0));
  CHECK(s0.rhs == doctest::Approx(7.0));
  CHECK(s0.cHi == doctest::Approx(3.5));
  CHECK(s0.cLo == doctest::Approx(3.0));

  const ImperfectFrontierSegment& s1 = f.segments[1];
  CHECK(s1.coefC == doctest::Approx(2.0));
  CHECK(s1.coefR == doctest::Approx(1.0));
  CHECK(s1.rhs == doctest::Approx(10.0));
  CHECK(s1.cHi == doctest::Approx(3.0));
  CHECK(s1.cLo == doctest::Approx(2.5));

  // Both segment lines pass through the kink (3, 4).
  CHECK(s0.coefC * 3.0 + s0.coefR * 4.0 == doctest::Approx(s0.rhs).epsilon(1e-12));
  CHECK(s1.coefC * 3.0 + s1.coefR * 4.0 == doctest::Approx(s1.rhs).epsilon(1e-12));

  // Segments are contiguous and the window below the last breakpoint is open.
  for (std::size_t i = 0; i + 1 < f.segments.size(); ++i) {
    CHECK(f.segments[i].cLo == doctest::Approx(f.segments[i + 1].cHi).epsilon(1e-12));
  }
  CHECK(f.uncoveredLo == doctest::Approx(2.0));
  CHECK(f.uncoveredHi == doctest::Approx(frontier_breakpoint(inst, 4)).epsilon(1e-12));

  // Every curve point satisfies its segment line.
  for (const ParetoPoint& p : f.curve.points) {
    const auto* kb = std::get_if<KBetaParams>(&p.params);
    REQUIRE(kb != nullptr);
    const ImperfectFrontierSegment& seg = f.segments[static_cast<std::size_t>(kb->k)];
    CHECK(seg.coefC * p.consistency + seg.coefR * p.robustness ==
          doctest::Approx(seg.rhs).epsilon(1e-10));
  }
}

TEST_CASE("hider_hk weights and normalizer") {
  const BoxInstance inst = half_detect();
  const HkDistribution h1 = hider_hk(inst, 1);
  CHECK(h1.lambda == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(h1.dist.probs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(h1.dist.probs[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  const HkDistribution h2 = hider_hk(inst, 2);
  CHECK(h2.lambda == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(h2.dist.probs[0] == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("best_response_value_hk frozen values") {
  const BoxInstance inst = half_detect();
  CHECK(best_response_value_hk(inst, 1) == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
  CHECK(best_response_value_hk(inst, 2) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("greedy best response brackets the closed form") {
  const BoxInstance inst = half_detect();
  for (int k : {0, 1, 2}) {
    const HkDistribution h = hider_hk(inst, k);
    const GreedyResponse g = best_response_greedy(inst.times, inst.q, h.dist, 0, 1e-10);
    const double closed = best_response_value_hk(inst, k);
    CHECK(g.expectedTime <= closed + 1e-8);
    CHECK(g.expectedTime + g.tailBound >= closed - 1e-8);
    CHECK(g.tailBound <= 1e-8);
  }
}

TEST_CASE("greedy rejects the wrong pass-count sign") {
  const BoxInstance inst = half_detect();
  const int k = 1;
  const HkDistribution h = hider_hk(inst, k);
  const GreedyResponse g = best_response_greedy(inst.times, inst.q, h.dist, 0, 1e-10);
  const SubsetTotals st = subset_totals(inst);
  const double p = std::pow(1.0 - inst.q, k);
  const double minusForm =
      h.lambda * (st.tH * value_imperfect(inst.times, inst.prediction, inst.q) / p +
                  st.tHc * value_imperfect(inst.times, complement(inst), inst.q) +
                  ((2.0 - inst.q) / inst.q - k) * st.tH * st.tHc);
  const double margin = h.lambda * 2.0 * k * st.tH * st.tHc;
  CHECK(margin == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(g.expectedTime - minusForm >= margin - 1e-6);
}

TEST_CASE("the imperfect value identity holds exactly") {
  Rng rng(41);
  for (int rep = 0; rep < 30; ++rep) {
    const BoxInstance inst = random_box_instance(rng, 2, 5, 0.2 + 0.6 * rng.uniform());
    CHECK(std::abs(tradeoff_lower_gap(inst)) <= 1e-9);
  }
}

TEST_CASE("sk sequence opens k prediction passes then alternates") {
  const BoxInstance inst = half_detect();
  SkSequence always(inst, 1, 0.0, 99);
  CHECK(always.next() == 0);
  CHECK(always.next() == 1);
  CHECK(always.next() == 0);
  CHECK(always.next() == 1);

  SkSequence extra(inst, 1, 1.0, 99);  // beta = 1 adds one more prediction pass
  CHECK(extra.next() == 0);
  CHECK(extra.next() == 0);
  CHECK(extra.next() == 1);
  CHECK(extra.next() == 0);
}

TEST_CASE("imperfect entry points require q strictly below one") {
  BoxInstance perfect;
  perfect.times = {1.0, 1.0};
  perfect.prediction = {0};
  CHECK_THROWS_AS(beta_star(validate_instance(perfect)), std::invalid_argument);
  CHECK_THROWS_AS(frontier_imperfect(validate_instance(perfect)), std::invalid_argument);
}

}  // TEST_SUITE
