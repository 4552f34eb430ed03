#include "doctest.h"

#include "searchgames/core.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <vector>

using namespace searchgames;
using nlohmann::json;

TEST_SUITE("core") {

TEST_CASE("validate_instance normalizes the prediction") {
  BoxInstance inst;
  inst.times = {1.0, 2.0, 3.0};
  inst.prediction = {2, 0, 2};
  const BoxInstance v = validate_instance(inst);
  CHECK(v.prediction == std::vector<int>{0, 2});
  CHECK(complement(v) == std::vector<int>{1});
}

TEST_CASE("validate_instance rejects malformed input") {
  BoxInstance ok;
  ok.times = {1.0, 1.0};
  ok.prediction = {0};

  BoxInstance single = ok;
  single.times = {1.0};
  CHECK_THROWS_AS(validate_instance(single), std::invalid_argument);

  BoxInstance negTime = ok;
  negTime.times = {1.0, -2.0};
  CHECK_THROWS_AS(validate_instance(negTime), std::invalid_argument);

  BoxInstance badQ = ok;
  badQ.q = 0.0;
  CHECK_THROWS_AS(validate_instance(badQ), std::invalid_argument);
  badQ.q = 1.5;
  CHECK_THROWS_AS(validate_instance(badQ), std::invalid_argument);

  BoxInstance emptyPred = ok;
  emptyPred.prediction = {};
  CHECK_THROWS_AS(validate_instance(emptyPred), std::invalid_argument);

  BoxInstance fullPred = ok;
  fullPred.prediction = {0, 1};
  CHECK_THROWS_AS(validate_instance(fullPred), std::invalid_argument);

  BoxInstance outOfRange = ok;
  outOfRange.prediction = {2};
  CHECK_THROWS_AS(validate_instance(outOfRange), std::invalid_argument);
}

TEST_CASE("subset totals split the instance") {
  BoxInstance inst;
  inst.times = {1.0, 2.0, 4.0};
  inst.prediction = {0, 2};
  const SubsetTotals st = subset_totals(validate_instance(inst));
  CHECK(st.tH == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(st.tHc == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(st.tY == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(subset_time(inst.times, {1, 2}) == doctest::Approx(6.0));
}

TEST_CASE("validate_distribution checks mass") {
  CHECK_NOTHROW(validate_distribution({{0.25, 0.75}}));
  CHECK_THROWS_AS(validate_distribution({{0.5, 0.4}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_distribution({{1.2, -0.2}}), std::invalid_argument);
}

TEST_CASE("params JSON round-trips every family") {
  const std::vector<StrategyParams> all = {
      AlphaParams{0.25},
      KBetaParams{3, 0.5},
      LineParams{3.6, 0.75},
      OracleParams{{0.5, 0.25, 0.25}},
  };
  for (const StrategyParams& p : all) {
    const StrategyParams back = params_from_json(params_to_json(p));
    CHECK(params_to_json(back) == params_to_json(p));
  }
  CHECK_THROWS_AS(params_from_json(json{{"family", "unknown"}}), std::invalid_argument);
}

TEST_CASE("check_pareto_curve enforces the tradeoff shape") {
  ParetoCurve good;
  good.points = {{1.0, 2.0, AlphaParams{1.0}}, {1.5, 1.5, AlphaParams{0.5}}};
  CHECK_NOTHROW(check_pareto_curve(good));

  ParetoCurve risingR = good;
  risingR.points[1].robustness = 2.5;
  CHECK_THROWS_AS(check_pareto_curve(risingR), std::invalid_argument);

  ParetoCurve cAboveR = good;
  cAboveR.points[1].robustness = 1.2;
  CHECK_THROWS_AS(check_pareto_curve(cAboveR), std::invalid_argument);

  ParetoCurve flatC = good;
  flatC.points[1].consistency = 1.0;
  CHECK_THROWS_AS(check_pareto_curve(flatC), std::invalid_argument);
}

TEST_CASE("make_pareto_curve merges duplicates and drops dominated points") {
  std::vector<ParetoPoint> pts = {
      {1.5, 1.5, AlphaParams{0.5}},
      {1.0, 2.0, AlphaParams{1.0}},
      {1.0 + 1e-12, 2.0 - 1e-12, AlphaParams{1.0}},  // duplicate within tol
      {1.2, 2.5, AlphaParams{0.9}},                  // dominated by (1.0, 2.0)
  };
  const ParetoCurve curve = make_pareto_curve(pts);
  REQUIRE(curve.points.size() == 2);
  CHECK(curve.points[0].consistency == doctest::Approx(1.0));
  CHECK(curve.points[0].robustness == doctest::Approx(2.0));
  CHECK(curve.points[1].consistency == doctest::Approx(1.5));
  CHECK(curve.points[1].robustness == doctest::Approx(1.5));
}

TEST_CASE("instance JSON round-trip and q default") {
  BoxInstance inst;
  inst.times = {1.0, 0.5, 2.0};
  inst.q = 0.5;
  inst.prediction = {1};
  const BoxInstance back = instance_from_json(instance_to_json(validate_instance(inst)));
  CHECK(back.times == inst.times);
  CHECK(back.q == inst.q);
  CHECK(back.prediction == inst.prediction);

  const BoxInstance noQ = instance_from_json(json{{"times", {1.0, 1.0}}, {"prediction", {0}}});
  CHECK(noQ.q == 1.0);
}

}  // TEST_SUITE
