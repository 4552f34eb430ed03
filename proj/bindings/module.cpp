#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "searchgames/box_imperfect.hpp"
#include "searchgames/box_perfect.hpp"
#include "searchgames/core.hpp"
#include "searchgames/line_search.hpp"
#include "searchgames/matrix_game.hpp"
#include "searchgames/montecarlo.hpp"
#include "searchgames/rng.hpp"
#include "searchgames/verify.hpp"

namespace py = pybind11;
using namespace searchgames;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::list curve_to_py(const ParetoCurve& curve) {
  py::list rows;
  for (const ParetoPoint& p : curve.points) {
    py::dict row;
    row["consistency"] = p.consistency;
    row["robustness"] = p.robustness;
    row["params"] = json_to_py(params_to_json(p.params));
    rows.append(row);
  }
  return rows;
}

py::dict estimate_to_py(const SimEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["stderr"] = e.standardError;
  d["trials"] = e.trials;
  return d;
}

PureLineStrategy turns_from_py(const std::vector<std::pair<double, bool>>& turns) {
  PureLineStrategy s;
  for (const auto& [d, pred] : turns) s.turns.push_back({d, pred});
  validate_line_strategy(s);
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "search games with predictions: consistency/robustness tradeoffs";

  py::class_<BoxInstance>(m, "BoxInstance")
      .def(py::init([](std::vector<double> times, std::vector<int> prediction, double q) {
             return validate_instance({std::move(times), q, std::move(prediction)});
           }),
           py::arg("times"), py::arg("prediction"), py::arg("q") = 1.0)
      .def_readonly("times", &BoxInstance::times)
      .def_readonly("q", &BoxInstance::q)
      .def_readonly("prediction", &BoxInstance::prediction)
      .def("__repr__", [](const BoxInstance& b) { return instance_to_json(b).dump(); });

  // box search, perfect detection
  m.def("value_perfect",
        py::overload_cast<const std::vector<double>&>(&value_perfect), py::arg("times"));
  m.def("value_perfect_subset",
        py::overload_cast<const std::vector<double>&, const std::vector<int>&>(&value_perfect),
        py::arg("times"), py::arg("idx"));
  m.def("search_cost", &search_cost, py::arg("times"), py::arg("order"), py::arg("hider"));
  m.def("alpha_star", &alpha_star, py::arg("instance"));
  m.def(
      "expected_times_sstar",
      [](const BoxInstance& inst, double alpha) {
        const SStarExpectedTimes e = expected_times_sstar(inst, alpha);
        return py::make_tuple(e.inPrediction, e.offPrediction);
      },
      py::arg("instance"), py::arg("alpha"));
  m.def(
      "frontier_perfect",
      [](const BoxInstance& inst, int points) {
        return curve_to_py(frontier_perfect(inst, points).curve);
      },
      py::arg("instance"), py::arg("points") = 11);

  // box search, imperfect detection
  m.def("value_imperfect",
        py::overload_cast<const std::vector<double>&, double>(&value_imperfect),
        py::arg("times"), py::arg("q"));
  m.def("value_imperfect_subset",
        py::overload_cast<const std::vector<double>&, const std::vector<int>&, double>(
            &value_imperfect),
        py::arg("times"), py::arg("idx"), py::arg("q"));
  m.def("beta_star", &beta_star, py::arg("instance"));
  m.def(
      "expected_times_sk",
      [](const BoxInstance& inst, int k, double beta) {
        const SkExpectedTimes e = expected_times_sk(inst, k, beta);
        return py::make_tuple(e.inPrediction, e.offPrediction);
      },
      py::arg("instance"), py::arg("k"), py::arg("beta"));
  m.def(
      "frontier_imperfect",
      [](const BoxInstance& inst, int kMax, int pointsPerSegment) {
        return curve_to_py(frontier_imperfect(inst, kMax, pointsPerSegment).curve);
      },
      py::arg("instance"), py::arg("kmax") = 10, py::arg("points_per_segment") = 9);
  m.def("best_response_value_hk", &best_response_value_hk, py::arg("instance"), py::arg("k"));

  // line search
  m.def("rho_star", [] {
    const SymmetricOptimum s = rho_star();
    return py::make_tuple(s.alphaStar, s.rhoStar);
  });
  m.def("optimal_alpha", &optimal_alpha, py::arg("lambda_"));
  m.def("lambda_objective", &lambda_objective, py::arg("lambda_"), py::arg("alpha"));
  m.def(
      "upper_bounds",
      [](double alpha, double mu) {
        const LineBounds b = upper_bounds(alpha, mu);
        return py::make_tuple(b.consistency, b.robustness);
      },
      py::arg("alpha"), py::arg("mu"));
  m.def(
      "frontier_line",
      [](const std::vector<double>& grid) { return curve_to_py(frontier_line(grid)); },
      py::arg("lambda_grid"));
  m.def(
      "normalized_cost",
      [](const std::vector<std::pair<double, bool>>& turns, double y) {
        return normalized_cost(turns_from_py(turns), y);
      },
      py::arg("turns"), py::arg("y"));
  m.def(
      "payoff_vs_density",
      [](const std::vector<std::pair<double, bool>>& turns, double anchor, double epsilon,
         double quadTol) {
        return payoff_vs_density(turns_from_py(turns), make_line_hider_density(anchor, epsilon),
                                 quadTol);
      },
      py::arg("turns"), py::arg("anchor"), py::arg("epsilon"), py::arg("quad_tol") = 1e-8);
  m.def("lower_bound_value", &lower_bound_value, py::arg("lambda_"), py::arg("epsilon"));
  m.def(
      "expected_ratio_biased",
      [](double alpha, double mu, double y, long trials, std::uint64_t seed) {
        return estimate_to_py(expected_ratio_biased({alpha, mu, true}, y, trials, seed));
      },
      py::arg("alpha"), py::arg("mu"), py::arg("y"), py::arg("trials") = 10000,
      py::arg("seed") = 1);

  // matrix games
  m.def(
      "solve_matrix_game",
      [](const std::vector<std::vector<double>>& payoff, double tol) {
        MatrixGame g;
        g.payoff = payoff;
        for (std::size_t i = 0; i < payoff.size(); ++i)
          g.rowLabels.push_back("r" + std::to_string(i));
        for (std::size_t j = 0; j < (payoff.empty() ? 0 : payoff.front().size()); ++j)
          g.colLabels.push_back("c" + std::to_string(j));
        const GameSolution sol = solve(g, tol);
        py::dict d;
        d["value"] = sol.value;
        d["row_mix"] = sol.rowMix;
        d["col_mix"] = sol.colMix;
        d["duality_gap"] = sol.dualityGap;
        return d;
      },
      py::arg("payoff"), py::arg("tol") = kDefaultTol);

  // Monte Carlo
  m.def(
      "estimate_cr_sstar",
      [](const BoxInstance& inst, double alpha, long trials, std::uint64_t seed) {
        const BoxCREstimate cr = estimate_CR_box(make_sstar_factory(inst, alpha), inst, trials,
                                                 seed);
        py::dict d;
        d["consistency"] = estimate_to_py(cr.consistencyHat);
        d["robustness"] = estimate_to_py(cr.robustnessHat);
        py::list perBox;
        for (const SimEstimate& e : cr.perBox) perBox.append(estimate_to_py(e));
        d["per_box"] = perBox;
        return d;
      },
      py::arg("instance"), py::arg("alpha"), py::arg("trials") = 10000, py::arg("seed") = 1);
  m.def(
      "estimate_cr_sk",
      [](const BoxInstance& inst, int k, double beta, long trials, std::uint64_t seed) {
        const BoxCREstimate cr = estimate_CR_box(make_sk_factory(inst, k, beta), inst, trials,
                                                 seed);
        py::dict d;
        d["consistency"] = estimate_to_py(cr.consistencyHat);
        d["robustness"] = estimate_to_py(cr.robustnessHat);
        py::list perBox;
        for (const SimEstimate& e : cr.perBox) perBox.append(estimate_to_py(e));
        d["per_box"] = perBox;
        return d;
      },
      py::arg("instance"), py::arg("k"), py::arg("beta"), py::arg("trials") = 10000,
      py::arg("seed") = 1);

  // verification
  m.def(
      "run_verification",
      [](const std::vector<std::string>& scopes, std::uint64_t seed) {
        VerifyOptions opt;
        opt.scopes = scopes;
        opt.seed = seed;
        py::list rows;
        for (const CheckResult& r : run_verification(opt)) {
          py::dict d;
          d["name"] = r.name;
          d["scope"] = r.scope;
          d["residual"] = r.residual;
          d["tolerance"] = r.tolerance;
          d["pass"] = r.pass;
          d["note"] = r.note;
          rows.append(d);
        }
        return rows;
      },
      py::arg("scopes") = std::vector<std::string>{}, py::arg("seed") = 20240817);
}
