#include "searchgames/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace searchgames {

BoxInstance validate_instance(BoxInstance inst) {
  const int n = inst.n();
  if (n < 2) throw std::invalid_argument("instance needs at least 2 boxes");
  for (double t : inst.times) {
    if (!std::isfinite(t) || t <= 0.0) throw std::invalid_argument("nonpositive time");
  }
  if (!(inst.q > 0.0) || inst.q > 1.0 || !std::isfinite(inst.q)) {
    throw std::invalid_argument("detection probability q must lie in (0, 1]");
  }
  auto& pred = inst.prediction;
  std::sort(pred.begin(), pred.end());
  pred.erase(std::unique(pred.begin(), pred.end()), pred.end());
  for (int i : pred) {
    if (i < 0 || i >= n) throw std::invalid_argument("prediction index out of range");
  }
  if (pred.empty() || static_cast<int>(pred.size()) >= n) {
    throw std::invalid_argument("prediction must be proper subset of the boxes");
  }
  return inst;
}

std::vector<int> complement(const BoxInstance& inst) {
  std::vector<int> out;
  std::size_t p = 0;
  for (int i = 0; i < inst.n(); ++i) {
    if (p < inst.prediction.size() && inst.prediction[p] == i) {
      ++p;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

double subset_time(const std::vector<double>& times, const std::vector<int>& idx) {
  double s = 0.0;
  for (int i : idx) s += times.at(static_cast<std::size_t>(i));
  return s;
}

SubsetTotals subset_totals(const BoxInstance& inst) {
  SubsetTotals st;
  st.tH = subset_time(inst.times, inst.prediction);
  st.tHc = subset_time(inst.times, complement(inst));
  st.tY = st.tH + st.tHc;
  return st;
}

void validate_distribution(const DiscreteHiderDistribution& h) {
  double total = 0.0;
  for (double p : h.probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("hider distribution has a negative entry");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("hider distribution does not sum to 1");
  }
}

nlohmann::json params_to_json(const StrategyParams& params) {
  nlohmann::json j;
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, AlphaParams>) {
          j = {{"family", "alpha"}, {"alpha", p.alpha}};
        } else if constexpr (std::is_same_v<P, KBetaParams>) {
          j = {{"family", "kbeta"}, {"k", p.k}, {"beta", p.beta}};
        } else if constexpr (std::is_same_v<P, LineParams>) {
          j = {{"family", "line"}, {"alpha", p.alpha}, {"mu", p.mu}};
        } else {
          j = {{"family", "oracle"}, {"rowMix", p.rowMix}};
        }
      },
      params);
  return j;
}

StrategyParams params_from_json(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "alpha") return AlphaParams{j.at("alpha").get<double>()};
  if (family == "kbeta") return KBetaParams{j.at("k").get<int>(), j.at("beta").get<double>()};
  if (family == "line") return LineParams{j.at("alpha").get<double>(), j.at("mu").get<double>()};
  if (family == "oracle") return OracleParams{j.at("rowMix").get<std::vector<double>>()};
  throw std::invalid_argument("unknown strategy family: " + family);
}

void check_pareto_curve(const ParetoCurve& curve, double tol) {
  const auto& pts = curve.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].consistency > pts[i].robustness + tol) {
      throw std::invalid_argument("pareto curve point has consistency above robustness");
    }
    if (i > 0) {
      if (!(pts[i].consistency > pts[i - 1].consistency)) {
        throw std::invalid_argument("pareto curve consistency not strictly increasing");
      }
      if (!(pts[i].robustness < pts[i - 1].robustness)) {
        throw std::invalid_argument("pareto curve robustness not strictly decreasing");
      }
    }
  }
}

ParetoCurve make_pareto_curve(std::vector<ParetoPoint> points, double mergeTol) {
  std::sort(points.begin(), points.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
    if (a.consistency != b.consistency) return a.consistency < b.consistency;
    return a.robustness < b.robustness;
  });
  ParetoCurve curve;
  for (auto& p : points) {
    if (!curve.points.empty()) {
      const ParetoPoint& last = curve.points.back();
      const bool duplicate = std::abs(p.consistency - last.consistency) <= mergeTol &&
                             std::abs(p.robustness - last.robustness) <= mergeTol;
      if (duplicate) continue;
      // Sorted by consistency (ties by robustness), so p is dominated iff it
      // does not strictly improve robustness over the last kept point.
      if (p.robustness >= last.robustness - mergeTol) continue;
    }
    curve.points.push_back(std::move(p));
  }
  check_pareto_curve(curve, mergeTol);
  return curve;
}

nlohmann::json instance_to_json(const BoxInstance& inst) {
  return {{"times", inst.times}, {"q", inst.q}, {"prediction", inst.prediction}};
}

BoxInstance instance_from_json(const nlohmann::json& j) {
  BoxInstance inst;
  inst.times = j.at("times").get<std::vector<double>>();
  inst.q = j.value("q", 1.0);
  inst.prediction = j.at("prediction").get<std::vector<int>>();
  return validate_instance(std::move(inst));
}

}  // namespace searchgames
