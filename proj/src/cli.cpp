#include "searchgames/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "searchgames/box_imperfect.hpp"
#include "searchgames/box_perfect.hpp"
#include "searchgames/core.hpp"
#include "searchgames/line_search.hpp"
#include "searchgames/matrix_game.hpp"
#include "searchgames/montecarlo.hpp"
#include "searchgames/verify.hpp"

namespace searchgames {
namespace {

using nlohmann::json;

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in list: " + csv);
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  for (double x : parse_doubles(csv)) {
    if (x != std::floor(x)) throw std::invalid_argument("expected integers: " + csv);
    out.push_back(static_cast<int>(x));
  }
  return out;
}

// start:stop:step, inclusive of stop up to half a step of slack.
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(std::stod(item));
  if (parts.size() != 3) throw std::invalid_argument("grid must be start:stop:step: " + spec);
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (!(step > 0.0) || stop < start) throw std::invalid_argument("bad grid: " + spec);
  std::vector<double> out;
  for (double x = start; x <= stop + step / 2; x += step) out.push_back(x);
  return out;
}

struct InstanceFlags {
  std::string times, pred, file;
  double q = 1.0;
  bool qSet = false;

  void attach(CLI::App* cmd, bool withQ) {
    cmd->add_option("--times", times, "comma-separated box opening times");
    cmd->add_option("--pred", pred, "comma-separated predicted box indices (0-based)");
    cmd->add_option("--instance", file, "JSON instance file (alternative to --times/--pred)");
    if (withQ) {
      cmd->add_option("--q", q, "per-look detection probability")->check([this](const std::string&) {
        qSet = true;
        return std::string();
      });
    }
  }

  BoxInstance build() const {
    if (!file.empty()) {
      if (!times.empty() || !pred.empty()) {
        throw std::invalid_argument("--instance excludes --times/--pred");
      }
      std::ifstream in(file);
      if (!in) throw std::invalid_argument("cannot open instance file: " + file);
      json j = json::parse(in);
      BoxInstance inst = instance_from_json(j);
      if (qSet) inst.q = q;
      return validate_instance(std::move(inst));
    }
    if (times.empty() || pred.empty()) {
      throw std::invalid_argument("provide --times and --pred, or --instance");
    }
    BoxInstance inst;
    inst.times = parse_doubles(times);
    inst.prediction = parse_ints(pred);
    inst.q = q;
    return validate_instance(std::move(inst));
  }
};

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    out += ch;
    if (ch == '"') out += '"';
  }
  out += '"';
  return out;
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string curve_to_csv(const ParetoCurve& curve) {
  std::string out = "consistency,robustness,params\n";
  for (const ParetoPoint& p : curve.points) {
    out += format_double(p.consistency) + "," + format_double(p.robustness) + "," +
           csv_quote(params_to_json(p.params).dump()) + "\n";
  }
  return out;
}

json curve_to_table(const ParetoCurve& curve) {
  json rows = json::array();
  for (const ParetoPoint& p : curve.points) {
    rows.push_back({{"consistency", p.consistency},
                    {"robustness", p.robustness},
                    {"params", params_to_json(p.params)}});
  }
  return rows;
}

struct ReportSink {
  std::string commandEcho;
  std::optional<json> instanceEcho;
  json table = json::array();
  json extras = json::object();
  std::vector<std::string> warnings;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  json report() const {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json j{{"command", commandEcho},
           {"table", table},
           {"warnings", warnings},
           {"wallTimeSeconds", wall}};
    j["instance"] = instanceEcho ? *instanceEcho : json(nullptr);
    for (auto& [k, v] : extras.items()) j[k] = v;
    return j;
  }
};

void emit(const std::string& payload, const std::string& outFile, std::ostream& out) {
  if (outFile.empty()) {
    out << payload;
    if (!payload.empty() && payload.back() != '\n') out << '\n';
    return;
  }
  std::ofstream f(outFile);
  if (!f) throw std::invalid_argument("cannot write output file: " + outFile);
  f << payload;
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (const std::string& a : args) {
    if (!s.empty()) s += ' ';
    s += a;
  }
  return s;
}

// Default oracle sweep: log-spaced weights straddling every t(H^c)/t(H)
// ratio reachable by small instances, so both frontier endpoints appear.
std::vector<double> default_oracle_grid() {
  return {1e-3, 1e-2, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 10.0, 100.0, 1e3};
}

int cmd_frontier(const std::string& game, const InstanceFlags& flags, int kmax,
                 int pointsPerSegment, int points, const std::string& lambdaGrid,
                 const std::string& format, const std::string& outFile,
                 const std::string& echo, std::ostream& out) {
  ReportSink sink;
  sink.commandEcho = echo;
  ParetoCurve curve;
  if (game == "box-perfect") {
    const BoxInstance inst = flags.build();
    if (inst.q < 1.0) {
      throw std::invalid_argument(
          "box-perfect requires q = 1; use `frontier box-imperfect` for q < 1");
    }
    sink.instanceEcho = instance_to_json(inst);
    const PerfectFrontier f = frontier_perfect(inst, points);
    curve = f.curve;
    sink.extras["segment"] = {{"cMin", f.segment.cMin},
                              {"cMax", f.segment.cMax},
                              {"coefC", f.segment.coefC},
                              {"coefR", f.segment.coefR},
                              {"rhs", f.segment.rhs}};
  } else if (game == "box-imperfect") {
    const BoxInstance inst = flags.build();
    if (inst.q >= 1.0) {
      throw std::invalid_argument(
          "box-imperfect requires q < 1; use `frontier box-perfect` for q = 1");
    }
    sink.instanceEcho = instance_to_json(inst);
    const ImperfectFrontier f = frontier_imperfect(inst, kmax, pointsPerSegment);
    curve = f.curve;
    json segs = json::array();
    for (const ImperfectFrontierSegment& s : f.segments) {
      segs.push_back({{"k", s.k},
                      {"cLo", s.cLo},
                      {"cHi", s.cHi},
                      {"coefC", s.coefC},
                      {"coefR", s.coefR},
                      {"rhs", s.rhs}});
    }
    sink.extras["segments"] = segs;
    sink.extras["uncovered"] = {{"lo", f.uncoveredLo}, {"hi", f.uncoveredHi}};
  } else if (game == "line") {
    curve = frontier_line(parse_grid(lambdaGrid));
  } else {
    throw std::invalid_argument("unknown game: " + game +
                                " (expected box-perfect, box-imperfect, or line)");
  }
  sink.table = curve_to_table(curve);
  emit(format == "csv" ? curve_to_csv(curve) : sink.report().dump(2), outFile, out);
  return 0;
}

int cmd_oracle(const InstanceFlags& flags, const std::string& lambdaGrid,
               const std::string& format, const std::string& outFile, const std::string& echo,
               std::ostream& out) {
  ReportSink sink;
  sink.commandEcho = echo;
  const BoxInstance inst = flags.build();
  if (inst.q < 1.0) throw std::invalid_argument("the exhaustive oracle requires q = 1");
  sink.instanceEcho = instance_to_json(inst);

  const PredictedMatrixGame pg = permutation_matrix_game(inst);
  const std::vector<double> grid =
      lambdaGrid.empty() ? default_oracle_grid() : parse_grid(lambdaGrid);
  const FrontierTrace trace = trace_frontier(pg, grid, 1e-7);
  sink.warnings = trace.warnings;

  const PerfectFrontier closed = frontier_perfect(inst, 2);
  double maxDeviation = 0.0;
  for (const ParetoPoint& p : trace.curve.points) {
    maxDeviation = std::max(maxDeviation,
                            std::abs(closed.segment.coefC * p.consistency +
                                     closed.segment.coefR * p.robustness - closed.segment.rhs));
  }
  auto endpointGap = [&](const ParetoPoint& target) {
    double best = std::numeric_limits<double>::infinity();
    for (const ParetoPoint& p : trace.curve.points) {
      best = std::min(best, std::max(std::abs(p.consistency - target.consistency),
                                     std::abs(p.robustness - target.robustness)));
    }
    return best;
  };
  sink.table = curve_to_table(trace.curve);
  sink.extras["maxDeviation"] = maxDeviation;
  sink.extras["leftEndpointGap"] = endpointGap(closed.curve.points.front());
  sink.extras["rightEndpointGap"] = endpointGap(closed.curve.points.back());

  emit(format == "csv" ? curve_to_csv(trace.curve) : sink.report().dump(2), outFile, out);
  return 0;
}

int cmd_verify(const std::vector<std::string>& scopes, std::uint64_t seed,
               const std::string& format, const std::string& outFile, const std::string& echo,
               std::ostream& out) {
  ReportSink sink;
  sink.commandEcho = echo;
  VerifyOptions opt;
  opt.scopes = scopes;
  opt.seed = seed;
  const std::vector<CheckResult> results = run_verification(opt);
  std::string lines;
  for (const CheckResult& r : results) {
    sink.table.push_back({{"name", r.name},
                          {"scope", r.scope},
                          {"residual", r.residual},
                          {"tolerance", r.tolerance},
                          {"pass", r.pass},
                          {"note", r.note}});
    lines += std::string(r.pass ? "[PASS] " : "[FAIL] ") + r.scope + "/" + r.name +
             " residual=" + format_double(r.residual) +
             " tol=" + format_double(r.tolerance) + (r.note.empty() ? "" : " (" + r.note + ")") +
             "\n";
  }
  const bool ok = all_passed(results);
  sink.extras["allPassed"] = ok;
  emit(format == "json" ? sink.report().dump(2) : lines, outFile, out);
  return ok ? 0 : 1;
}

int cmd_simulate(const std::string& game, const InstanceFlags& flags, double alpha, int k,
                 double beta, double mu, const std::string& yList, long trials,
                 std::uint64_t seed, const std::string& format, const std::string& outFile,
                 const std::string& echo, std::ostream& out) {
  ReportSink sink;
  sink.commandEcho = echo;
  std::string csv;
  if (game == "line") {
    if (yList.empty()) throw std::invalid_argument("line simulation needs --y");
    if (!(alpha > 1.0)) throw std::invalid_argument("line simulation needs --alpha > 1");
    const BiasedGeometricStrategy s{alpha, mu, true};
    csv = "y,mean,stderr\n";
    for (double y : parse_doubles(yList)) {
      const SimEstimate e = expected_ratio_biased(s, y, trials, seed);
      sink.table.push_back({{"y", y}, {"mean", e.mean}, {"stderr", e.standardError}});
      csv += format_double(y) + "," + format_double(e.mean) + "," +
             format_double(e.standardError) + "\n";
    }
  } else if (game == "box-perfect" || game == "box-imperfect") {
    const BoxInstance inst = flags.build();
    sink.instanceEcho = instance_to_json(inst);
    BoxSamplerFactory factory;
    if (game == "box-perfect") {
      if (inst.q < 1.0) {
        throw std::invalid_argument(
            "box-perfect requires q = 1; use `simulate box-imperfect` for q < 1");
      }
      if (std::isnan(alpha)) throw std::invalid_argument("box-perfect simulation needs --alpha");
      factory = make_sstar_factory(inst, alpha);
    } else {
      if (inst.q >= 1.0) {
        throw std::invalid_argument(
            "box-imperfect requires q < 1; use `simulate box-perfect` for q = 1");
      }
      if (k < 0 || std::isnan(beta)) {
        throw std::invalid_argument("box-imperfect simulation needs --k and --beta");
      }
      factory = make_sk_factory(inst, k, beta);
    }
    const BoxCREstimate cr = estimate_CR_box(factory, inst, trials, seed);
    csv = "box,mean,stderr\n";
    for (std::size_t b = 0; b < cr.perBox.size(); ++b) {
      sink.table.push_back({{"box", b},
                            {"mean", cr.perBox[b].mean},
                            {"stderr", cr.perBox[b].standardError}});
      csv += std::to_string(b) + "," + format_double(cr.perBox[b].mean) + "," +
             format_double(cr.perBox[b].standardError) + "\n";
    }
    sink.extras["consistencyHat"] = {{"mean", cr.consistencyHat.mean},
                                     {"stderr", cr.consistencyHat.standardError},
                                     {"box", cr.argmaxPredicted}};
    sink.extras["robustnessHat"] = {{"mean", cr.robustnessHat.mean},
                                    {"stderr", cr.robustnessHat.standardError},
                                    {"box", cr.argmaxAll}};
  } else {
    throw std::invalid_argument("unknown game: " + game);
  }
  sink.extras["trials"] = trials;
  sink.extras["seed"] = seed;
  emit(format == "csv" ? csv : sink.report().dump(2), outFile, out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"consistency/robustness tradeoffs for search games with predictions"};
  app.require_subcommand(1);
  const std::string echo = join_args(args);

  // frontier
  auto* frontier = app.add_subcommand("frontier", "tradeoff curve of a game family");
  std::string fGame;
  frontier->add_option("game", fGame, "box-perfect | box-imperfect | line")->required();
  InstanceFlags fFlags;
  fFlags.attach(frontier, true);
  int kmax = 10, pointsPerSegment = 9, points = 11;
  std::string fGrid = "0.1:0.9:0.1", fFormat = "csv", fOut;
  frontier->add_option("--kmax", kmax, "largest pass count (box-imperfect)");
  frontier->add_option("--points-per-segment", pointsPerSegment, "curve resolution per segment");
  frontier->add_option("--points", points, "curve resolution (box-perfect)");
  frontier->add_option("--lambda-grid", fGrid, "start:stop:step weights (line)");
  frontier->add_option("--format", fFormat, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  frontier->add_option("-o,--output", fOut, "write to file instead of stdout");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exhaustive matrix-game cross-check (q = 1)");
  InstanceFlags oFlags;
  oFlags.attach(oracle, false);
  std::string oGrid, oFormat = "json", oOut;
  oracle->add_option("--lambda-grid", oGrid, "start:stop:step robustness weights");
  oracle->add_option("--format", oFormat, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  oracle->add_option("-o,--output", oOut, "write to file instead of stdout");

  // verify
  auto* verify = app.add_subcommand("verify", "run the self-check suites");
  std::vector<std::string> scopes;
  std::uint64_t vSeed = 20240817;
  std::string vFormat = "text", vOut;
  verify->add_option("--scope", scopes,
                     "core | matrix-game | box-perfect | box-imperfect | line | montecarlo");
  verify->add_option("--seed", vSeed, "randomness seed");
  verify->add_option("--format", vFormat, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_option("-o,--output", vOut, "write to file instead of stdout");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo strategy estimates");
  std::string sGame;
  simulate->add_option("game", sGame, "box-perfect | box-imperfect | line")->required();
  InstanceFlags sFlags;
  sFlags.attach(simulate, true);
  double alpha = std::nan(""), beta = std::nan(""), mu = 1.0;
  int k = -1;
  std::string yList, sFormat = "csv", sOut;
  long trials = 10000;
  std::uint64_t sSeed = 1;
  simulate->add_option("--alpha", alpha, "mixing weight (box-perfect) or base (line)");
  simulate->add_option("--k", k, "pass count (box-imperfect)");
  simulate->add_option("--beta", beta, "mixing weight (box-imperfect)");
  simulate->add_option("--mu", mu, "bias (line)");
  simulate->add_option("--y", yList, "comma-separated hider positions (line)");
  simulate->add_option("--trials", trials, "Monte-Carlo trials");
  simulate->add_option("--seed", sSeed, "randomness seed");
  simulate->add_option("--format", sFormat, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("-o,--output", sOut, "write to file instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (frontier->parsed()) {
      return cmd_frontier(fGame, fFlags, kmax, pointsPerSegment, points, fGrid, fFormat, fOut,
                          echo, out);
    }
    if (oracle->parsed()) return cmd_oracle(oFlags, oGrid, oFormat, oOut, echo, out);
    if (verify->parsed()) return cmd_verify(scopes, vSeed, vFormat, vOut, echo, out);
    if (simulate->parsed()) {
      return cmd_simulate(sGame, sFlags, alpha, k, beta, mu, yList, trials, sSeed, sFormat, sOut,
                          echo, out);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace searchgames
