#include "ghd/cli.hpp"

#include "ghd/ghd.hpp"
#include "ghd/io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>

namespace ghd::cli {

namespace {

using io::Json;

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string output;
  double tol = kMetricTolerance;
  std::uint64_t budget = SolverOptions{}.node_budget;
  bool require_exact = false;
  std::vector<double> ts;
  int steps = 0;
  io::InputFormat format = io::InputFormat::automatic;
  io::PointMetric metric = io::PointMetric::euclidean;
  std::vector<Index> set_a;
  std::vector<Index> set_b;
};

struct Failure {
  int code;
  Json body;
};

Failure failure(int code, const char* kind, const std::string& message) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  return {code, std::move(j)};
}

void emit(const RunConfig& cfg, const Json& j, std::ostream& out) {
  const std::string text = io::dump(j);
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
  } else {
    io::write_file(cfg.output, text);
  }
}

FiniteMetricSpace load(const RunConfig& cfg, std::size_t which) {
  return io::load_space(cfg.inputs.at(which), cfg.format, cfg.metric, cfg.tol);
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const auto raw = io::read_raw_space(cfg.inputs.at(0), cfg.format, cfg.metric);
  Json j;
  j["n"] = raw.dist.rows();
  if (auto v = find_violation(raw.dist, Axioms::metric, cfg.tol)) {
    j["valid"] = false;
    j["violation"] = io::to_json(*v);
    out << io::dump(j);
    return kValidationFailed;
  }
  const auto space = FiniteMetricSpace(raw.dist, raw.labels, cfg.tol);
  j["valid"] = true;
  j["diameter"] = diameter(space);
  j["labels"] = space.labels();
  out << io::dump(j);
  return kOk;
}

int cmd_hausdorff(const RunConfig& cfg, std::ostream& out) {
  const auto space = load(cfg, 0);
  const Subset a(space.size(), cfg.set_a);
  const Subset b(space.size(), cfg.set_b);
  Json j;
  j["A"] = a.indices();
  j["B"] = b.indices();
  j["one_sided_AB"] = one_sided(space, a, b);
  j["one_sided_BA"] = one_sided(space, b, a);
  j["value"] = hausdorff(space, a, b);
  emit(cfg, j, out);
  return kOk;
}

int cmd_gh(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto X = load(cfg, 0);
  const auto Y = load(cfg, 1);
  const auto result = gh_exact(X, Y, SolverOptions{cfg.budget});
  emit(cfg, io::to_json(result), out);
  if (cfg.require_exact && !result.exact) {
    err << io::dump(failure(kNotExact, "NotExact", "node budget exhausted before optimality was certified").body);
    return kNotExact;
  }
  return kOk;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const auto X = load(cfg, 0);
  const auto Y = load(cfg, 1);
  emit(cfg, io::to_json(gh_brute_force(X, Y)), out);
  return kOk;
}

int cmd_realize(const RunConfig& cfg, std::ostream& out) {
  const auto X = load(cfg, 0);
  const auto Y = load(cfg, 1);
  emit(cfg, io::to_json(realize(X, Y, SolverOptions{cfg.budget}, cfg.tol)), out);
  return kOk;
}

std::vector<double> grid(const RunConfig& cfg) {
  if (!cfg.ts.empty()) return cfg.ts;
  const int steps = cfg.steps > 0 ? cfg.steps : 4;
  std::vector<double> ts;
  for (int i = 0; i <= steps; ++i) ts.push_back(static_cast<double>(i) / steps);
  return ts;
}

int cmd_geodesic(const RunConfig& cfg, std::ostream& out) {
  const auto X = load(cfg, 0);
  const auto Y = load(cfg, 1);
  const auto curve = make_geodesic(X, Y, SolverOptions{cfg.budget});
  const auto ts = grid(cfg);

  const bool to_dir = !cfg.output.empty() && cfg.output != "-";
  if (to_dir) std::filesystem::create_directories(cfg.output);

  Json samples = Json::array();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto space = sample(curve, ts[i]);
    Json entry;
    entry["t"] = ts[i];
    if (to_dir) {
      char name[32];
      std::snprintf(name, sizeof name, "sample_%03zu.json", i);
      io::write_file(std::filesystem::path(cfg.output) / name, io::dump(io::to_json(space)));
      entry["file"] = name;
      entry["n"] = space.size();
    } else {
      entry["space"] = io::to_json(space);
    }
    samples.push_back(std::move(entry));
  }

  Json manifest;
  manifest["gh"] = curve.gh;
  manifest["witness"] = io::to_json(curve.R);
  manifest["ts"] = ts;
  manifest["samples"] = std::move(samples);
  const std::string text = io::dump(manifest);
  if (to_dir) io::write_file(std::filesystem::path(cfg.output) / "manifest.json", text);
  out << text;
  return kOk;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.command == "validate") return cmd_validate(cfg, out);
  if (cfg.command == "hausdorff") return cmd_hausdorff(cfg, out);
  if (cfg.command == "gh") return cmd_gh(cfg, out, err);
  if (cfg.command == "oracle") return cmd_oracle(cfg, out);
  if (cfg.command == "realize") return cmd_realize(cfg, out);
  if (cfg.command == "geodesic") return cmd_geodesic(cfg, out);
  throw std::logic_error("unknown command " + cfg.command);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Gromov-Hausdorff distances between finite metric spaces", "ghd"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--tol", cfg.tol, "Tolerance for symmetry and triangle-inequality checks")
      ->check(CLI::PositiveNumber);
  const std::map<std::string, io::InputFormat> formats{{"auto", io::InputFormat::automatic},
                                                       {"json", io::InputFormat::json},
                                                       {"csv", io::InputFormat::csv},
                                                       {"points", io::InputFormat::points}};
  app.add_option("--format", cfg.format, "Input format: auto, json, csv (matrix) or points (coordinate rows)")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->option_text("auto|json|csv|points");
  const std::map<std::string, io::PointMetric> metrics{{"euclidean", io::PointMetric::euclidean},
                                                       {"chebyshev", io::PointMetric::chebyshev}};
  app.add_option("--metric", cfg.metric, "Metric for point-cloud input")
      ->transform(CLI::CheckedTransformer(metrics, CLI::ignore_case))
      ->option_text("euclidean|chebyshev");

  auto* validate = app.add_subcommand("validate", "Check the metric axioms of a distance matrix");
  validate->add_option("file", cfg.inputs, "Space file")->required()->expected(1)->check(CLI::ExistingFile);

  auto* haus = app.add_subcommand("hausdorff", "Hausdorff distance between two index subsets of one space");
  haus->add_option("file", cfg.inputs, "Space file")->required()->expected(1)->check(CLI::ExistingFile);
  haus->add_option("--A", cfg.set_a, "Indices of the first subset")->required()->delimiter(',');
  haus->add_option("--B", cfg.set_b, "Indices of the second subset")->required()->delimiter(',');
  haus->add_option("-o,--output", cfg.output, "Output file (default: stdout)");

  auto add_pair = [&](CLI::App* sub) {
    sub->add_option("files", cfg.inputs, "Files of X and Y")->required()->expected(2)->check(CLI::ExistingFile);
    sub->add_option("-o,--output", cfg.output, "Output path (default: stdout)");
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", cfg.budget, "Search node budget")->check(CLI::PositiveNumber);
  };

  auto* gh = app.add_subcommand("gh", "Exact Gromov-Hausdorff distance with an optimal correspondence");
  add_pair(gh);
  add_budget(gh);
  gh->add_flag("--require-exact", cfg.require_exact, "Exit with status 2 if the budget runs out");

  auto* realize_cmd = app.add_subcommand("realize", "Common metric space realizing the GH distance");
  add_pair(realize_cmd);
  add_budget(realize_cmd);

  auto* geo = app.add_subcommand("geodesic", "Sample the shortest curve between two spaces");
  add_pair(geo);
  add_budget(geo);
  auto* ts_opt = geo->add_option("--ts", cfg.ts, "Parameter values in [0,1]")->delimiter(',')->check(CLI::Range(0.0, 1.0));
  geo->add_option("--steps", cfg.steps, "Uniform grid with this many steps")->check(CLI::PositiveNumber)->excludes(ts_opt);

  auto* oracle = app.add_subcommand("oracle", "GH distance by exhaustive enumeration of correspondences");
  add_pair(oracle);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  cfg.command = app.get_subcommands().front()->get_name();

  std::optional<Failure> fail;
  try {
    return dispatch(cfg, out, err);
  } catch (const MetricError& e) {
    fail = failure(kValidationFailed, "ValidationError", e.what());
    fail->body["violation"] = io::to_json(e.violation());
  } catch (const io::ParseError& e) {
    fail = failure(kParseFailed, "ParseError", e.what());
  } catch (const CapExceeded& e) {
    fail = failure(kCapExceeded, "CapExceeded", e.what());
  } catch (const NotExact& e) {
    fail = failure(kNotExact, "NotExact", e.what());
  } catch (const std::invalid_argument& e) {
    fail = failure(kValidationFailed, "ValidationError", e.what());
  } catch (const std::out_of_range& e) {
    fail = failure(kValidationFailed, "ValidationError", e.what());
  }
  err << io::dump(fail->body);
  return fail->code;
}

}  // namespace ghd::cli
