// carasolve: integral-form solver and verifier for scalar ODEs y' = f(x, y)
// with discontinuous right-hand sides.
//
// Commands: solve, approx, verify, demo. Exit codes: 0 success/certified,
// 2 ran but non-certified (or candidate rejected), 1 runtime error, 64 usage.

#include <CLI11.hpp>

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "carasolve/errors.hpp"
#include "carasolve/io.hpp"
#include "carasolve/parallel.hpp"
#include "carasolve/random.hpp"
#include "carasolve/rhs.hpp"
#include "carasolve/scenarios.hpp"
#include "carasolve/solver.hpp"
#include "carasolve/step_grid.hpp"
#include "carasolve/subsolution.hpp"

namespace {

namespace fs = std::filesystem;
using namespace carasolve;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotCertified = 2;
constexpr int kExitUsage = 64;

struct CommonConfig {
  std::string rhs_name = "const";
  std::vector<double> params;
  double y0 = 0.0;
  std::vector<double> interval;  // lo hi
  std::size_t grid = 4096;
  double tol_iter = 1e-9;
  double tol_res = 1e-6;
  std::uint64_t seed = 12345;
  std::string out_dir = "out";
  std::string format = "json";
  bool force_heuristic = false;
};

void add_common_flags(CLI::App* cmd, CommonConfig& cfg, bool interval_required) {
  cmd->add_option("--rhs", cfg.rhs_name, "builtin right-hand side")
      ->check(CLI::IsMember(builtin_rhs_names()));
  cmd->add_option("--param", cfg.params, "builtin parameters (repeatable)");
  cmd->add_option("--y0", cfg.y0, "initial value at x = a");
  auto* iv = cmd->add_option("--interval", cfg.interval, "working interval: LO HI")->expected(2);
  if (interval_required) iv->required();
  cmd->add_option("--grid", cfg.grid, "partition cell count")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-iter", cfg.tol_iter, "iteration sup-norm tolerance");
  cmd->add_option("--tol-res", cfg.tol_res, "fixed-point residual tolerance");
  cmd->add_option("--seed", cfg.seed, "RNG seed for sampled inputs");
  cmd->add_option("--out", cfg.out_dir, "output directory");
  cmd->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("--force-heuristic", cfg.force_heuristic,
                "run the solver without the increasing+usc certificate");
}

void write_report(const CommonConfig& cfg, const std::string& stem, const nlohmann::json& j) {
  fs::create_directories(cfg.out_dir);
  if (cfg.format == "json") {
    io::write_text_file((fs::path(cfg.out_dir) / (stem + ".json")).string(), j.dump(2) + "\n");
  } else {
    io::write_text_file((fs::path(cfg.out_dir) / (stem + ".csv")).string(),
                        io::json_to_flat_csv(j));
  }
}

CauchyProblem build_problem(const CommonConfig& cfg) {
  return make_problem(builtin_rhs(cfg.rhs_name, cfg.params), cfg.interval.at(0),
                      cfg.interval.at(1), cfg.y0);
}

int run_solve(const CommonConfig& cfg) {
  CauchyProblem problem = build_problem(cfg);
  Partition partition = Partition::uniform(problem.a, problem.b, cfg.grid);

  SolveOptions opts;
  opts.tol_iter = cfg.tol_iter;
  opts.tol_res = cfg.tol_res;
  opts.force_heuristic = cfg.force_heuristic;
  opts.compute_minimal = problem.rhs.props.y_increasing;

  SolveResult result = solve_maximal(problem, partition, opts);
  write_report(cfg, "solve_result", io::to_json(result));

  CumulativeResult phi_cum = cumulative(problem.rhs.phi, partition);
  std::vector<double> lo_vals(partition.node_count());
  std::vector<double> hi_vals(partition.node_count());
  for (std::size_t j = 0; j < partition.node_count(); ++j) {
    lo_vals[j] = problem.y0 - phi_cum.fn.values()[j];
    hi_vals[j] = problem.y0 + phi_cum.fn.values()[j];
  }
  // Fixed schema; the minimal column reads "nan" when the upward iteration
  // was not run (heuristic mode).
  std::ostringstream csv;
  csv << "x,z0,minimal,envelope_lo,envelope_hi\n";
  for (std::size_t j = 0; j < partition.node_count(); ++j) {
    csv << io::format_double(partition.nodes()[j]) << ","
        << io::format_double(result.z0.values()[j]) << ","
        << (result.minimal ? io::format_double(result.minimal->values()[j]) : "nan") << ","
        << io::format_double(lo_vals[j]) << "," << io::format_double(hi_vals[j]) << "\n";
  }
  fs::create_directories(cfg.out_dir);
  io::write_text_file((fs::path(cfg.out_dir) / "trajectory.csv").string(), csv.str());

  for (const auto& note : result.notes) std::cerr << "note: " << note << "\n";
  std::cout << (result.certified ? "certified" : "NON-CERTIFIED")
            << ": iterations=" << result.iterations
            << " residual=" << result.fixed_point_residual << "\n";
  return result.certified ? kExitOk : kExitNotCertified;
}

int run_approx(const CommonConfig& cfg, std::size_t probes, double xval, std::vector<int> n_list) {
  Rhs rhs = builtin_rhs(cfg.rhs_name, cfg.params);
  double lo = cfg.interval.at(0);
  double hi = cfg.interval.at(1);

  Rng rng(cfg.seed);
  std::vector<std::pair<double, double>> points;
  points.reserve(probes);
  for (std::size_t i = 0; i < probes; ++i) {
    points.emplace_back(xval, rng.uniform(lo, hi));
  }
  std::sort(n_list.begin(), n_list.end());

  std::vector<ProbeRow> rows = convergence_probe(rhs, points, n_list, lo, hi);
  std::ostringstream csv;
  io::write_probe_csv(csv, rows);
  fs::create_directories(cfg.out_dir);
  io::write_text_file((fs::path(cfg.out_dir) / "convergence.csv").string(), csv.str());
  std::cout << "wrote " << rows.size() << " probe rows\n";
  return kExitOk;
}

int run_verify(const CommonConfig& cfg, const std::string& candidate_path,
               const std::string& column) {
  CauchyProblem problem = build_problem(cfg);
  std::ifstream in(candidate_path, std::ios::binary);
  if (!in) throw ConfigError("verify: cannot open candidate file " + candidate_path);
  GridFunction z = io::read_grid_function_csv(in, column);

  SubsolutionReport report = verify_subsolution(problem, z, cfg.tol_res);
  ResidualReport res = residual(problem, z);
  nlohmann::json j = io::to_json(report);
  j["residual"] = io::to_json(res);
  write_report(cfg, "verify_report", j);
  std::cout << (report.is_member ? "member" : "not a member")
            << " worst_margin=" << report.worst_margin << " residual=" << res.sup_residual
            << "\n";
  return report.is_member ? kExitOk : kExitNotCertified;
}

int run_demo(const CommonConfig& cfg, const std::string& which, int n0_max,
             std::vector<double> steps) {
  if (which == "sign") {
    DemoSignConfig dcfg;
    if (cfg.interval.size() == 2) {
      dcfg.x0 = cfg.interval[0];
      dcfg.length = cfg.interval[1] - cfg.interval[0];
    }
    dcfg.y0 = cfg.y0;
    dcfg.grid = cfg.grid;
    if (!steps.empty()) dcfg.steps = std::move(steps);
    NonexistenceReport report = demo_sign(dcfg);
    write_report(cfg, "demo_sign", io::to_json(report));

    if (dcfg.length > 0.0) {
      CauchyProblem problem =
          make_problem(builtin_rhs("grande_sign"), dcfg.x0, dcfg.x0 + dcfg.length, dcfg.y0);
      Partition partition = Partition::uniform(problem.a, problem.b, dcfg.grid);
      fs::create_directories(cfg.out_dir);
      for (double h : dcfg.steps) {
        GridFunction traj = euler(problem, h, partition);
        std::ostringstream csv;
        io::write_series_csv(csv, {"y"}, {&traj});
        io::write_text_file(
            (fs::path(cfg.out_dir) / ("candidate_euler_" + io::format_double(h) + ".csv"))
                .string(),
            csv.str());
      }
    }
    std::cout << report.verdict << "\n";
    return report_invariants_hold(report) ? kExitOk : kExitNotCertified;
  }
  if (which == "sin") {
    DemoSinConfig dcfg;
    if (cfg.interval.size() == 2) dcfg.length = cfg.interval[1] - cfg.interval[0];
    dcfg.grid = cfg.grid;
    dcfg.n0_max = n0_max;
    if (!steps.empty()) dcfg.steps = std::move(steps);
    NonexistenceReport report = demo_sin(dcfg);
    write_report(cfg, "demo_sin", io::to_json(report));

    if (dcfg.length > 0.0) {
      CauchyProblem problem = make_problem(builtin_rhs("grande_sin"), 0.0, dcfg.length, 0.0);
      Partition partition = Partition::uniform(problem.a, problem.b, dcfg.grid);
      fs::create_directories(cfg.out_dir);
      std::vector<double> ascent(partition.node_count());
      for (std::size_t j = 0; j < ascent.size(); ++j) ascent[j] = partition.nodes()[j];
      GridFunction ascent_fn(partition, std::move(ascent));
      std::ostringstream acsv;
      io::write_series_csv(acsv, {"y"}, {&ascent_fn});
      io::write_text_file((fs::path(cfg.out_dir) / "candidate_forced_ascent.csv").string(),
                          acsv.str());
      for (double h : dcfg.steps) {
        GridFunction traj = euler(problem, h, partition);
        std::ostringstream csv;
        io::write_series_csv(csv, {"y"}, {&traj});
        io::write_text_file(
            (fs::path(cfg.out_dir) / ("candidate_euler_" + io::format_double(h) + ".csv"))
                .string(),
            csv.str());
      }
    }
    std::cout << report.verdict << "\n";
    bool ok = report_invariants_hold(report) && report.all_positive_somewhere;
    return ok ? kExitOk : kExitNotCertified;
  }
  if (which == "positive") {
    DemoPositiveConfig dcfg;
    if (cfg.interval.size() == 2) {
      dcfg.a = cfg.interval[0];
      dcfg.b = cfg.interval[1];
    }
    PositiveReport report = demo_positive(cfg.rhs_name, dcfg);
    write_report(cfg, "demo_positive_" + cfg.rhs_name, io::to_json(report));

    fs::create_directories(cfg.out_dir);
    std::vector<std::string> names{"z0", "oracle"};
    std::vector<const GridFunction*> series{&report.z0, &report.oracle};
    if (report.minimal) {
      names.push_back("minimal");
      series.push_back(&*report.minimal);
    }
    std::ostringstream csv;
    io::write_series_csv(csv, names, series);
    io::write_text_file(
        (fs::path(cfg.out_dir) / ("demo_positive_" + cfg.rhs_name + ".csv")).string(), csv.str());

    std::cout << "max deviation vs oracle: " << report.max_dev_maximal << "\n";
    return report.certified ? kExitOk : kExitNotCertified;
  }
  throw ConfigError("demo: unknown scenario '" + which + "'");
}

}  // namespace

int main(int argc, char** argv) {
  parallel::configure_from_env();

  CLI::App app{"integral-form solutions of y' = f(x, y) with discontinuous right-hand sides"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --config appear after the subcommand name
  app.set_config("--config", "", "TOML config file; command-line flags take precedence");

  CommonConfig cfg;

  auto* solve_cmd = app.add_subcommand("solve", "maximal/minimal sub-solution solver")->configurable();
  add_common_flags(solve_cmd, cfg, /*interval_required=*/true);

  auto* approx_cmd = app.add_subcommand("approx", "step-approximation convergence table")->configurable();
  add_common_flags(approx_cmd, cfg, /*interval_required=*/true);
  std::size_t probes = 20;
  double xval = 0.0;
  std::vector<int> n_list = {4, 16, 64, 256, 1024};
  approx_cmd->add_option("--probes", probes, "number of sampled probe points");
  approx_cmd->add_option("--xval", xval, "x at which sections are probed");
  approx_cmd->add_option("--n-list", n_list, "approximation levels");

  auto* verify_cmd = app.add_subcommand("verify", "check a candidate CSV for membership")->configurable();
  add_common_flags(verify_cmd, cfg, /*interval_required=*/true);
  std::string candidate_path;
  std::string column;
  verify_cmd->add_option("--candidate", candidate_path, "candidate CSV (x,value)")->required();
  verify_cmd->add_option("--column", column, "value column name (default: first)");

  auto* demo_cmd = app.add_subcommand("demo", "scripted counterexamples and positive runs")->configurable();
  add_common_flags(demo_cmd, cfg, /*interval_required=*/false);
  std::string which;
  int n0_max = 3;
  std::vector<double> steps;
  demo_cmd->add_option("scenario", which, "sign | sin | positive")
      ->required()
      ->check(CLI::IsMember({"sign", "sin", "positive"}));
  demo_cmd->add_option("--n0-max", n0_max, "largest band index to search");
  demo_cmd->add_option("--steps", steps, "Euler step sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(cfg);
    if (approx_cmd->parsed()) return run_approx(cfg, probes, xval, n_list);
    if (verify_cmd->parsed()) return run_verify(cfg, candidate_path, column);
    if (demo_cmd->parsed()) return run_demo(cfg, which, n0_max, steps);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
