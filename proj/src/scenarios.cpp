#include "carasolve/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "carasolve/errors.hpp"

namespace carasolve {

namespace {

std::string format_step(double h) {
  std::ostringstream os;
  os << "euler h=" << h;
  return os.str();
}

// Linear-interpolated crossing of `level` inside cell j of y.
double crossing_x(const GridFunction& y, std::size_t j, double level) {
  const auto& xs = y.partition().nodes();
  double v0 = y.values()[j];
  double v1 = y.values()[j + 1];
  if (v1 == v0) return xs[j];
  double s = (level - v0) / (v1 - v0);
  return xs[j] + s * (xs[j + 1] - xs[j]);
}

// Residuals for a family of candidates, parallel over candidates with an
// index-ordered result vector.
std::vector<CandidateResidual> candidate_residuals(
    const CauchyProblem& problem, const std::vector<std::pair<std::string, GridFunction>>& cands,
    double cell_tol) {
  std::vector<CandidateResidual> out(cands.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(cands.size()); ++i) {
    ResidualReport r = residual(problem, cands[i].second, cell_tol);
    out[i] = {cands[i].first, r.sup_residual, r.argmax_x};
  }
  return out;
}

}  // namespace

NonexistenceReport demo_sign(const DemoSignConfig& config) {
  NonexistenceReport report;
  report.rhs_name = "grande_sign";
  report.x0 = config.x0;
  report.y0 = config.y0;
  report.step_sizes = config.steps;

  if (config.length == 0.0) {
    report.chatter_confined = true;
    report.verdict = "vacuous: empty interval";
    return report;
  }

  Rhs rhs = builtin_rhs("grande_sign");
  CauchyProblem problem =
      make_problem(rhs, config.x0, config.x0 + config.length, config.y0);
  Partition partition = Partition::uniform(problem.a, problem.b, config.grid);

  // Pointwise limit of the Euler family: |slope| = 1 toward the switching
  // level, then flat on it.
  std::vector<double> limit_vals(partition.node_count());
  for (std::size_t j = 0; j < partition.node_count(); ++j) {
    double t = partition.nodes()[j] - config.x0;
    double mag = std::max(std::fabs(config.y0) - t, 0.0);
    limit_vals[j] = config.y0 < 0.0 ? -mag : mag;
  }
  GridFunction limit_candidate(partition, std::move(limit_vals));

  std::vector<std::pair<std::string, GridFunction>> candidates;
  candidates.emplace_back("pointwise_limit", limit_candidate);

  report.chatter_confined = true;
  GridFunction finest = limit_candidate;  // replaced below
  for (double h : config.steps) {
    GridFunction raw = euler(problem, h);
    // Once a node lands within h of the switching level it must stay there.
    bool entered = false;
    for (std::size_t j = 0; j < raw.values().size(); ++j) {
      double v = raw.values()[j];
      if (!entered && v >= -h && v <= h) entered = true;
      if (entered && !(v >= -h && v <= h)) report.chatter_confined = false;
    }
    if (config.y0 == 0.0 && !raw.values().empty()) {
      // Exact two-cycle from y0 = 0: nodes after the first must sit in [0, h].
      for (std::size_t j = 1; j < raw.values().size(); ++j) {
        double v = raw.values()[j];
        if (!(v >= 0.0 && v <= h)) report.chatter_confined = false;
      }
    }
    GridFunction resampled = raw.resampled(partition);
    if (h == *std::min_element(config.steps.begin(), config.steps.end())) {
      finest = resampled;
    }
    candidates.emplace_back(format_step(h), std::move(resampled));
  }
  report.euler_limit_deviation =
      config.steps.empty() ? 0.0 : sup_diff(finest, limit_candidate);

  report.residual_by_candidate = candidate_residuals(problem, candidates, config.cell_tol);

  // Components of {x : limit candidate != 0}: the open set G of the zero-set
  // decomposition, with interpolated endpoints.
  const auto& vals = limit_candidate.values();
  const auto& xs = partition.nodes();
  bool inside = vals[0] != 0.0;
  double comp_start = xs[0];
  for (std::size_t j = 0; j + 1 < vals.size(); ++j) {
    bool next_inside = vals[j + 1] != 0.0;
    if (!inside && next_inside) {
      comp_start = crossing_x(limit_candidate, j, 0.0);
      inside = true;
    } else if (inside && !next_inside) {
      report.nonzero_components.push_back({comp_start, crossing_x(limit_candidate, j, 0.0)});
      inside = false;
    }
  }
  if (inside) report.nonzero_components.push_back({comp_start, xs.back()});

  double min_res = report.residual_by_candidate.front().sup_residual;
  for (const auto& c : report.residual_by_candidate) min_res = std::min(min_res, c.sup_residual);
  report.min_candidate_residual = min_res;

  std::ostringstream verdict;
  verdict << "no candidate in the tested family is a solution; residual >= " << min_res;
  report.verdict = verdict.str();
  return report;
}

NonexistenceReport demo_sin(const DemoSinConfig& config) {
  NonexistenceReport report;
  report.rhs_name = "grande_sin";
  report.step_sizes = config.steps;

  if (!(config.length > 0.0)) {
    report.verdict = "vacuous: empty interval";
    report.chatter_confined = true;
    report.all_positive_somewhere = true;
    return report;
  }

  Rhs rhs = builtin_rhs("grande_sin");
  CauchyProblem problem = make_problem(rhs, 0.0, config.length, 0.0);
  Partition partition = Partition::uniform(problem.a, problem.b, config.grid);

  std::vector<std::pair<std::string, GridFunction>> candidates;

  // The integral equation forces y(x) = x while y <= 0; include that ascent
  // as the hypothetical candidate that does climb through the bands.
  {
    std::vector<double> vals(partition.node_count());
    for (std::size_t j = 0; j < vals.size(); ++j) vals[j] = partition.nodes()[j];
    candidates.emplace_back("forced_ascent", GridFunction(partition, std::move(vals)));
  }

  report.all_positive_somewhere = true;
  for (double h : config.steps) {
    GridFunction raw = euler(problem, h);
    double top = *std::max_element(raw.values().begin(), raw.values().end());
    if (!(top > 0.0)) report.all_positive_somewhere = false;
    candidates.emplace_back(format_step(h), raw.resampled(partition));
  }
  report.chatter_confined = true;  // not the subject of this demo

  report.residual_by_candidate = candidate_residuals(problem, candidates, config.cell_tol);

  // Band-event detection per candidate and band index.
  for (const auto& [label, y] : candidates) {
    for (int n0 = 1; n0 <= config.n0_max; ++n0) {
      double level_lo = 1.0 / (2.0 * n0);
      double level_hi = 1.0 / (2.0 * n0 - 1.0);
      const auto& vals = y.values();

      // First node strictly above the band.
      std::size_t above = vals.size();
      for (std::size_t j = 0; j < vals.size(); ++j) {
        if (vals[j] > level_hi) {
          above = j;
          break;
        }
      }
      if (above == vals.size()) continue;

      // Last crossing of level_lo before it, then the first crossing of
      // level_hi afterwards: the maximal a / minimal b pair.
      std::size_t a_cell = vals.size();
      for (std::size_t j = above; j-- > 0;) {
        if ((vals[j] - level_lo) * (vals[j + 1] - level_lo) <= 0.0) {
          a_cell = j;
          break;
        }
      }
      if (a_cell == vals.size()) continue;
      double a_x = crossing_x(y, a_cell, level_lo);

      std::size_t b_cell = vals.size();
      for (std::size_t j = a_cell; j < above; ++j) {
        if ((vals[j] - level_hi) * (vals[j + 1] - level_hi) <= 0.0) {
          b_cell = j;
          break;
        }
      }
      if (b_cell == vals.size()) continue;
      double b_x = crossing_x(y, b_cell, level_hi);
      if (!(a_x < b_x)) continue;

      // The maximal-a / minimal-b construction keeps the candidate inside
      // the band on (a, b); verify rather than assume.
      bool contained = true;
      const auto& xs = y.partition().nodes();
      for (std::size_t j = a_cell + 1; j <= b_cell && contained; ++j) {
        if (xs[j] <= a_x || xs[j] >= b_x) continue;
        contained = vals[j] >= level_lo - 1e-9 && vals[j] <= level_hi + 1e-9;
      }
      if (!contained) continue;

      RealFn along = [&](double t) { return problem.rhs.eval(t, y.eval(t)); };
      IntegrateResult integral = integrate(along, a_x, b_x, config.cell_tol);

      BandEvent event;
      event.n0 = n0;
      event.a = a_x;
      event.b = b_x;
      event.y_a = y.eval(a_x);
      event.y_b = y.eval(b_x);
      event.integral = integral.value;
      event.integral_err = integral.err_estimate;
      event.residual_lb = (event.y_b - event.y_a) - integral.value;
      event.candidate = label;
      report.band_events.push_back(event);
    }
  }

  double min_res = report.residual_by_candidate.front().sup_residual;
  for (const auto& c : report.residual_by_candidate) min_res = std::min(min_res, c.sup_residual);
  report.min_candidate_residual = min_res;

  std::ostringstream verdict;
  if (report.band_events.empty()) {
    verdict << "trajectory trapped below bands; residual >= " << min_res;
  } else {
    verdict << "no candidate in the tested family is a solution; residual >= " << min_res
            << " with " << report.band_events.size() << " band event(s)";
  }
  report.verdict = verdict.str();
  return report;
}

bool report_invariants_hold(const NonexistenceReport& report) {
  for (const auto& c : report.residual_by_candidate) {
    if (!(c.sup_residual >= 0.0)) return false;
  }
  for (const auto& e : report.band_events) {
    double level_lo = 1.0 / (2.0 * e.n0);
    double level_hi = 1.0 / (2.0 * e.n0 - 1.0);
    if (!(e.a < e.b)) return false;
    if (std::fabs(e.y_a - level_lo) > 1e-6 || std::fabs(e.y_b - level_hi) > 1e-6) return false;
  }
  if (!report.chatter_confined) return false;
  return true;
}

namespace oracles {

double StepEventSolution::eval(double x) const {
  if (x <= xs.front()) return ys.front();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
  if (i + 1 == xs.size()) i -= 1;
  return ys[i] + slopes[i] * (x - xs[i]);
}

StepEventSolution floor_trajectory(double y0, double a, double b, double clamp_bound) {
  if (!(std::floor(y0) >= 1.0)) {
    throw ConfigError("floor_trajectory: oracle covers ascending starts with floor(y0) >= 1");
  }
  StepEventSolution sol;
  double t = a;
  double y = y0;
  sol.xs.push_back(t);
  sol.ys.push_back(y);
  while (t < b) {
    double slope = std::min(std::floor(y), clamp_bound);
    sol.slopes.push_back(slope);
    double next_level = std::floor(y) + 1.0;
    if (slope >= clamp_bound) {
      // Clamp active: constant slope to the end.
      sol.xs.push_back(b);
      sol.ys.push_back(y + slope * (b - t));
      break;
    }
    double t_event = t + (next_level - y) / slope;
    if (t_event >= b) {
      sol.xs.push_back(b);
      sol.ys.push_back(y + slope * (b - t));
      break;
    }
    t = t_event;
    y = next_level;
    sol.xs.push_back(t);
    sol.ys.push_back(y);
  }
  return sol;
}

double const_solution(double c, double y0, double a, double x) { return y0 + c * (x - a); }

double linear_solution(double y0, double a, double x) { return y0 * std::exp(x - a); }

double sqrt_plus_maximal(double y0, double a, double x) {
  double root = std::sqrt(std::max(y0, 0.0)) + (x - a);
  return root * root;
}

double sqrt_plus_minimal(double y0, double a, double x) {
  if (y0 == 0.0) return 0.0;
  return sqrt_plus_maximal(y0, a, x);  // positive starts have a unique flow
}

}  // namespace oracles

PositiveReport demo_positive(const std::string& name, const DemoPositiveConfig& config) {
  double y0;
  double a;
  double b;
  std::size_t grid;
  std::vector<double> params;

  if (name == "const") {
    y0 = 0.0, a = 0.0, b = 1.0, grid = 2048;
    params = {1.0};
  } else if (name == "floor") {
    y0 = 1.0, a = 0.0, b = 11.0 / 6.0, grid = 4400;  // nodes land on x = 1 and x = 3/2
  } else if (name == "sqrt_plus") {
    y0 = 0.0, a = 0.0, b = 1.0, grid = 4096;
  } else if (name == "linear") {
    y0 = 1.0, a = 0.0, b = 1.0, grid = 8192;
  } else {
    throw ConfigError("demo_positive: unknown builtin '" + name + "'");
  }
  if (config.y0) y0 = *config.y0;
  if (config.a) a = *config.a;
  if (config.b) b = *config.b;
  if (config.grid) grid = *config.grid;

  Rhs rhs = builtin_rhs(name, params);
  CauchyProblem problem = make_problem(rhs, a, b, y0);
  Partition partition = Partition::uniform(a, b, grid);

  SolveOptions opts;
  opts.compute_minimal = true;
  SolveResult solved = solve_maximal(problem, partition, opts);

  std::vector<double> oracle_vals(partition.node_count());
  std::vector<double> oracle_min_vals(partition.node_count());
  bool has_min_oracle = true;
  if (name == "const") {
    for (std::size_t j = 0; j < oracle_vals.size(); ++j) {
      oracle_vals[j] = oracles::const_solution(params[0], y0, a, partition.nodes()[j]);
    }
    oracle_min_vals = oracle_vals;
  } else if (name == "floor") {
    auto traj = oracles::floor_trajectory(y0, a, b);
    for (std::size_t j = 0; j < oracle_vals.size(); ++j) {
      oracle_vals[j] = traj.eval(partition.nodes()[j]);
    }
    oracle_min_vals = oracle_vals;
  } else if (name == "sqrt_plus") {
    for (std::size_t j = 0; j < oracle_vals.size(); ++j) {
      oracle_vals[j] = oracles::sqrt_plus_maximal(y0, a, partition.nodes()[j]);
      oracle_min_vals[j] = oracles::sqrt_plus_minimal(y0, a, partition.nodes()[j]);
    }
  } else {  // linear
    for (std::size_t j = 0; j < oracle_vals.size(); ++j) {
      oracle_vals[j] = oracles::linear_solution(y0, a, partition.nodes()[j]);
    }
    oracle_min_vals = oracle_vals;
  }

  GridFunction oracle(partition, std::move(oracle_vals));
  PositiveReport report{name,
                        sup_diff(solved.z0, oracle),
                        std::nullopt,
                        std::nullopt,
                        solved.fixed_point_residual,
                        solved.quad_err,
                        solved.iterations,
                        solved.certified,
                        solved.z0,
                        solved.minimal,
                        oracle};
  if (solved.minimal && has_min_oracle) {
    GridFunction oracle_min(partition, std::move(oracle_min_vals));
    report.max_dev_minimal = sup_diff(*solved.minimal, oracle_min);
    report.gap_at_b =
        solved.z0.values().back() - solved.minimal->values().back();
  }
  return report;
}

}  // namespace carasolve
