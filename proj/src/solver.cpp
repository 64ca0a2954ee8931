#include "carasolve/solver.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "carasolve/errors.hpp"

namespace carasolve {

namespace {

struct Envelopes {
  GridFunction w;   // y0 - int phi
  GridFunction w0;  // y0 + int phi
  double band_lo;
  double band_hi;
  double phi_err;
};

Envelopes make_envelopes(const CauchyProblem& problem, const Partition& partition,
                         double cell_tol) {
  CumulativeResult phi_cum = cumulative(problem.rhs.phi, partition, cell_tol);
  std::vector<double> lo(partition.node_count());
  std::vector<double> hi(partition.node_count());
  for (std::size_t j = 0; j < partition.node_count(); ++j) {
    double v = phi_cum.fn.values()[j];
    if (v < 0.0) v = 0.0;  // phi >= 0 expected; guard against quadrature dust
    lo[j] = problem.y0 - v;
    hi[j] = problem.y0 + v;
  }
  double band = std::max(0.0, phi_cum.fn.values().back());
  return {GridFunction(partition, std::move(lo)), GridFunction(partition, std::move(hi)),
          problem.y0 - band, problem.y0 + band, phi_cum.err_total};
}

// Iterates live in the envelope cone [w(x), w0(x)]. With increasing sections,
// |f(x, .)| over that range is extremal at the two edges, so checking the
// edges at every node is an exact domination audit of what the solver will
// actually evaluate.
std::size_t domination_violations(const CauchyProblem& problem, const Envelopes& env) {
  std::size_t bad = 0;
  const auto& xs = env.w.partition().nodes();
  for (std::size_t j = 0; j < xs.size(); ++j) {
    double x = xs[j];
    double phi_x = problem.rhs.phi(x);
    if (std::fabs(problem.rhs.eval(x, env.w.values()[j])) > phi_x + 1e-9 ||
        std::fabs(problem.rhs.eval(x, env.w0.values()[j])) > phi_x + 1e-9) {
      ++bad;
    }
  }
  return bad;
}

enum class Direction { Down, Up };

struct IterationOutcome {
  GridFunction z;
  std::size_t iterations;
  bool step_converged;
};

IterationOutcome iterate_monotone(const CauchyProblem& problem, GridFunction z,
                                  const Envelopes& env, Direction dir, const SolveOptions& opts) {
  std::size_t k = 0;
  bool step_converged = false;
  while (k < opts.max_iter) {
    ++k;
    PicardResult t = picard_map(problem, z, env.band_lo, env.band_hi, opts.cell_tol);
    GridFunction next = dir == Direction::Down ? nodewise_min(z, t.fn) : nodewise_max(z, t.fn);
    // Monotone by construction; the descent/ascent assertion is still made
    // explicit so a regression cannot pass silently.
    for (std::size_t j = 0; j < next.values().size(); ++j) {
      bool ok = dir == Direction::Down ? next.values()[j] <= z.values()[j]
                                       : next.values()[j] >= z.values()[j];
      if (!ok) throw std::logic_error("iterate_monotone: monotonicity lost");
    }
    double delta = sup_diff(next, z);
    z = std::move(next);
    if (delta <= opts.tol_iter) {
      step_converged = true;
      break;
    }
  }
  return {std::move(z), k, step_converged};
}

void require_flags_or_force(const CauchyProblem& problem, const SolveOptions& opts) {
  bool flags_ok = problem.rhs.props.y_increasing && problem.rhs.props.y_usc;
  if (!flags_ok && !opts.force_heuristic) {
    throw ConfigError(
        "solver: rhs lacks the increasing+usc flags; rerun with force_heuristic "
        "(--force-heuristic) for an uncertified attempt");
  }
}

}  // namespace

SolveResult solve_maximal(const CauchyProblem& problem, const Partition& partition,
                          const SolveOptions& opts) {
  require_flags_or_force(problem, opts);
  bool flags_ok = problem.rhs.props.y_increasing && problem.rhs.props.y_usc;

  Envelopes env = make_envelopes(problem, partition, opts.cell_tol);
  std::size_t dom_bad = domination_violations(problem, env);

  IterationOutcome outcome = iterate_monotone(problem, env.w0, env, Direction::Down, opts);

  PicardResult final_map = picard_map(problem, outcome.z, env.band_lo, env.band_hi, opts.cell_tol);
  double residual_sup = sup_diff(outcome.z, final_map.fn);

  SolveResult result(std::move(outcome.z));
  result.iterations = outcome.iterations;
  result.fixed_point_residual = residual_sup;
  result.quad_err = final_map.err_total;
  result.converged =
      outcome.step_converged && residual_sup <= opts.tol_res + final_map.err_total;
  result.certified = result.converged && flags_ok && dom_bad == 0;

  if (!outcome.step_converged) {
    result.notes.push_back("max_iter exceeded before the sup-norm step reached tol_iter");
  }
  if (!flags_ok) {
    result.notes.push_back("NON-CERTIFIED: increasing+usc flags absent, heuristic run");
  }
  if (dom_bad > 0) {
    result.notes.push_back("NON-CERTIFIED: |f| > phi detected on the working band at " +
                           std::to_string(dom_bad) + " node(s)");
  }
  if (result.converged && residual_sup > opts.tol_res) {
    result.notes.push_back("residual within quadrature error allowance only");
  }
  if (!result.converged && outcome.step_converged) {
    result.notes.push_back("iteration stalled at a non-fixed point (no certified fixed point "
                           "exists without increasing sections)");
  }

  double verify_tol = std::max(opts.tol_res, 1e-8);
  result.subsolution_report = verify_subsolution(problem, result.z0, verify_tol);

  // Lower-envelope containment; a breach means the declared phi bound lied.
  double below = 0.0;
  for (std::size_t j = 0; j < result.z0.values().size(); ++j) {
    below = std::max(below, env.w.values()[j] - result.z0.values()[j]);
  }
  if (below > 1e-6) {
    result.notes.push_back("iterate dipped below the lower envelope w");
    result.certified = false;
  }

  if (opts.compute_minimal) {
    SolveOptions min_opts = opts;
    min_opts.compute_minimal = false;
    result.minimal = solve_minimal(problem, partition, min_opts);
    result.gap = sup_diff(result.z0, *result.minimal);
  }
  return result;
}

GridFunction solve_minimal(const CauchyProblem& problem, const Partition& partition,
                           const SolveOptions& opts) {
  require_flags_or_force(problem, opts);
  Envelopes env = make_envelopes(problem, partition, opts.cell_tol);
  IterationOutcome outcome = iterate_monotone(problem, env.w, env, Direction::Up, opts);
  return std::move(outcome.z);
}

ResidualReport residual(const CauchyProblem& problem, const GridFunction& y, double cell_tol) {
  const Partition& p = y.partition();
  if (p.a() != problem.a || p.b() != problem.b) {
    throw ShapeError("residual: candidate partition must span [a, b] of the problem");
  }
  PicardResult t = picard_map(problem, y, cell_tol);
  ResidualReport report;
  report.quad_err = t.err_total;
  for (std::size_t j = 0; j < p.node_count(); ++j) {
    double r = std::fabs(y.values()[j] - t.fn.values()[j]);
    if (r > report.sup_residual) {
      report.sup_residual = r;
      report.argmax_x = p.nodes()[j];
    }
  }
  return report;
}

GridFunction euler(const CauchyProblem& problem, double h) {
  if (!(h > 0.0)) throw ConfigError("euler: step must be > 0");
  std::vector<double> xs;
  xs.push_back(problem.a);
  for (std::size_t j = 1;; ++j) {
    double x = problem.a + static_cast<double>(j) * h;
    if (x >= problem.b - 1e-15 * std::max(1.0, std::fabs(problem.b))) break;
    xs.push_back(x);
  }
  xs.push_back(problem.b);

  std::vector<double> ys(xs.size());
  ys[0] = problem.y0;
  for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
    // The closing step is genuinely <= h; min() strips the one-ulp excess the
    // rounded mesh node can introduce.
    double width = (j + 2 == xs.size()) ? std::min(h, problem.b - xs[j]) : h;
    ys[j + 1] = ys[j] + width * problem.rhs.eval(xs[j], ys[j]);
  }
  return GridFunction(Partition::from_nodes(std::move(xs)), std::move(ys));
}

GridFunction euler(const CauchyProblem& problem, double h, const Partition& out) {
  return euler(problem, h).resampled(out);
}

}  // namespace carasolve
