#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "carasolve/grid_function.hpp"
#include "carasolve/quadrature.hpp"
#include "carasolve/rhs.hpp"
#include "carasolve/solver.hpp"

namespace carasolve {

/// A detected band trap: the candidate last crosses 1/(2 n0) at a, first
/// crosses 1/(2 n0 - 1) afterwards at b, stays inside the band in between,
/// yet the measured integral of f along it over (a, b) is <= 0. Every such
/// event carries the explicit residual lower bound
///   (y(b) - y(a)) - integral >= 1/(2 n0 (2 n0 - 1)).
struct BandEvent {
  int n0 = 0;
  double a = 0.0;
  double b = 0.0;
  double y_a = 0.0;
  double y_b = 0.0;
  double integral = 0.0;
  double integral_err = 0.0;
  double residual_lb = 0.0;
  std::string candidate;
};

struct CandidateResidual {
  std::string label;
  double sup_residual = 0.0;
  double argmax_x = 0.0;
};

/// Quantitative non-existence evidence: no candidate in the tested family
/// solves the integral equation; each carries a positive residual.
struct NonexistenceReport {
  std::string rhs_name;
  double x0 = 0.0;
  double y0 = 0.0;
  std::vector<double> step_sizes;
  double euler_limit_deviation = 0.0;  // smallest-h trajectory vs the limit candidate
  std::vector<CandidateResidual> residual_by_candidate;
  std::vector<BandEvent> band_events;
  // Components (a_s, b_s) of {x : candidate(x) != 0} for the limit candidate.
  std::vector<std::array<double, 2>> nonzero_components;
  bool chatter_confined = false;       // sign demo: Euler nodes trapped near the switch
  bool all_positive_somewhere = false; // sin demo: every trajectory exceeds 0
  double min_candidate_residual = 0.0;
  std::string verdict;
};

struct DemoSignConfig {
  double x0 = 0.0;
  double y0 = 0.0;
  double length = 1.0;
  std::vector<double> steps = {1e-1, 1e-2, 1e-3, 1e-4};
  std::size_t grid = 4096;
  double cell_tol = kDefaultCellTol;
};

/// Sign-switch counterexample: Euler chatters against the switching level,
/// the pointwise-limit candidate violates the integral equation by the full
/// interval length, and every tested candidate keeps a residual bounded away
/// from zero. Degenerate length 0 yields a vacuous report.
NonexistenceReport demo_sign(const DemoSignConfig& config = {});

struct DemoSinConfig {
  double length = 2.0;
  int n0_max = 3;
  std::vector<double> steps = {1e-2, 1e-3, 1e-4};
  std::size_t grid = 8192;
  double cell_tol = kDefaultCellTol;
};

/// Oscillating counterexample: trajectories are forced above zero (slope is 1
/// below it), and any candidate that climbs through a band
/// (1/(2 n0), 1/(2 n0 - 1)) gains height where the right-hand side is
/// negative; the report records those events with measured integrals. The
/// candidate family includes the forced ascent y(x) = x alongside the Euler
/// trajectories, which typically stay trapped below the first band.
NonexistenceReport demo_sin(const DemoSinConfig& config = {});

/// Positive-regime demo output: solver against an independent oracle.
struct PositiveReport {
  std::string name;
  double max_dev_maximal = 0.0;
  std::optional<double> max_dev_minimal;
  std::optional<double> gap_at_b;
  double fixed_point_residual = 0.0;
  double quad_err = 0.0;
  std::size_t iterations = 0;
  bool certified = false;
  GridFunction z0;
  std::optional<GridFunction> minimal;
  GridFunction oracle;
};

struct DemoPositiveConfig {
  std::optional<double> y0;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<std::size_t> grid;
};

/// name in {const, floor, sqrt_plus, linear}; defaults give the canonical
/// problem for each (floor gets a node-aligned grid so its kinks sit on
/// partition nodes).
PositiveReport demo_positive(const std::string& name, const DemoPositiveConfig& config = {});

bool report_invariants_hold(const NonexistenceReport& report);

namespace oracles {

/// Exact trajectory of y' = step(y) for a right-continuous non-decreasing
/// step function with jumps at the integers (the clamped floor rhs), valid
/// for ascending starts floor(y0) >= 1. Event-driven: linear between the
/// integer-level crossing times.
struct StepEventSolution {
  std::vector<double> xs;      // event times, starting at a
  std::vector<double> ys;      // values at the event times
  std::vector<double> slopes;  // slope on [xs[i], xs[i+1])
  double eval(double x) const;
};

StepEventSolution floor_trajectory(double y0, double a, double b, double clamp_bound = 8.0);

double const_solution(double c, double y0, double a, double x);
double linear_solution(double y0, double a, double x);            // y0 * e^(x-a)
double sqrt_plus_maximal(double y0, double a, double x);          // (sqrt(y0) + (x-a))^2
double sqrt_plus_minimal(double y0, double a, double x);          // 0 when y0 = 0

}  // namespace oracles

}  // namespace carasolve
