#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "carasolve/grid_function.hpp"
#include "carasolve/quadrature.hpp"
#include "carasolve/rhs.hpp"

namespace carasolve {

/// Verdict of the integral-inequality membership check.
///
/// worst_margin is the minimum over all node pairs x1 < x2 of
///   integral of f(t, z(t)) over [x1, x2]  -  (z(x2) - z(x1)),
/// computed through the monotone reduction: with d = z - V (V the cumulative
/// integral), the all-pairs minimum is min over pairs of d(x1) - d(x2).
struct SubsolutionReport {
  bool is_member = false;
  std::array<double, 2> worst_pair{0.0, 0.0};  // argmin expanded to the full violating span
  double worst_margin = 0.0;
  bool cphi_ok = false;
  double cphi_margin = 0.0;
  double initial_gap = 0.0;  // |z(a) - y0|
  double tol = 0.0;
  double quad_err = 0.0;  // accumulated quadrature err_estimates
};

/// Checks z(x2) - z(x1) <= integral of f(t, z(t)) for all node pairs, plus
/// C_phi membership and z(a) = y0. The violation threshold scales with the
/// accumulated quadrature error: membership requires
/// worst_margin >= -(tol + quad_err). Throws PreconditionError when
/// |z(a) - y0| > tol.
SubsolutionReport verify_subsolution(const CauchyProblem& problem, const GridFunction& z,
                                     double tol = 1e-8);

struct CphiReport {
  bool ok = false;
  double margin = 0.0;  // min over pairs and both sides
  double quad_err = 0.0;
};

/// Two-sided increment bound |z(x2) - z(x1)| <= integral of phi, reduced to
/// z - Phi non-increasing and z + Phi non-decreasing across nodes.
CphiReport verify_cphi(const GridFunction& z, const RealFn& phi, double tol = 1e-8);

struct FatouOptions {
  std::size_t tail = 8;        // iterates entering the limsup proxy
  double conv_bound = 1e-3;    // allowed sup deviation of the last iterate
  double cell_tol = kDefaultCellTol;
};

struct FatouReport {
  double margin = 0.0;          // int f(x, y_limit) - int zhat
  double last_deviation = 0.0;  // sup |y_seq.back() - y_limit|
  double int_limit = 0.0;
  double int_limsup_proxy = 0.0;
  double quad_err = 0.0;
  double tol = 0.0;
};

/// Integral comparison behind the limit step: zhat(x) = max over the last
/// `tail` iterates of f(x, y_n(x)) stands in for the limsup, and the report's
/// margin should come out >= -tol for convergent sequences with usc sections.
/// A finite tail overestimates the limsup of sequences that are still moving,
/// which biases the margin down by the residual convergence gap.
FatouReport fatou_check(const Rhs& rhs, const std::vector<GridFunction>& y_seq,
                        const GridFunction& y_limit, double tol, FatouOptions options = {});

/// Nodewise maximum of two candidates with a common partition and equal
/// initial values. If both inputs verify as sub-solutions, the join does too.
GridFunction join(const GridFunction& z1, const GridFunction& z2);

}  // namespace carasolve
