#pragma once

#include <cstddef>
#include <functional>

#include "carasolve/grid_function.hpp"
#include "carasolve/rhs.hpp"

namespace carasolve {

using RealFn = std::function<double(double)>;

inline constexpr double kDefaultCellTol = 1e-8;
inline constexpr std::size_t kMaxCellEvals = std::size_t{1} << 20;

struct IntegrateResult {
  double value = 0.0;
  double err_estimate = 0.0;  // last refinement delta
  bool converged = true;      // false when the evaluation cap was hit first
  std::size_t evals = 0;
};

/// Composite-midpoint integral of a bounded g over [lo, hi] with dyadic
/// refinement until successive refinements differ by <= tol or the
/// per-cell evaluation cap is reached. Midpoint sampling keeps node-aligned
/// jumps off the sample set, so such step integrands come out exact.
IntegrateResult integrate(const RealFn& g, double lo, double hi, double tol = kDefaultCellTol,
                          std::size_t max_evals = kMaxCellEvals);

struct CumulativeResult {
  GridFunction fn;       // V(x_j) = integral of g over [a, x_j]; V(a) = 0
  double err_total = 0;  // sum of per-cell err_estimates
  bool converged = true;
};

/// x -> integral of g from a to x on the partition nodes. Per-cell integrals
/// run in parallel; the prefix sum is serial in index order, so results are
/// bit-identical for every worker count.
CumulativeResult cumulative(const RealFn& g, const Partition& partition,
                            double tol = kDefaultCellTol);

namespace reference {
/// Serial reference for the parallel kernel above; kept for tests and the
/// benchmark. Must stay bit-identical to cumulative().
CumulativeResult cumulative(const RealFn& g, const Partition& partition,
                            double tol = kDefaultCellTol);
}  // namespace reference

struct PicardResult {
  GridFunction fn;
  double err_total = 0;
  bool converged = true;
};

/// T(z)(x) = y0 + integral of f(t, z(t)) from a to x on z's partition.
/// z is evaluated by linear interpolation between nodes; its values are
/// clamped to [clip_lo, clip_hi] before f sees them.
PicardResult picard_map(const CauchyProblem& problem, const GridFunction& z,
                        double clip_lo, double clip_hi, double tol = kDefaultCellTol);

/// Unclipped variant.
PicardResult picard_map(const CauchyProblem& problem, const GridFunction& z,
                        double tol = kDefaultCellTol);

}  // namespace carasolve
