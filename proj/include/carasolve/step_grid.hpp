#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "carasolve/grid_function.hpp"
#include "carasolve/rhs.hpp"

namespace carasolve {

/// Breakpoint family for one approximation level n: ascending points of B
/// with consecutive gaps < 1/n whose closed span covers the working window.
struct StepGrid {
  int n = 1;
  double window_lo = 0.0;
  double window_hi = 1.0;
  std::vector<double> breakpoints;

  /// Exact-match breakpoint lookup.
  bool is_breakpoint(double y) const;
  /// Index k of the open interval (breakpoints[k], breakpoints[k+1])
  /// containing y. y must not be a breakpoint.
  std::size_t interval_of(double y) const;
  bool in_window(double y) const { return y >= window_lo && y <= window_hi; }
};

/// Builds a level-n grid for the window from the rhs dense sampler.
/// Throws ConfigError if the sampler cannot reach the required resolution.
StepGrid build_step_grid(const Rhs& rhs, int n, double window_lo, double window_hi);

/// The step approximation of an Rhs at level n: constant in y on each open
/// breakpoint interval, equal to f at the breakpoints themselves.
struct ApproxRhs {
  Rhs base;
  StepGrid grid;
  std::size_t sup_resolution = 256;  // dense samples per interval sup
};

ApproxRhs make_approx(const Rhs& rhs, int n, double window_lo, double window_hi,
                      std::size_t sup_resolution = 256);

/// Evaluates the approximation:
///   y on a breakpoint  ->  f(x, y) exactly,
///   y inside an interval -> min{n, S} with S the sampled sup of f(x, .)
///                           over that interval.
/// The sampled sup takes the max of f over dense-sampler points and then
/// refines around the running argmax; every refinement point is still a
/// dyadic rational, hence still in the default B.
double eval_fn(const ApproxRhs& approx, double x, double y);

/// Sampled sup of f(x, .) over the open interval k of the grid; eval_fn's
/// value on that interval before the min{n, .} clamp (the gamma value).
double interval_sup(const ApproxRhs& approx, double x, std::size_t k);

struct ProbeRow {
  double x = 0.0;
  double y = 0.0;
  int n = 0;
  double deviation = 0.0;  // |f_n(x, y) - f(x, y)|
};

/// Deviation table used by the convergence acceptance tests. Parallel over
/// probe points with a deterministic row order (point-major, then n).
std::vector<ProbeRow> convergence_probe(const Rhs& rhs,
                                        const std::vector<std::pair<double, double>>& points,
                                        const std::vector<int>& n_list, double window_lo,
                                        double window_hi, std::size_t sup_resolution = 256);

namespace reference {
/// Serial counterpart of convergence_probe; must stay bit-identical.
std::vector<ProbeRow> convergence_probe(const Rhs& rhs,
                                        const std::vector<std::pair<double, double>>& points,
                                        const std::vector<int>& n_list, double window_lo,
                                        double window_hi, std::size_t sup_resolution = 256);
}  // namespace reference

/// h(x) = f(x, g(x)) sampled on g's partition.
GridFunction superpose(const Rhs& rhs, const GridFunction& g);

/// Classification of sample points by where g lands on the grid:
/// Breakpoint marks g(x) = a_{n,k} (the A-sets), Interval marks
/// g(x) inside (a_{n,k}, a_{n,k+1}) (the B-sets).
struct SetDecomposition {
  enum class Kind { Breakpoint, Interval };
  struct Entry {
    Kind kind;
    std::size_t k;
  };
  std::vector<Entry> classes;  // one per sample, in input order
};

SetDecomposition decompose_sets(const ApproxRhs& approx, const GridFunction& g,
                                const std::vector<double>& samples);

}  // namespace carasolve
