#include "carasolve/step_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "carasolve/errors.hpp"

namespace carasolve {

bool StepGrid::is_breakpoint(double y) const {
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), y);
  return it != breakpoints.end() && *it == y;
}

std::size_t StepGrid::interval_of(double y) const {
  if (!(y > breakpoints.front() && y < breakpoints.back())) {
    throw DomainError("StepGrid::interval_of: y outside the grid span");
  }
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), y);
  return static_cast<std::size_t>(it - breakpoints.begin()) - 1;
}

StepGrid build_step_grid(const Rhs& rhs, int n, double window_lo, double window_hi) {
  if (n < 1) throw ConfigError("build_step_grid: n must be >= 1");
  if (!(window_lo < window_hi)) throw ConfigError("build_step_grid: requires lo < hi");
  if (!rhs.dense_sampler) throw ConfigError("build_step_grid: rhs has no dense sampler");

  double gap_bound = 1.0 / static_cast<double>(n);
  double margin = 2.0 * gap_bound;
  double lo = window_lo - margin;
  double hi = window_hi + margin;
  auto request = static_cast<std::size_t>(
      std::ceil(2.0 * static_cast<double>(n) * (hi - lo))) + 2;
  request = std::max<std::size_t>(request, 16);

  for (int attempt = 0; attempt < 16; ++attempt, request *= 2) {
    std::vector<double> pts = rhs.dense_sampler(lo, hi, request);
    if (pts.size() < 2) continue;
    bool sorted = std::is_sorted(pts.begin(), pts.end());
    if (!sorted) throw ConfigError("build_step_grid: sampler output not ascending");
    if (pts.front() > window_lo || pts.back() < window_hi) continue;
    double max_gap = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      max_gap = std::max(max_gap, pts[i + 1] - pts[i]);
    }
    if (max_gap >= gap_bound) continue;
    StepGrid grid;
    grid.n = n;
    grid.window_lo = window_lo;
    grid.window_hi = window_hi;
    grid.breakpoints = std::move(pts);
    return grid;
  }
  throw ConfigError("build_step_grid: dense sampler could not cover the window at gap < 1/n");
}

ApproxRhs make_approx(const Rhs& rhs, int n, double window_lo, double window_hi,
                      std::size_t sup_resolution) {
  return ApproxRhs{rhs, build_step_grid(rhs, n, window_lo, window_hi), sup_resolution};
}

double interval_sup(const ApproxRhs& approx, double x, std::size_t k) {
  const auto& bps = approx.grid.breakpoints;
  double a = bps[k];
  double b = bps[k + 1];
  std::vector<double> pts = approx.base.dense_sampler(a, b, approx.sup_resolution);

  double best = -std::numeric_limits<double>::infinity();
  double arg = pts.front();
  for (double t : pts) {
    double v = approx.base.eval(x, t);
    if (v > best) {
      best = v;
      arg = t;
    }
  }

  // Local refinement around the running argmax. IEEE doubles are dyadic
  // rationals, so the refined sample points remain inside the default B.
  double inset_a = std::nextafter(a, b);
  double inset_b = std::nextafter(b, a);
  double radius = pts.size() > 1 ? pts[1] - pts[0] : (b - a) * 0.5;
  for (int round = 0; round < 3; ++round) {
    double lo = std::max(inset_a, arg - radius);
    double hi = std::min(inset_b, arg + radius);
    for (int i = 0; i <= 32; ++i) {
      double t = lo + (hi - lo) * (static_cast<double>(i) / 32.0);
      double v = approx.base.eval(x, t);
      if (v > best) {
        best = v;
        arg = t;
      }
    }
    radius /= 16.0;
  }
  return best;
}

double eval_fn(const ApproxRhs& approx, double x, double y) {
  const StepGrid& grid = approx.grid;
  if (!grid.in_window(y)) throw DomainError("eval_fn: y outside the grid window");
  if (grid.is_breakpoint(y)) return approx.base.eval(x, y);
  std::size_t k = grid.interval_of(y);
  double s = interval_sup(approx, x, k);
  return std::min(static_cast<double>(grid.n), s);
}

namespace {

std::vector<ProbeRow> convergence_probe_impl(const Rhs& rhs,
                                             const std::vector<std::pair<double, double>>& points,
                                             const std::vector<int>& n_list, double window_lo,
                                             double window_hi, std::size_t sup_resolution,
                                             bool use_parallel) {
  std::vector<ApproxRhs> approxes;
  approxes.reserve(n_list.size());
  for (int n : n_list) {
    approxes.push_back(make_approx(rhs, n, window_lo, window_hi, sup_resolution));
  }

  std::vector<ProbeRow> rows(points.size() * n_list.size());
  auto fill_point = [&](std::size_t p) {
    auto [x, y] = points[p];
    double f = rhs.eval(x, y);
    for (std::size_t j = 0; j < n_list.size(); ++j) {
      double fn = eval_fn(approxes[j], x, y);
      rows[p * n_list.size() + j] = {x, y, n_list[j], std::fabs(fn - f)};
    }
  };

  if (use_parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(points.size()); ++p) {
      fill_point(static_cast<std::size_t>(p));
    }
  } else {
    for (std::size_t p = 0; p < points.size(); ++p) fill_point(p);
  }
  return rows;
}

}  // namespace

std::vector<ProbeRow> convergence_probe(const Rhs& rhs,
                                        const std::vector<std::pair<double, double>>& points,
                                        const std::vector<int>& n_list, double window_lo,
                                        double window_hi, std::size_t sup_resolution) {
  return convergence_probe_impl(rhs, points, n_list, window_lo, window_hi, sup_resolution, true);
}

namespace reference {
std::vector<ProbeRow> convergence_probe(const Rhs& rhs,
                                        const std::vector<std::pair<double, double>>& points,
                                        const std::vector<int>& n_list, double window_lo,
                                        double window_hi, std::size_t sup_resolution) {
  return convergence_probe_impl(rhs, points, n_list, window_lo, window_hi, sup_resolution, false);
}
}  // namespace reference

GridFunction superpose(const Rhs& rhs, const GridFunction& g) {
  const auto& xs = g.partition().nodes();
  std::vector<double> values(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    values[j] = rhs.eval(xs[j], g.values()[j]);
  }
  return GridFunction(g.partition(), std::move(values));
}

SetDecomposition decompose_sets(const ApproxRhs& approx, const GridFunction& g,
                                const std::vector<double>& samples) {
  SetDecomposition out;
  out.classes.reserve(samples.size());
  const auto& bps = approx.grid.breakpoints;
  for (double x : samples) {
    double gx = g.eval(x);
    auto it = std::lower_bound(bps.begin(), bps.end(), gx);
    if (it != bps.end() && *it == gx) {
      out.classes.push_back({SetDecomposition::Kind::Breakpoint,
                             static_cast<std::size_t>(it - bps.begin())});
    } else {
      out.classes.push_back({SetDecomposition::Kind::Interval, approx.grid.interval_of(gx)});
    }
  }
  return out;
}

}  // namespace carasolve
