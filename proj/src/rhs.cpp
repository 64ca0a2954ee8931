#include "carasolve/rhs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "carasolve/errors.hpp"

namespace carasolve {

namespace {

constexpr double kPi = 3.14159265358979323846;

double param_or(const std::vector<double>& params, std::size_t i, double fallback) {
  return i < params.size() ? params[i] : fallback;
}

}  // namespace

CauchyProblem make_problem(Rhs rhs, double a, double b, double y0) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(y0)) {
    throw ConfigError("CauchyProblem: requires finite a < b and finite y0");
  }
  return CauchyProblem{std::move(rhs), a, b, y0};
}

std::vector<double> dyadic_points(double lo, double hi, std::size_t min_count) {
  if (!(lo < hi)) throw DomainError("dyadic_points: requires lo < hi");
  double width = hi - lo;
  int level = 0;
  while (level < 52 && std::ldexp(width, level) < static_cast<double>(min_count) + 2.0) {
    ++level;
  }
  for (; level <= 60; ++level) {
    double scale = std::ldexp(1.0, level);
    double step = std::ldexp(1.0, -level);
    auto k_lo = static_cast<std::int64_t>(std::floor(lo * scale)) + 1;
    auto k_hi = static_cast<std::int64_t>(std::ceil(hi * scale)) - 1;
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, k_hi - k_lo + 1)));
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
      double p = static_cast<double>(k) * step;
      if (p > lo && p < hi) pts.push_back(p);
    }
    if (pts.size() >= min_count) return pts;
  }
  throw ConfigError("dyadic_points: could not reach the requested resolution");
}

const std::vector<std::string>& builtin_rhs_names() {
  static const std::vector<std::string> names = {"grande_sign", "grande_sin", "const",
                                                 "floor",       "sqrt_plus",  "linear"};
  return names;
}

Rhs builtin_rhs(const std::string& name, const std::vector<double>& params) {
  Rhs rhs;
  rhs.name = name;
  rhs.dense_sampler = dyadic_points;
  rhs.full_measure_set_note = "every x (vertical sections share one formula)";
  rhs.props.x_measurable = true;

  if (name == "grande_sign") {
    rhs.eval = [](double, double y) { return y > 0.0 ? -1.0 : 1.0; };
    rhs.phi = [](double) { return 1.0; };
    rhs.props.y_usc = true;
    rhs.props.y_quasicontinuous = true;
    return rhs;
  }
  if (name == "grande_sin") {
    rhs.eval = [](double, double y) { return y <= 0.0 ? 1.0 : std::sin(kPi / y); };
    rhs.phi = [](double) { return 1.0; };
    rhs.props.y_usc = true;
    rhs.props.y_quasicontinuous = true;
    rhs.props.y_darboux = true;
    return rhs;
  }
  if (name == "const") {
    double c = param_or(params, 0, 1.0);
    rhs.eval = [c](double, double) { return c; };
    // phi = max(|c|, 1) keeps the dominated class non-degenerate for c = 0.
    double bound = std::max(std::fabs(c), 1.0);
    rhs.phi = [bound](double) { return bound; };
    rhs.props.y_usc = true;
    rhs.props.y_quasicontinuous = true;
    rhs.props.y_increasing = true;
    return rhs;
  }
  if (name == "floor") {
    // Clamped so that |f| <= phi holds on all of R; the clamp is inactive on
    // the shipped demo ranges.
    double c = param_or(params, 0, 8.0);
    if (!(c >= 1.0)) throw ConfigError("floor: clamp bound must be >= 1");
    rhs.eval = [c](double, double y) { return std::clamp(std::floor(y), -c, c); };
    rhs.phi = [c](double) { return c; };
    rhs.props.y_usc = true;
    rhs.props.y_quasicontinuous = true;
    rhs.props.y_increasing = true;
    return rhs;
  }
  if (name == "sqrt_plus") {
    double c = param_or(params, 0, 4.0);
    if (!(c > 0.0)) throw ConfigError("sqrt_plus: phi bound must be > 0");
    rhs.eval = [](double, double y) { return 2.0 * std::sqrt(std::max(y, 0.0)); };
    rhs.phi = [c](double) { return c; };
    rhs.valid_y_hi = c * c / 4.0;
    rhs.props.y_usc = true;
    rhs.props.y_quasicontinuous = true;
    rhs.props.y_increasing = true;
    return rhs;
  }
  if (name == "linear") {
    double k = param_or(params, 0, 2.0);
    if (!(k > 0.0)) throw ConfigError("linear: envelope scale must be > 0");
    rhs.eval = [](double, double y) { return y; };
    rhs.phi = [k](double x) { return k * std::exp(x); };
    // |y| <= k*e^x is self-consistent on bands growing out of |y0| <= k, x >= 0.
    rhs.valid_y_lo = -k;
    rhs.valid_y_hi = k;
    rhs.props.y_usc = true;
    rhs.props.y_quasicontinuous = true;
    rhs.props.y_increasing = true;
    return rhs;
  }
  throw ConfigError("builtin_rhs: unknown name '" + name + "'");
}

SectionProbeReport probe_section_properties(const Rhs& rhs, double x,
                                            const std::vector<double>& grid, double eps) {
  if (grid.size() < 3) throw PreconditionError("probe_section_properties: needs >= 3 grid points");
  if (!(eps > 0.0)) throw PreconditionError("probe_section_properties: eps must be > 0");

  SectionProbeReport report;
  double phi_x = rhs.phi(x);

  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i] < grid[i + 1])) {
      throw PreconditionError("probe_section_properties: grid must be ascending");
    }
  }

  for (std::size_t i = 0; i < grid.size(); ++i) {
    double y = grid[i];
    double fy = rhs.eval(x, y);

    if (std::fabs(fy) > phi_x + eps) {
      report.domination.push_back({y, y, std::fabs(fy) - phi_x});
    }

    // Cluster values on both sides at geometrically shrinking distances,
    // starting well inside the neighbor gap so that neighboring plateaus do
    // not produce spurious flags.
    double r_left = (i > 0 ? y - grid[i - 1] : grid[1] - grid[0]) / 4.0;
    double r_right = (i + 1 < grid.size() ? grid[i + 1] - y : y - grid[grid.size() - 2]) / 4.0;
    double worst_excess = 0.0;
    double worst_witness = y;
    for (int side = 0; side < 2; ++side) {
      double r = side == 0 ? r_left : r_right;
      for (int j = 0; j < 32; ++j) {
        double t = side == 0 ? y - r : y + r;
        double ft = rhs.eval(x, t);
        if (ft - fy > eps && ft - fy > worst_excess) {
          worst_excess = ft - fy;
          worst_witness = t;
        }
        r *= 0.5;
      }
    }
    if (worst_excess > eps) {
      report.usc.push_back({y, worst_witness, worst_excess});
    }
  }

  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double f1 = rhs.eval(x, grid[i]);
    double f2 = rhs.eval(x, grid[i + 1]);
    if (f1 > f2 + eps) {
      report.monotonicity.push_back({grid[i], grid[i + 1], f1 - f2});
    }
  }

  return report;
}

}  // namespace carasolve
