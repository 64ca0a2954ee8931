#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace carasolve {

/// Declared analytic properties of the vertical sections y -> f(x, y).
/// Declared by the constructor, never inferred: measurability and
/// quasicontinuity are not decidable from point evaluations.
struct SectionProps {
  bool y_usc = false;
  bool y_quasicontinuous = false;
  bool y_increasing = false;  // non-decreasing
  bool x_measurable = true;
  bool y_darboux = false;
};

/// Right-hand side f(x, y) together with its declared section properties,
/// the dominating function phi (|f(x,y)| <= phi(x) on the declared y-range)
/// and a sampler for the countable dense set B used by the step grids.
struct Rhs {
  std::string name;
  std::function<double(double, double)> eval;
  SectionProps props;
  std::function<double(double)> phi;

  /// Ascending points of B strictly inside (lo, hi), at least min_count of
  /// them. Defaults to dyadic rationals.
  std::function<std::vector<double>(double lo, double hi, std::size_t min_count)> dense_sampler;

  /// Textual description of the full-measure set A of good x-sections.
  std::string full_measure_set_note;

  /// y-range on which the phi bound is declared to hold.
  double valid_y_lo = -std::numeric_limits<double>::infinity();
  double valid_y_hi = std::numeric_limits<double>::infinity();
};

/// Scalar Cauchy problem y' = f(x, y), y(a) = y0 on [a, b].
struct CauchyProblem {
  Rhs rhs;
  double a = 0.0;
  double b = 1.0;
  double y0 = 0.0;
};

/// Validating constructor; throws ConfigError unless a < b and all finite.
CauchyProblem make_problem(Rhs rhs, double a, double b, double y0);

/// Ascending dyadic rationals k/2^L strictly inside (lo, hi), with the level
/// chosen so at least min_count points are returned.
std::vector<double> dyadic_points(double lo, double hi, std::size_t min_count);

/// Builtin right-hand sides. Unknown names throw ConfigError.
///
///   grande_sign        f(y) = -1 for y > 0, +1 for y <= 0; phi = 1
///   grande_sin         f(y) = 1 for y <= 0, sin(pi/y) for y > 0; phi = 1
///   floor [c=8]        f(y) = floor(y) clamped to [-c, c]; phi = c
///   sqrt_plus [c=4]    f(y) = 2*sqrt(max(y,0)); phi = c, valid for y <= c^2/4
///   const [c=1]        f = c; phi = |c|
///   linear [k=2]       f(x,y) = y; phi(x) = k*e^x, valid for |y| <= k, x >= 0
Rhs builtin_rhs(const std::string& name, const std::vector<double>& params = {});

const std::vector<std::string>& builtin_rhs_names();

/// One empirical property violation found by the section probe.
struct SectionViolation {
  double y = 0.0;        // grid point where the violation was observed
  double witness = 0.0;  // nearby point (usc) or the paired point (monotone)
  double excess = 0.0;   // how far past the tolerance
};

/// Output of probe_section_properties. Purely heuristic: absence of
/// violations proves nothing, their presence disproves the declared flag.
struct SectionProbeReport {
  std::vector<SectionViolation> usc;
  std::vector<SectionViolation> monotonicity;
  std::vector<SectionViolation> domination;
  bool clean() const { return usc.empty() && monotonicity.empty() && domination.empty(); }
};

/// Numeric sanity probe of the declared section flags at fixed x over an
/// ascending y-grid (>= 3 points). usc is probed by comparing f at each grid
/// point against cluster samples approaching it from both sides.
SectionProbeReport probe_section_properties(const Rhs& rhs, double x,
                                            const std::vector<double>& grid, double eps);

}  // namespace carasolve
