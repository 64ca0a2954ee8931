#include "carasolve/subsolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "carasolve/errors.hpp"

namespace carasolve {

namespace {

struct PairScan {
  double min_margin;  // min over pairs j < k of d[j] - d[k]
  std::size_t j, k;   // argmin pair
};

// Running-min scan; evaluates the same d[j] - d[k] subtraction a brute-force
// pair loop would, so the two routes agree bit-for-bit on the argmin pair.
PairScan scan_pairs(const std::vector<double>& d) {
  PairScan out{std::numeric_limits<double>::infinity(), 0, 0};
  std::size_t run_idx = 0;
  for (std::size_t k = 1; k < d.size(); ++k) {
    double margin = d[run_idx] - d[k];
    if (margin < out.min_margin) {
      out.min_margin = margin;
      out.j = run_idx;
      out.k = k;
    }
    if (d[k] < d[run_idx]) run_idx = k;
  }
  return out;
}

}  // namespace

SubsolutionReport verify_subsolution(const CauchyProblem& problem, const GridFunction& z,
                                     double tol) {
  const Partition& p = z.partition();
  if (p.a() != problem.a || p.b() != problem.b) {
    throw ShapeError("verify_subsolution: z partition must span [a, b] of the problem");
  }

  SubsolutionReport report;
  report.tol = tol;
  report.initial_gap = std::fabs(z.values().front() - problem.y0);
  if (report.initial_gap > tol) {
    throw PreconditionError("verify_subsolution: z(a) != y0 beyond tolerance");
  }

  // Working rectangle from the phi envelope; z is clipped into it before f
  // sees it, which only matters for candidates that are not members anyway.
  CumulativeResult phi_cum = cumulative(problem.rhs.phi, p);
  double band = phi_cum.fn.values().back();
  double clip_lo = problem.y0 - band - tol;
  double clip_hi = problem.y0 + band + tol;

  PicardResult t_of_z = picard_map(problem, z, clip_lo, clip_hi);
  std::vector<double> d(p.node_count());
  for (std::size_t j = 0; j < d.size(); ++j) {
    d[j] = z.values()[j] - t_of_z.fn.values()[j];
  }

  PairScan scan = scan_pairs(d);
  report.worst_margin = scan.min_margin;
  std::size_t j = scan.j;
  std::size_t k = scan.k;
  // Expand to the maximal span over which d keeps rising.
  while (j > 0 && d[j - 1] <= d[j]) --j;
  while (k + 1 < d.size() && d[k + 1] >= d[k]) ++k;
  report.worst_pair = {p.nodes()[j], p.nodes()[k]};

  CphiReport cphi = verify_cphi(z, problem.rhs.phi, tol);
  report.cphi_ok = cphi.ok;
  report.cphi_margin = cphi.margin;
  report.quad_err = t_of_z.err_total + cphi.quad_err;

  report.is_member = report.worst_margin >= -(tol + t_of_z.err_total) && report.cphi_ok;
  return report;
}

CphiReport verify_cphi(const GridFunction& z, const RealFn& phi, double tol) {
  const Partition& p = z.partition();
  CumulativeResult phi_cum = cumulative(phi, p);
  const auto& big_phi = phi_cum.fn.values();

  std::vector<double> upper(p.node_count());  // z - Phi, must be non-increasing
  std::vector<double> lower(p.node_count());  // -(z + Phi), must be non-increasing
  for (std::size_t j = 0; j < p.node_count(); ++j) {
    upper[j] = z.values()[j] - big_phi[j];
    lower[j] = -(z.values()[j] + big_phi[j]);
  }
  double margin = std::min(scan_pairs(upper).min_margin, scan_pairs(lower).min_margin);

  CphiReport report;
  report.margin = margin;
  report.quad_err = phi_cum.err_total;
  report.ok = margin >= -(tol + phi_cum.err_total);
  return report;
}

FatouReport fatou_check(const Rhs& rhs, const std::vector<GridFunction>& y_seq,
                        const GridFunction& y_limit, double tol, FatouOptions options) {
  if (y_seq.empty()) throw PreconditionError("fatou_check: empty sequence");
  for (const auto& y : y_seq) {
    if (y.partition() != y_limit.partition()) {
      throw ShapeError("fatou_check: all functions must share one partition");
    }
  }

  FatouReport report;
  report.tol = tol;
  report.last_deviation = sup_diff(y_seq.back(), y_limit);
  if (report.last_deviation > options.conv_bound) {
    throw PreconditionError("fatou_check: last iterate deviates beyond the declared bound");
  }

  std::size_t tail = std::min(options.tail, y_seq.size());
  std::size_t first = y_seq.size() - tail;

  RealFn limsup_proxy = [&](double x) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = first; i < y_seq.size(); ++i) {
      best = std::max(best, rhs.eval(x, y_seq[i].eval(x)));
    }
    return best;
  };
  RealFn along_limit = [&](double x) { return rhs.eval(x, y_limit.eval(x)); };

  const Partition& p = y_limit.partition();
  CumulativeResult proxy_cum = cumulative(limsup_proxy, p, options.cell_tol);
  CumulativeResult limit_cum = cumulative(along_limit, p, options.cell_tol);

  report.int_limsup_proxy = proxy_cum.fn.values().back();
  report.int_limit = limit_cum.fn.values().back();
  report.margin = report.int_limit - report.int_limsup_proxy;
  report.quad_err = proxy_cum.err_total + limit_cum.err_total;
  return report;
}

GridFunction join(const GridFunction& z1, const GridFunction& z2) {
  if (z1.partition() != z2.partition()) throw ShapeError("join: mismatched partitions");
  double scale = std::max({1.0, std::fabs(z1.values().front()), std::fabs(z2.values().front())});
  if (std::fabs(z1.values().front() - z2.values().front()) > 1e-9 * scale) {
    throw PreconditionError("join: candidates must share the initial value");
  }
  return nodewise_max(z1, z2);
}

}  // namespace carasolve
