// Benchmark: OpenMP kernels against their serial reference implementations.
// Checks bit-identical results while timing, since determinism across worker
// counts is part of the kernel contract.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <utility>
#include <vector>

#include "carasolve/parallel.hpp"
#include "carasolve/quadrature.hpp"
#include "carasolve/rhs.hpp"
#include "carasolve/solver.hpp"
#include "carasolve/step_grid.hpp"

using namespace carasolve;

namespace {

template <typename F>
double time_ms(F&& f, int reps) {
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

int main() {
  parallel::configure_from_env();
  std::printf("workers: %d\n", parallel::worker_count());
  std::printf("%-26s %12s %12s %9s %6s\n", "kernel", "serial ms", "openmp ms", "speedup",
              "bitEQ");

  {  // cumulative integral of a jump-laden integrand
    Rhs rhs = builtin_rhs("grande_sign");
    Partition p = Partition::uniform(0.0, 1.0, 1 << 15);
    GridFunction chatter = euler(make_problem(rhs, 0.0, 1.0, 0.0), 1e-3, p);
    RealFn g = [&](double t) { return rhs.eval(t, chatter.eval(t)); };

    CumulativeResult serial = reference::cumulative(g, p);
    CumulativeResult parallel_run = cumulative(g, p);
    double ts = time_ms([&] { reference::cumulative(g, p); }, 3);
    double tp = time_ms([&] { cumulative(g, p); }, 3);
    std::printf("%-26s %12.2f %12.2f %8.2fx %6s\n", "cumulative (32768 cells)", ts, tp, ts / tp,
                bit_equal(serial.fn.values(), parallel_run.fn.values()) ? "yes" : "NO");
  }

  {  // convergence probe batch
    Rhs rhs = builtin_rhs("grande_sin");
    std::vector<std::pair<double, double>> points;
    for (int i = 0; i < 256; ++i) {
      points.emplace_back(0.0, 0.6 + 0.4 * (i / 256.0));
    }
    std::vector<int> n_list = {64, 256, 1024};

    auto serial = reference::convergence_probe(rhs, points, n_list, -1.0, 1.0);
    auto parallel_run = convergence_probe(rhs, points, n_list, -1.0, 1.0);
    bool eq = serial.size() == parallel_run.size();
    for (std::size_t i = 0; eq && i < serial.size(); ++i) {
      eq = serial[i].deviation == parallel_run[i].deviation;
    }
    double ts = time_ms([&] { reference::convergence_probe(rhs, points, n_list, -1.0, 1.0); }, 2);
    double tp = time_ms([&] { convergence_probe(rhs, points, n_list, -1.0, 1.0); }, 2);
    std::printf("%-26s %12.2f %12.2f %8.2fx %6s\n", "convergence_probe (256pt)", ts, tp, ts / tp,
                eq ? "yes" : "NO");
  }

  {  // full solve (quadrature-dominated)
    CauchyProblem prob = make_problem(builtin_rhs("sqrt_plus"), 0.0, 1.0, 0.0);
    Partition p = Partition::uniform(0.0, 1.0, 8192);
    int saved = parallel::worker_count();
    parallel::set_worker_count(1);
    SolveResult serial = solve_maximal(prob, p);
    double ts = time_ms([&] { solve_maximal(prob, p); }, 2);
    parallel::set_worker_count(saved);
    SolveResult parallel_run = solve_maximal(prob, p);
    double tp = time_ms([&] { solve_maximal(prob, p); }, 2);
    std::printf("%-26s %12.2f %12.2f %8.2fx %6s\n", "solve sqrt_plus (8192)", ts, tp, ts / tp,
                bit_equal(serial.z0.values(), parallel_run.z0.values()) ? "yes" : "NO");
  }
  return 0;
}
