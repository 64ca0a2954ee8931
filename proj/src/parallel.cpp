#include "carasolve/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace carasolve::parallel {

void configure_from_env() {
  const char* value = std::getenv("CARASOLVE_THREADS");
  if (value == nullptr) return;
  try {
    int n = std::stoi(value);
    if (n >= 1) omp_set_num_threads(n);
  } catch (const std::exception&) {
    // Malformed value: keep the OpenMP default.
  }
}

int worker_count() { return omp_get_max_threads(); }

void set_worker_count(int n) {
  if (n >= 1) omp_set_num_threads(n);
}

}  // namespace carasolve::parallel
