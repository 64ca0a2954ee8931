#pragma once

namespace carasolve::parallel {

/// Applies the CARASOLVE_THREADS cap if the variable is set. Call once at
/// process start (the CLI does).
void configure_from_env();

/// Current worker cap (>= 1).
int worker_count();

void set_worker_count(int n);

}  // namespace carasolve::parallel
