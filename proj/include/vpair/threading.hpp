#pragma once

namespace vpair {

// Execution policy for the data-parallel kernels (residual quadrature,
// Jacobian columns, diagnostics probe sweeps). Both policies produce
// bit-identical results: parallelism is across independent output points,
// each with a serial inner summation.
enum class Exec { serial, parallel };

// Worker count for Exec::parallel. Reads VPAIR_THREADS once per process:
// unset or 0 means "use the OpenMP default"; built without OpenMP this is 1.
int thread_count();

// Runs body(i) for i in [0, n). Exec::parallel distributes iterations over
// OpenMP threads; bodies must write only to their own index so that both
// policies give bit-identical results.
template <class F>
void for_each_index(int n, Exec exec, F&& body) {
#ifdef _OPENMP
  if (exec == Exec::parallel) {
    const int nt = thread_count();
#pragma omp parallel for schedule(static) num_threads(nt)
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
#else
  (void)exec;
#endif
  for (int i = 0; i < n; ++i) body(i);
}

}  // namespace vpair
