// Benchmark: single-episode stepping throughput, plus serial vs OpenMP batch
// execution with an identical-results check.

#include <chrono>
#include <cstdio>

#include "netsim/harness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace netsim;

namespace {

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

bool rows_equal(const std::vector<EpisodeRow>& a, const std::vector<EpisodeRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].combination != b[i].combination || a[i].captured != b[i].captured ||
        a[i].capture_time_s != b[i].capture_time_s || a[i].fuel_kg != b[i].fuel_kg ||
        a[i].contacts != b[i].contacts ||
        a[i].effective_area_m2 != b[i].effective_area_m2 ||
        a[i].termination_reason != b[i].termination_reason)
      return false;
  }
  return true;
}

}  // namespace

int main() {
  SimConfig config;

  // Single-episode stepping rate on one core.
  {
    const int steps = 2000;
    Simulation sim(config);
    const double t0 = now_s();
    for (int i = 0; i < steps && sim.step(); ++i) {
    }
    const double dt = now_s() - t0;
    std::printf("single episode: %d outer steps in %.3f s -> %.0f steps/s (%.1fx real time)\n",
                steps, dt, steps / dt, steps * config.control_step / dt);
  }

  // Serial reference vs OpenMP batch.
  BatchSpec spec;
  spec.samples = 6;
  spec.seed = 99;
  SimConfig fast = config;
  fast.timeout = 60.0;

  const double t_serial0 = now_s();
  const BatchSummary serial = run_batch_serial(fast, spec);
  const double t_serial = now_s() - t_serial0;

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  BatchSpec par = spec;
  par.workers = 0;
  const double t_par0 = now_s();
  const BatchSummary parallel = run_batch(fast, par);
  const double t_par = now_s() - t_par0;

  std::printf("batch (%zu episodes, 60 s timeout): serial %.2f s, %d threads %.2f s, speedup %.2fx\n",
              serial.rows.size(), t_serial, threads, t_par, t_serial / t_par);
  std::printf("serial vs parallel results identical: %s\n",
              rows_equal(serial.rows, parallel.rows) ? "yes" : "NO");
  return rows_equal(serial.rows, parallel.rows) ? 0 : 1;
}
