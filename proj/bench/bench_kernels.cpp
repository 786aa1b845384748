// Times the OpenMP kernels against their serial reference on the workloads
// that dominate real runs: grid envelope tables, envelope reductions, and
// certification pair sweeps. Also asserts that both paths produce identical
// results, since that is the contract the tests rely on.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "proxkit/catalog.hpp"
#include "proxkit/certify.hpp"
#include "proxkit/envelope.hpp"
#include "proxkit/kernels.hpp"

using namespace proxkit;

namespace {

double time_once(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) best = std::min(best, time_once(fn));
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-34s %10.1f ms %10.1f ms %8.2fx   %s\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("compiled without OpenMP; both columns run the serial path\n");
#endif
  std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    Grid g(Box::cube(1, -4, 4), 3001);
    FunctionOracle f = catalog_entry("huberizable").fn();
    EnvelopeCache::Table ts, tp;
    double fs = best_of(3, [&] { ts = envelope_table(f, 2.0, g, nullptr, Exec::Serial); });
    double fp = best_of(3, [&] { tp = envelope_table(f, 2.0, g, nullptr, Exec::Parallel); });
    row("envelope table 3001x3001", fs, fp, *ts == *tp);
  }

  {
    Grid g(Box::cube(1, -4, 4), 2000001);
    FunctionOracle f = catalog_entry("huberizable").fn();
    EnvelopeResult rs, rp;
    double fs = best_of(3, [&] { rs = moreau_envelope(f, 1.0, {0.7}, g, Exec::Serial); });
    double fp = best_of(3, [&] { rp = moreau_envelope(f, 1.0, {0.7}, g, Exec::Parallel); });
    row("envelope reduction, 2e6 nodes", fs, fp,
        rs.value.finite() == rp.value.finite() && rs.argmin_set == rp.argmin_set);
  }

  {
    const auto& la = catalog_entry("lambda_abs").par();
    Certificate cert{{0.0}, {1.0}, {0.0}, 0.5, 0.0};
    SamplerConfig cfg;
    cfg.points_per_axis = 41;
    cfg.halton_points = 2048;
    Localization loc = collect_localization(la, cert, cfg);
    std::printf("  (pair sweep: %zu tuples x %zu probes)\n", loc.tuples.size(),
                loc.x_primes.size());
    SamplerConfig scfg = cfg;
    scfg.exec = Exec::Serial;
    SamplerConfig pcfg = cfg;
    pcfg.exec = Exec::Parallel;
    CheckReport rs, rp;
    double fs = best_of(3, [&] { rs = check_direct_on(loc, cert, scfg); });
    double fp = best_of(3, [&] { rp = check_direct_on(loc, cert, pcfg); });
    row("direct certification sweep", fs, fp,
        rs.worst_margin == rp.worst_margin && rs.verdict == rp.verdict);
    double ms = best_of(3, [&] { rs = check_monotone_on(loc, cert, scfg); });
    double mp = best_of(3, [&] { rp = check_monotone_on(loc, cert, pcfg); });
    row("pair monotonicity sweep", ms, mp,
        rs.worst_margin == rp.worst_margin && rs.verdict == rp.verdict);
  }

  {
    const auto& quad = catalog_entry("quad").fn();
    const auto& hub = catalog_entry("huberizable").fn();
    Grid g(Box::cube(1, -2, 2), 4001);
    double vs = 0, vp = 0;
    double fs = best_of(2, [&] { vs = lipschitz_mix_prox(quad, hub, 4.0, 0.5, g, Exec::Serial); });
    double fp = best_of(2, [&] { vp = lipschitz_mix_prox(quad, hub, 4.0, 0.5, g, Exec::Parallel); });
    row("prox-mix Lipschitz estimate", fs, fp, vs == vp);
  }

  return 0;
}
