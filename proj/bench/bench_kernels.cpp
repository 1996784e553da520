// Timing comparison of the serial reference kernels against the OpenMP paths.
// Both paths produce bit-identical output; this only measures wall time.

#include <chrono>
#include <cstdio>
#include <vector>

#include "alg/batch.hpp"
#include "alg/distributions.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_ms(F f, int reps) {
  // one warm-up run, then the best of `reps`
  f();
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = Clock::now();
    f();
    const auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-18s %10.2f ms %10.2f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main() {
  using namespace alg;
  using batch::Exec;

  const ALGParams p{40.0, 78.0, 54.0, 103.0};
  const std::size_t grid_n = 2'000'000;
  const std::size_t sample_n = 4'000'000;

  std::vector<double> grid(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i)
    grid[i] = -600.0 + 1800.0 * static_cast<double>(i) / static_cast<double>(grid_n - 1);

  std::printf("%-18s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  const double pdf_s = time_ms([&] { batch::alg_pdf_grid(p, grid, Exec::serial); }, 3);
  const double pdf_p = time_ms([&] { batch::alg_pdf_grid(p, grid, Exec::parallel); }, 3);
  row("pdf grid", pdf_s, pdf_p);

  const double haz_s = time_ms([&] { batch::alg_hazard_grid(p, grid, Exec::serial); }, 3);
  const double haz_p = time_ms([&] { batch::alg_hazard_grid(p, grid, Exec::parallel); }, 3);
  row("hazard grid", haz_s, haz_p);

  const double smp_s =
      time_ms([&] { batch::sample_alg(p, sample_n, 7u, Exec::serial); }, 3);
  const double smp_p =
      time_ms([&] { batch::sample_alg(p, sample_n, 7u, Exec::parallel); }, 3);
  row("sampler", smp_s, smp_p);

  const auto data = batch::sample_alg(p, sample_n, 7u, Exec::parallel);
  const double ll_s = time_ms([&] { batch::alg_log_lik(p, data, Exec::serial); }, 3);
  const double ll_p = time_ms([&] { batch::alg_log_lik(p, data, Exec::parallel); }, 3);
  row("log-likelihood", ll_s, ll_p);

  return 0;
}
