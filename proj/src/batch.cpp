#include "alg/batch.hpp"

#include <cmath>
#include <cstddef>

#include "alg/rng.hpp"

namespace alg::batch {

namespace {

constexpr std::size_t kChunk = 4096;

// Draws per output value: ALG consumes 4 uniforms (2 for the normal, 2 for
// the exponentials); ExG consumes 3; AL consumes 2.  Each chunk gets its own
// derived seed so the sequence does not depend on the thread count.
template <typename Draw>
std::vector<double> chunked_sample(std::size_t n, std::uint64_t seed, Exec exec,
                                   Draw&& draw) {
  std::vector<double> out(n);
  const std::ptrdiff_t nchunks =
      static_cast<std::ptrdiff_t>((n + kChunk - 1) / kChunk);
  const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t c = 0; c < nchunks; ++c) {
    SplitMix64 g(derive_seed(seed, static_cast<std::uint64_t>(c)));
    const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
    const std::size_t end = std::min(begin + kChunk, n);
    for (std::size_t i = begin; i < end; ++i) out[i] = draw(g);
  }
  return out;
}

template <typename F>
std::vector<double> grid_apply(std::span<const double> t, Exec exec, F&& f) {
  std::vector<double> out(t.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(t.size());
  const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = f(t[i]);
  return out;
}

template <typename LogPdf>
double chunked_log_lik(std::span<const double> sample, Exec exec, LogPdf&& lp) {
  const std::size_t n = sample.size();
  const std::ptrdiff_t nchunks =
      static_cast<std::ptrdiff_t>((n + kChunk - 1) / kChunk);
  std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);
  const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t c = 0; c < nchunks; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
    const std::size_t end = std::min(begin + kChunk, n);
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) acc += lp(sample[i]);
    partial[static_cast<std::size_t>(c)] = acc;
  }
  double total = 0.0;
  for (double v : partial) total += v;  // fixed order
  return total;
}

}  // namespace

std::vector<double> alg_pdf_grid(const ALGParams& p, std::span<const double> t,
                                 Exec exec) {
  p.validate();
  return grid_apply(t, exec, [&](double x) { return alg_pdf(p, x); });
}

std::vector<double> alg_cdf_grid(const ALGParams& p, std::span<const double> t,
                                 Exec exec) {
  p.validate();
  return grid_apply(t, exec, [&](double x) { return alg_cdf(p, x); });
}

std::vector<double> alg_hazard_grid(const ALGParams& p, std::span<const double> t,
                                    Exec exec) {
  p.validate();
  return grid_apply(t, exec, [&](double x) { return alg_hazard(p, x).rate; });
}

std::vector<double> exg_pdf_grid(const ExGParams& p, std::span<const double> t,
                                 Exec exec) {
  p.validate();
  return grid_apply(t, exec, [&](double x) { return exg_pdf(p, x); });
}

double alg_log_lik(const ALGParams& p, std::span<const double> sample, Exec exec) {
  p.validate();
  return chunked_log_lik(sample, exec, [&](double x) { return alg_log_pdf(p, x); });
}

double exg_log_lik(const ExGParams& p, std::span<const double> sample, Exec exec) {
  p.validate();
  return chunked_log_lik(sample, exec, [&](double x) { return exg_log_pdf(p, x); });
}

std::vector<double> sample_alg(const ALGParams& p, std::size_t n, std::uint64_t seed,
                               Exec exec) {
  p.validate();
  if (n < 1) throw domain_error("sample size must be >= 1");
  return chunked_sample(n, seed, exec, [&](SplitMix64& g) {
    const double z = g.normal();
    const double e1 = g.exponential();
    const double e2 = g.exponential();
    return p.mu + p.sigma * z + p.alpha2 * e2 - p.alpha1 * e1;
  });
}

std::vector<double> sample_exg(const ExGParams& p, std::size_t n, std::uint64_t seed,
                               Exec exec) {
  p.validate();
  if (n < 1) throw domain_error("sample size must be >= 1");
  return chunked_sample(n, seed, exec, [&](SplitMix64& g) {
    return p.mu + p.sigma * g.normal() + p.tau * g.exponential();
  });
}

std::vector<double> sample_al(const ALParams& p, std::size_t n, std::uint64_t seed,
                              Exec exec) {
  p.validate();
  if (n < 1) throw domain_error("sample size must be >= 1");
  return chunked_sample(n, seed, exec, [&](SplitMix64& g) {
    const double e1 = g.exponential();
    const double e2 = g.exponential();
    return p.alpha2 * e2 - p.alpha1 * e1;
  });
}

namespace {

std::vector<double> linspace(double tmin, double tmax, std::size_t points) {
  if (!(tmin < tmax)) throw domain_error("curve grid requires tmin < tmax");
  if (points < 2) throw domain_error("curve grid requires points >= 2");
  std::vector<double> g(points);
  const double step = (tmax - tmin) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = tmin + step * static_cast<double>(i);
  g.back() = tmax;
  return g;
}

}  // namespace

CurveTable alg_curves(const ALGParams& p, double tmin, double tmax, std::size_t points,
                      Exec exec) {
  p.validate();
  CurveTable c;
  c.grid = linspace(tmin, tmax, points);
  c.pdf = alg_pdf_grid(p, c.grid, exec);
  c.cdf = alg_cdf_grid(p, c.grid, exec);
  c.hazard = alg_hazard_grid(p, c.grid, exec);
  return c;
}

CurveTable exg_curves(const ExGParams& p, double tmin, double tmax, std::size_t points,
                      Exec exec) {
  p.validate();
  CurveTable c;
  c.grid = linspace(tmin, tmax, points);
  c.pdf = exg_pdf_grid(p, c.grid, exec);
  c.cdf = grid_apply(c.grid, exec, [&](double x) { return exg_cdf(p, x); });
  c.hazard = grid_apply(c.grid, exec, [&](double x) { return exg_hazard(p, x); });
  return c;
}

}  // namespace alg::batch

namespace alg {

std::vector<double> sample_alg(const ALGParams& p, std::size_t n, std::uint64_t seed) {
  return batch::sample_alg(p, n, seed, batch::Exec::serial);
}

std::vector<double> sample_exg(const ExGParams& p, std::size_t n, std::uint64_t seed) {
  return batch::sample_exg(p, n, seed, batch::Exec::serial);
}

std::vector<double> sample_al(const ALParams& p, std::size_t n, std::uint64_t seed) {
  return batch::sample_al(p, n, seed, batch::Exec::serial);
}

}  // namespace alg
