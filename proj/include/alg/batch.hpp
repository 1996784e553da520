#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "alg/distributions.hpp"
#include "alg/params.hpp"

namespace alg::batch {

/// Execution policy for the bulk kernels.  Serial and parallel paths produce
/// bit-identical results (fixed chunking, ordered reduction), so the serial
/// path doubles as the reference implementation in tests and benchmarks.
enum class Exec { serial, parallel };

std::vector<double> alg_pdf_grid(const ALGParams& p, std::span<const double> t,
                                 Exec exec = Exec::parallel);
std::vector<double> alg_cdf_grid(const ALGParams& p, std::span<const double> t,
                                 Exec exec = Exec::parallel);
std::vector<double> alg_hazard_grid(const ALGParams& p, std::span<const double> t,
                                    Exec exec = Exec::parallel);
std::vector<double> exg_pdf_grid(const ExGParams& p, std::span<const double> t,
                                 Exec exec = Exec::parallel);

/// Sum of log-densities over a sample.  Chunked pairwise accumulation keeps
/// the result independent of thread count.
double alg_log_lik(const ALGParams& p, std::span<const double> sample,
                   Exec exec = Exec::parallel);
double exg_log_lik(const ExGParams& p, std::span<const double> sample,
                   Exec exec = Exec::parallel);

/// Bulk samplers; same sequence for a given seed on either execution path.
std::vector<double> sample_alg(const ALGParams& p, std::size_t n, std::uint64_t seed,
                               Exec exec);
std::vector<double> sample_exg(const ExGParams& p, std::size_t n, std::uint64_t seed,
                               Exec exec);
std::vector<double> sample_al(const ALParams& p, std::size_t n, std::uint64_t seed,
                              Exec exec);

/// Evenly spaced grid with pdf, cdf and hazard columns (plot-ready).
struct CurveTable {
  std::vector<double> grid;
  std::vector<double> pdf;
  std::vector<double> cdf;
  std::vector<double> hazard;
};

CurveTable alg_curves(const ALGParams& p, double tmin, double tmax, std::size_t points,
                      Exec exec = Exec::parallel);
CurveTable exg_curves(const ExGParams& p, double tmin, double tmax, std::size_t points,
                      Exec exec = Exec::parallel);

}  // namespace alg::batch
