#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "alg/params.hpp"

namespace alg {

// ---------------------------------------------------------------------------
// Ex-Gaussian
// ---------------------------------------------------------------------------

double exg_pdf(const ExGParams& p, double t);
double exg_log_pdf(const ExGParams& p, double t);
double exg_cdf(const ExGParams& p, double t);
double exg_sf(const ExGParams& p, double t);
double exg_hazard(const ExGParams& p, double t);
double exg_quantile(const ExGParams& p, double q);
ShapeStats exg_stats(const ExGParams& p);
double exg_cumulant(const ExGParams& p, int n);
/// log m(t), defined for t < 1/tau.
double exg_log_mgf(const ExGParams& p, double t);

// ---------------------------------------------------------------------------
// Asymmetric Laplace
// ---------------------------------------------------------------------------

double al_pdf(const ALParams& p, double t);
double al_cdf(const ALParams& p, double t);
double al_quantile(const ALParams& p, double q);
ShapeStats al_stats(const ALParams& p);
double al_cumulant(const ALParams& p, int n);
/// log m(t), defined for -1/alpha1 < t < 1/alpha2.
double al_log_mgf(const ALParams& p, double t);

// ---------------------------------------------------------------------------
// Asymmetric Laplace Gaussian
// ---------------------------------------------------------------------------

/// Build the ALG model of the differenced data from the type-A and type-B
/// Ex-Gaussian fits: (tau_A, tau_B, mu_B - mu_A, sqrt(sigma_B^2 + sigma_A^2)).
ALGParams alg_from_exg_pair(const ExGParams& a, const ExGParams& b);

double alg_pdf(const ALGParams& p, double t);
double alg_log_pdf(const ALGParams& p, double t);
double alg_cdf(const ALGParams& p, double t);
/// Survival function 1 - F(t), evaluated directly (no cancellation against 1).
double alg_sf(const ALGParams& p, double t);
double alg_quantile(const ALGParams& p, double q);
ShapeStats alg_stats(const ALGParams& p);
double alg_cumulant(const ALGParams& p, int n);
double alg_log_mgf(const ALGParams& p, double t);

struct HazardValue {
  double rate = 0.0;
  /// Set when t lies beyond the numerically stable range and the analytic
  /// tail limit 1/alpha2 was returned instead of the pdf/survival ratio.
  bool tail_limit = false;
};

HazardValue alg_hazard(const ALGParams& p, double t);

/// One of the uncountably many (type-A, type-B) Ex-Gaussian pairs mapping to
/// `p`: tau_A = alpha1, tau_B = alpha2, mu_A free, sigma^2 split by fraction.
std::pair<ExGParams, ExGParams> alg_decompose(const ALGParams& p, double mu_a,
                                              double sigma_split);

/// Classify skewness and kurtosis with a relative tolerance band (fitted
/// parameters never tie exactly).
ShapeClass classify_shape(const ALGParams& p, double tol = 0.05);

// ---------------------------------------------------------------------------
// Sampling (constructive, deterministic for a fixed seed)
// ---------------------------------------------------------------------------

std::vector<double> sample_exg(const ExGParams& p, std::size_t n, std::uint64_t seed);
std::vector<double> sample_al(const ALParams& p, std::size_t n, std::uint64_t seed);
std::vector<double> sample_alg(const ALGParams& p, std::size_t n, std::uint64_t seed);

}  // namespace alg
