#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "alg/batch.hpp"
#include "alg/params.hpp"

namespace alg {

template <typename Params, std::size_t NParams>
struct FitResult {
  Params params{};
  double log_likelihood = 0.0;
  std::optional<std::array<double, NParams>> se_estimates;
  bool converged = false;
  int iterations = 0;
  /// Set when an estimate sits at the degenerate boundary (alpha near zero:
  /// the ALG collapses toward its ExG special case).
  bool boundary = false;
};

using ExgFit = FitResult<ExGParams, 3>;
using AlgFit = FitResult<ALGParams, 4>;

/// Direct numerical ML fit of an Ex-Gaussian to a GORT sample.  Optimizes on
/// (mu, log sigma, log tau) from a method-of-moments start.
ExgFit fit_exg_ml(std::span<const double> sample,
                  batch::Exec exec = batch::Exec::parallel);

struct MomInit {
  ALGParams params{};
  /// True when the sample moments admit no ALG solution and the symmetric
  /// heuristic (alpha1 = alpha2 = stdev/2) was used instead.
  bool fallback = false;
};

/// Invert the ALG moment equations (mean, variance, skewness, excess
/// kurtosis) for (alpha1, alpha2, mu, sigma).
MomInit alg_moments_to_params(double mean, double variance, double skewness,
                              double excess_kurtosis);
MomInit alg_mom_init(std::span<const double> sample);

/// Direct numerical ML fit of an ALG model to a differenced-GORT sample.
AlgFit fit_alg_ml(std::span<const double> sample,
                  batch::Exec exec = batch::Exec::parallel);

struct McmcConfig {
  int chains = 3;
  int iterations = 20000;
  int burn_in = 5000;
  double prior_low = 10.0;
  double prior_high = 2000.0;
  std::uint64_t seed = 1;
  double proposal_scale = 0.05;  // log-scale step; adapted during burn-in

  void validate() const {
    if (chains < 1) throw invalid_parameter("McmcConfig: chains must be >= 1");
    if (burn_in < 0 || burn_in >= iterations)
      throw invalid_parameter("McmcConfig: burn_in must be in [0, iterations)");
    if (!(prior_low > 0.0 && prior_low < prior_high))
      throw invalid_parameter("McmcConfig: need 0 < prior_low < prior_high");
    if (!(proposal_scale > 0.0))
      throw invalid_parameter("McmcConfig: proposal_scale must be > 0");
  }
};

struct PosteriorSummary {
  ExGParams mean_params{};               // posterior means (point estimate)
  std::array<double, 3> sd_params{};     // posterior SDs (mu, sigma, tau)
  std::array<double, 3> rhat{};          // split-chain Gelman-Rubin
  std::array<double, 3> effective_samples{};
  double acceptance_rate = 0.0;
  bool convergence_warning = false;      // any R-hat > 1.05
};

/// Random-walk Metropolis fit of an Ex-Gaussian with uniform priors on
/// [prior_low, prior_high] per coordinate.  Chains run independently from
/// derived seeds (concurrently when OpenMP is enabled) and are merged in
/// chain order, so results are deterministic for a fixed config.
PosteriorSummary fit_exg_bayes(std::span<const double> sample, const McmcConfig& cfg);

}  // namespace alg
