#include "alg/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "alg/distributions.hpp"
#include "alg/rng.hpp"
#include "alg/simplex.hpp"
#include "alg/special.hpp"

namespace alg {

namespace {

struct SampleMoments {
  double mean, variance, stdev, m3, m4, skewness, excess_kurtosis;
};

SampleMoments sample_moments(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  SampleMoments s;
  s.mean = mean;
  s.variance = m2 * n / (n - 1.0);
  s.stdev = std::sqrt(s.variance);
  s.m3 = m3;
  s.m4 = m4;
  s.skewness = m3 / std::pow(m2, 1.5);
  s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  return s;
}

void require_sample(std::span<const double> x, std::size_t min_size, bool positive) {
  if (x.size() < min_size)
    throw domain_error("too few observations (need at least " +
                       std::to_string(min_size) + ")");
  for (double v : x) {
    if (!std::isfinite(v)) throw domain_error("sample contains non-finite value");
    if (positive && v <= 0.0) throw domain_error("sample contains non-positive value");
  }
}

// Numerical Hessian of `f` at `x` (central differences), inverted in place to
// a covariance; returns false if the Hessian is not positive definite.
template <std::size_t N, typename F>
bool covariance_from_hessian(F&& f, const std::array<double, N>& x,
                             std::array<double, N>& se) {
  double h[N];
  for (std::size_t i = 0; i < N; ++i) h[i] = 1e-4 * (1.0 + std::fabs(x[i]));
  double hess[N][N];
  const double f0 = f(x);
  for (std::size_t i = 0; i < N; ++i) {
    auto xp = x, xm = x;
    xp[i] += h[i];
    xm[i] -= h[i];
    hess[i][i] = (f(xp) - 2.0 * f0 + f(xm)) / (h[i] * h[i]);
    for (std::size_t j = i + 1; j < N; ++j) {
      auto xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[i] += h[i]; xpp[j] += h[j];
      xpm[i] += h[i]; xpm[j] -= h[j];
      xmp[i] -= h[i]; xmp[j] += h[j];
      xmm[i] -= h[i]; xmm[j] -= h[j];
      hess[i][j] = hess[j][i] =
          (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h[i] * h[j]);
    }
  }
  // Cholesky-based inversion of the (hopefully PD) Hessian.
  double L[N][N] = {};
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = hess[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
      if (i == j) {
        if (s <= 0.0 || !std::isfinite(s)) return false;
        L[i][i] = std::sqrt(s);
      } else {
        L[i][j] = s / L[j][j];
      }
    }
  }
  // Variance of coordinate i is the squared norm of row i of inv(L).
  for (std::size_t i = 0; i < N; ++i) {
    double col[N] = {};
    // Solve L y = e_i, then L^T z = y; var_i = z_i of the inverse, but we only
    // need diag(inv(H)) = sum_k invL[k][i]^2 over the full back-substitution.
    double y[N] = {};
    for (std::size_t r = 0; r < N; ++r) {
      double s = (r == i) ? 1.0 : 0.0;
      for (std::size_t k = 0; k < r; ++k) s -= L[r][k] * y[k];
      y[r] = s / L[r][r];
    }
    double z[N] = {};
    for (std::size_t r = N; r-- > 0;) {
      double s = y[r];
      for (std::size_t k = r + 1; k < N; ++k) s -= L[k][r] * z[k];
      z[r] = s / L[r][r];
    }
    (void)col;
    if (z[i] <= 0.0 || !std::isfinite(z[i])) return false;
    se[i] = std::sqrt(z[i]);
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ex-Gaussian ML
// ---------------------------------------------------------------------------

ExgFit fit_exg_ml(std::span<const double> sample, batch::Exec exec) {
  require_sample(sample, 10, /*positive=*/true);
  const SampleMoments m = sample_moments(sample);
  if (!(m.stdev > 0.0))
    throw domain_error("degenerate sample: zero variance (sigma, tau -> 0)");

  // Moment start: tau from the third central moment, then sigma, mu.
  double tau0 = std::cbrt(std::max(m.m3, 1e-12) / 2.0);
  tau0 = std::clamp(tau0, 0.05 * m.stdev, 0.95 * m.stdev);
  const double sigma0 =
      std::sqrt(std::max(m.variance - tau0 * tau0, 0.0025 * m.variance));
  const double mu0 = m.mean - tau0;

  auto objective = [&](const std::vector<double>& x) {
    ExGParams p{x[0], std::exp(x[1]), std::exp(x[2])};
    if (p.sigma < kMinScale || p.tau < kMinScale) return 1e300;
    return -batch::exg_log_lik(p, sample, exec);
  };

  SimplexResult r = nelder_mead(objective, {mu0, std::log(sigma0), std::log(tau0)},
                                {0.5 * m.stdev, 0.2, 0.2});

  ExgFit fit;
  fit.params = ExGParams{r.x[0], std::exp(r.x[1]), std::exp(r.x[2])};
  fit.log_likelihood = -r.fmin;
  fit.converged = r.converged;
  fit.iterations = r.evaluations;

  std::array<double, 3> se{};
  auto nll_nat = [&](const std::array<double, 3>& x) {
    ExGParams p{x[0], x[1], x[2]};
    if (p.sigma < kMinScale || p.tau < kMinScale) return 1e300;
    return -batch::exg_log_lik(p, sample, exec);
  };
  if (covariance_from_hessian<3>(nll_nat,
                                 {fit.params.mu, fit.params.sigma, fit.params.tau},
                                 se))
    fit.se_estimates = se;
  return fit;
}

// ---------------------------------------------------------------------------
// ALG method of moments
// ---------------------------------------------------------------------------

MomInit alg_moments_to_params(double mean, double variance, double skewness,
                              double excess_kurtosis) {
  if (!(variance > 0.0)) throw domain_error("variance must be positive");
  MomInit out;
  const double stdev = std::sqrt(variance);
  // Target equations: alpha2^3 - alpha1^3 = A, alpha1^4 + alpha2^4 = B.
  const double A = 0.5 * skewness * variance * stdev;
  const double B = excess_kurtosis * variance * variance / 6.0;

  auto fallback = [&] {
    out.fallback = true;
    const double a = 0.5 * stdev;
    const double s2 = std::max(variance - 2.0 * a * a, 1e-12 * variance);
    out.params = ALGParams{a, a, mean, std::sqrt(s2)};
    return out;
  };

  if (!(B > 0.0) || std::fabs(A) > std::pow(B, 0.75)) return fallback();

  // g(alpha1) = (B - alpha1^4)^{3/4} - alpha1^3 - A is strictly decreasing on
  // [0, B^{1/4}] with g(0) >= 0, so bisection finds the unique root.
  double lo = 0.0, hi = std::pow(B, 0.25);
  for (int it = 0; it < 200; ++it) {
    const double a1 = 0.5 * (lo + hi);
    const double g = std::pow(B - a1 * a1 * a1 * a1, 0.75) - a1 * a1 * a1 - A;
    (g >= 0.0 ? lo : hi) = a1;
  }
  const double a1 = 0.5 * (lo + hi);
  const double a2 = std::pow(B - a1 * a1 * a1 * a1, 0.25);
  const double s2 = variance - a1 * a1 - a2 * a2;
  if (!(s2 > 0.0) || a1 < kMinScale || a2 < kMinScale) return fallback();
  out.params = ALGParams{a1, a2, mean - (a2 - a1), std::sqrt(s2)};
  return out;
}

MomInit alg_mom_init(std::span<const double> sample) {
  require_sample(sample, 20, /*positive=*/false);
  const SampleMoments m = sample_moments(sample);
  if (!(m.stdev > 0.0)) throw domain_error("degenerate sample: zero variance");
  return alg_moments_to_params(m.mean, m.variance, m.skewness, m.excess_kurtosis);
}

// ---------------------------------------------------------------------------
// ALG ML
// ---------------------------------------------------------------------------

namespace {

// Log-density evaluated without parameter validation so the optimizer can
// probe the degenerate boundary (tiny alpha) continuously.
double alg_log_pdf_raw(double a1, double a2, double mu, double sigma, double t) {
  const double z = (t - mu) / sigma;
  const double b1 = sigma / a1 + z;
  const double b2 = sigma / a2 - z;
  return log_sum_exp(log_exp_phi_bar(z, b2), log_exp_phi_bar(z, b1)) -
         std::log(a1 + a2);
}

double alg_log_lik_raw(double a1, double a2, double mu, double sigma,
                       std::span<const double> sample, batch::Exec exec) {
  constexpr std::size_t kChunk = 4096;
  const std::size_t n = sample.size();
  const std::ptrdiff_t nchunks = static_cast<std::ptrdiff_t>((n + kChunk - 1) / kChunk);
  std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);
  const bool par = exec == batch::Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t c = 0; c < nchunks; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
    const std::size_t end = std::min(begin + kChunk, n);
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i)
      acc += alg_log_pdf_raw(a1, a2, mu, sigma, sample[i]);
    partial[static_cast<std::size_t>(c)] = acc;
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

}  // namespace

AlgFit fit_alg_ml(std::span<const double> sample, batch::Exec exec) {
  require_sample(sample, 20, /*positive=*/false);
  const SampleMoments m = sample_moments(sample);
  if (!(m.stdev > 0.0)) throw domain_error("degenerate sample: zero variance");
  const MomInit init = alg_mom_init(sample);

  const double floor_alpha = 1e-9;
  auto objective = [&](const std::vector<double>& x) {
    const double a1 = std::max(std::exp(x[0]), floor_alpha);
    const double a2 = std::max(std::exp(x[1]), floor_alpha);
    const double sigma = std::exp(x[3]);
    if (sigma < kMinScale) return 1e300;
    const double ll = alg_log_lik_raw(a1, a2, x[2], sigma, sample, exec);
    return std::isfinite(ll) ? -ll : 1e300;
  };

  std::vector<double> x0 = {std::log(init.params.alpha1), std::log(init.params.alpha2),
                            init.params.mu, std::log(init.params.sigma)};
  SimplexResult r = nelder_mead(objective, x0, {0.3, 0.3, 0.25 * m.stdev, 0.3});

  AlgFit fit;
  fit.params = ALGParams{std::max(std::exp(r.x[0]), floor_alpha),
                         std::max(std::exp(r.x[1]), floor_alpha), r.x[2],
                         std::exp(r.x[3])};
  fit.log_likelihood = -r.fmin;
  fit.converged = r.converged;
  fit.iterations = r.evaluations;
  // Boundary diagnosis: the surface is almost flat in a tail scale that the
  // data do not need, so a small fitted value alone is not conclusive.  Flag
  // when collapsing either alpha to the floor costs almost no likelihood.
  fit.boundary = std::min(fit.params.alpha1, fit.params.alpha2) < 0.01 * m.stdev;
  if (!fit.boundary) {
    const double small = std::min(fit.params.alpha1, fit.params.alpha2);
    if (small < 0.2 * m.stdev) {
      // candidate: profile likelihood with the small alpha pinned at the floor
      const bool drop1 = fit.params.alpha1 <= fit.params.alpha2;
      auto profile = [&](const std::vector<double>& x) {
        const double a = std::max(std::exp(x[0]), floor_alpha);
        const double sigma = std::exp(x[2]);
        if (sigma < kMinScale) return 1e300;
        const double ll = drop1
            ? alg_log_lik_raw(floor_alpha, a, x[1], sigma, sample, exec)
            : alg_log_lik_raw(a, floor_alpha, x[1], sigma, sample, exec);
        return std::isfinite(ll) ? -ll : 1e300;
      };
      std::vector<double> px = {
          std::log(drop1 ? fit.params.alpha2 : fit.params.alpha1), fit.params.mu,
          std::log(fit.params.sigma)};
      SimplexOptions popt;
      popt.max_evals = 800;
      popt.restarts = 0;
      const SimplexResult pr =
          nelder_mead(profile, px, {0.2, 0.2 * m.stdev, 0.2}, popt);
      if (fit.log_likelihood - (-pr.fmin) < 2.0) fit.boundary = true;
    }
  }

  if (!fit.boundary) {
    std::array<double, 4> se{};
    auto nll_nat = [&](const std::array<double, 4>& x) {
      if (x[0] < kMinScale || x[1] < kMinScale || x[3] < kMinScale) return 1e300;
      const double ll = alg_log_lik_raw(x[0], x[1], x[2], x[3], sample, exec);
      return std::isfinite(ll) ? -ll : 1e300;
    };
    if (covariance_from_hessian<4>(nll_nat,
                                   {fit.params.alpha1, fit.params.alpha2,
                                    fit.params.mu, fit.params.sigma},
                                   se))
      fit.se_estimates = se;
  }
  return fit;
}

// ---------------------------------------------------------------------------
// Individual Bayesian fit (random-walk Metropolis)
// ---------------------------------------------------------------------------

namespace {

struct ChainDraws {
  std::vector<std::array<double, 3>> draws;  // post-burn-in only
  double acceptance = 0.0;
};

ChainDraws run_chain(std::span<const double> sample, const McmcConfig& cfg,
                     std::uint64_t seed) {
  SplitMix64 g(seed);
  const double lo = cfg.prior_low, hi = cfg.prior_high;

  auto log_post = [&](const std::array<double, 3>& th) {
    ExGParams p{th[0], th[1], th[2]};
    double ll = 0.0;
    for (double v : sample) ll += exg_log_pdf(p, v);
    return ll;  // flat prior inside the box
  };

  // Start from moment estimates clamped into the prior box, jittered so
  // chains are over-dispersed.
  const SampleMoments m = sample_moments(sample);
  std::array<double, 3> theta = {
      std::clamp(m.mean - 0.5 * m.stdev, lo, hi),
      std::clamp(0.7 * m.stdev, lo, hi),
      std::clamp(0.5 * m.stdev, lo, hi)};
  for (double& v : theta) v = std::clamp(v * std::exp(0.2 * g.normal()), lo, hi);

  double lp = log_post(theta);
  std::array<double, 3> scale = {cfg.proposal_scale, cfg.proposal_scale,
                                 cfg.proposal_scale};
  std::array<int, 3> window_accepts = {0, 0, 0};
  int window = 0;
  long long accepts = 0, proposals = 0;

  ChainDraws out;
  out.draws.reserve(static_cast<std::size_t>(cfg.iterations - cfg.burn_in));

  for (int it = 0; it < cfg.iterations; ++it) {
    for (int c = 0; c < 3; ++c) {
      auto prop = theta;
      prop[c] = theta[c] * std::exp(scale[c] * g.normal());
      ++proposals;
      if (prop[c] < lo || prop[c] > hi) continue;  // prior mass zero
      const double lp_prop = log_post(prop);
      // Hastings correction for the multiplicative (log-scale) walk.
      const double log_ratio = lp_prop - lp + std::log(prop[c] / theta[c]);
      if (std::log(g.u01()) < log_ratio) {
        theta = prop;
        lp = lp_prop;
        ++accepts;
        if (it < cfg.burn_in) ++window_accepts[c];
      }
    }
    if (it < cfg.burn_in) {
      if (++window == 100) {
        for (int c = 0; c < 3; ++c) {
          const double rate = window_accepts[c] / 100.0;
          if (rate > 0.45) scale[c] *= 1.2;
          else if (rate < 0.25) scale[c] /= 1.2;
          window_accepts[c] = 0;
        }
        window = 0;
      }
    } else {
      out.draws.push_back(theta);
    }
  }
  out.acceptance = proposals > 0 ? static_cast<double>(accepts) / proposals : 0.0;
  return out;
}

// Split-chain Gelman-Rubin statistic for one coordinate.
double split_rhat(const std::vector<ChainDraws>& chains, int coord) {
  std::vector<std::pair<double, double>> seq_stats;  // (mean, variance)
  for (const auto& ch : chains) {
    const std::size_t n = ch.draws.size();
    const std::size_t half = n / 2;
    for (int part = 0; part < 2; ++part) {
      const std::size_t b = part == 0 ? 0 : n - half;
      double mean = 0.0;
      for (std::size_t i = b; i < b + half; ++i) mean += ch.draws[i][coord];
      mean /= static_cast<double>(half);
      double var = 0.0;
      for (std::size_t i = b; i < b + half; ++i) {
        const double d = ch.draws[i][coord] - mean;
        var += d * d;
      }
      var /= static_cast<double>(half - 1);
      seq_stats.emplace_back(mean, var);
    }
  }
  const double mseq = static_cast<double>(seq_stats.size());
  const double nseq = static_cast<double>(chains.front().draws.size() / 2);
  double grand = 0.0;
  for (auto& s : seq_stats) grand += s.first;
  grand /= mseq;
  double B = 0.0, W = 0.0;
  for (auto& s : seq_stats) {
    B += (s.first - grand) * (s.first - grand);
    W += s.second;
  }
  B *= nseq / (mseq - 1.0);
  W /= mseq;
  if (W <= 0.0) return 1.0;
  const double V = (nseq - 1.0) / nseq * W + B / nseq;
  return std::sqrt(V / W);
}

double effective_samples(const std::vector<ChainDraws>& chains, int coord) {
  // Mean autocorrelation across chains, initial positive sequence cutoff.
  const std::size_t n = chains.front().draws.size();
  const std::size_t max_lag = std::min<std::size_t>(n / 2, 500);
  double total_draws = 0.0;
  std::vector<double> rho(max_lag, 0.0);
  for (const auto& ch : chains) {
    double mean = 0.0;
    for (const auto& d : ch.draws) mean += d[coord];
    mean /= static_cast<double>(ch.draws.size());
    double c0 = 0.0;
    for (const auto& d : ch.draws) {
      const double v = d[coord] - mean;
      c0 += v * v;
    }
    c0 /= static_cast<double>(ch.draws.size());
    if (c0 <= 0.0) continue;
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
      double ck = 0.0;
      for (std::size_t i = 0; i + lag < ch.draws.size(); ++i)
        ck += (ch.draws[i][coord] - mean) * (ch.draws[i + lag][coord] - mean);
      ck /= static_cast<double>(ch.draws.size());
      rho[lag - 1] += ck / c0;
    }
    total_draws += static_cast<double>(ch.draws.size());
  }
  double sum = 0.0;
  for (std::size_t lag = 0; lag < max_lag; ++lag) {
    const double r = rho[lag] / static_cast<double>(chains.size());
    if (r <= 0.0) break;
    sum += r;
  }
  return total_draws / (1.0 + 2.0 * sum);
}

}  // namespace

PosteriorSummary fit_exg_bayes(std::span<const double> sample, const McmcConfig& cfg) {
  cfg.validate();
  require_sample(sample, 10, /*positive=*/true);

  std::vector<ChainDraws> chains(static_cast<std::size_t>(cfg.chains));
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < cfg.chains; ++c)
    chains[static_cast<std::size_t>(c)] =
        run_chain(sample, cfg, derive_seed(cfg.seed, static_cast<std::uint64_t>(c)));

  PosteriorSummary s;
  double total = 0.0;
  std::array<double, 3> mean{}, sq{};
  for (const auto& ch : chains) {
    for (const auto& d : ch.draws) {
      for (int c = 0; c < 3; ++c) mean[c] += d[c];
      total += 1.0;
    }
  }
  for (int c = 0; c < 3; ++c) mean[c] /= total;
  for (const auto& ch : chains)
    for (const auto& d : ch.draws)
      for (int c = 0; c < 3; ++c) sq[c] += (d[c] - mean[c]) * (d[c] - mean[c]);
  for (int c = 0; c < 3; ++c) s.sd_params[c] = std::sqrt(sq[c] / (total - 1.0));
  s.mean_params = ExGParams{mean[0], mean[1], mean[2]};

  double acc = 0.0;
  for (const auto& ch : chains) acc += ch.acceptance;
  s.acceptance_rate = acc / static_cast<double>(chains.size());

  for (int c = 0; c < 3; ++c) {
    s.rhat[c] = cfg.chains > 1 || chains.front().draws.size() >= 4
                    ? split_rhat(chains, c)
                    : 1.0;
    s.effective_samples[c] = effective_samples(chains, c);
  }
  s.convergence_warning =
      s.rhat[0] > 1.05 || s.rhat[1] > 1.05 || s.rhat[2] > 1.05;
  return s;
}

}  // namespace alg
