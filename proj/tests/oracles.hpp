// Independent numerical oracles used by the tests: adaptive quadrature, a
// convolution-based density, KS statistic, finite differences and sample
// moments.  Nothing here calls the closed-form ALG/ExG kernels under test
// except where a test explicitly feeds them in.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace oracle {

// Adaptive Simpson quadrature with absolute tolerance.
inline double simpson_step(const std::function<double(double)>& f, double a,
                           double b, double fa, double fm, double fb, double whole,
                           double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int depth = 40) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, depth);
}

inline double normal_pdf(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * M_PI));
}

// Two-sided exponential-difference density written from first principles.
inline double al_pdf_direct(double alpha1, double alpha2, double t) {
  if (t < 0.0) return std::exp(t / alpha1) / (alpha1 + alpha2);
  return std::exp(-t / alpha2) / (alpha1 + alpha2);
}

// Convolution oracle: density of AL(alpha1, alpha2) + N(mu, sigma^2) at t,
// by quadrature over the Gaussian component.
inline double alg_pdf_conv(double alpha1, double alpha2, double mu, double sigma,
                           double t, double tol = 1e-13) {
  const auto f = [&](double z) {
    return normal_pdf(z, 0.0, sigma) * al_pdf_direct(alpha1, alpha2, t - mu - z);
  };
  // split at the AL kink t - mu so the integrand is smooth on each piece
  const double lo = -10.0 * sigma, hi = 10.0 * sigma;
  const double kink = t - mu;
  if (kink > lo && kink < hi)
    return integrate(f, lo, kink, tol) + integrate(f, kink, hi, tol);
  return integrate(f, lo, hi, tol);
}

// Same construction for Exp(tau) + N(mu, sigma^2).
inline double exg_pdf_conv(double mu, double sigma, double tau, double t,
                           double tol = 1e-13) {
  const auto f = [&](double z) {
    const double r = t - mu - z;
    return r < 0.0 ? 0.0 : normal_pdf(z, 0.0, sigma) * std::exp(-r / tau) / tau;
  };
  const double lo = -10.0 * sigma, hi = std::min(10.0 * sigma, t - mu);
  if (!(hi > lo)) return 0.0;
  return integrate(f, lo, hi, tol);
}

// One-sample Kolmogorov-Smirnov statistic against a CDF.
inline double ks_statistic(std::vector<double> sample,
                           const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double F = cdf(sample[i]);
    d = std::max(d, std::fabs(F - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - F));
  }
  return d;
}

inline double central_diff(const std::function<double(double)>& f, double x,
                           double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

struct Moments {
  double mean, variance, skewness, excess_kurtosis;
};

inline Moments sample_moments(std::span<const double> x) {
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
  return {mean, m2 * n / (n - 1.0), m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3.0};
}

}  // namespace oracle
