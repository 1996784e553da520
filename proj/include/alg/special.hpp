#pragma once

#include <cmath>

namespace alg {

/// Scaled complementary error function exp(x^2) * erfc(x).
///
/// For x <= 25 the direct product is accurate (glibc erfc is ~1 ulp and the
/// exp amplification stays below ~1e-13 relative).  Beyond that erfc
/// underflows, so the asymptotic expansion takes over.
inline double erfcx(double x) {
  if (x < 0.0) {
    // erfcx(-x) = 2 exp(x^2) - erfcx(x); overflows for x < ~ -26.6.
    return 2.0 * std::exp(x * x) - erfcx(-x);
  }
  if (x <= 25.0) return std::exp(x * x) * std::erfc(x);
  // erfcx(x) ~ 1/(x sqrt(pi)) * sum_k (-1)^k (2k-1)!! / (2x^2)^k
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 8; ++k) {
    term *= -(2.0 * k - 1.0) * inv2x2;
    sum += term;
  }
  return sum / (x * 1.7724538509055160273);  // sqrt(pi)
}

/// Standard normal CDF.
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

/// Standard normal survival function 1 - Phi(x).
inline double norm_sf(double x) { return 0.5 * std::erfc(x * M_SQRT1_2); }

/// Standard normal density.
inline double norm_pdf(double x) {
  return 0.3989422804014326779 * std::exp(-0.5 * x * x);
}

/// log Phi(x), stable for arbitrarily negative x.
inline double log_norm_cdf(double x) {
  if (x > -8.0) return std::log(norm_cdf(x));
  // Phi(x) = 0.5 exp(-x^2/2) erfcx(-x/sqrt(2)) for x < 0.
  return -0.5 * x * x + std::log(0.5 * erfcx(-x * M_SQRT1_2));
}

/// log(1 - Phi(x)), stable for arbitrarily positive x.
inline double log_norm_sf(double x) { return log_norm_cdf(-x); }

/// Stable evaluation of exp((b^2 - z^2)/2) * (1 - Phi(b)).
///
/// Every exp-times-Gaussian-tail term in the ExG/ALG closed forms has this
/// shape with (b^2 - z^2)/2 equal to its exponent, which keeps the kernel
/// free of overflow on both branches: for b >= 0 the erfcx factoring applies,
/// and for b < 0 the exponent is necessarily nonpositive.
inline double exp_phi_bar(double z, double b) {
  if (b >= 0.0) return 0.5 * erfcx(b * M_SQRT1_2) * std::exp(-0.5 * z * z);
  return std::exp(0.5 * (b * b - z * z)) * (0.5 * std::erfc(b * M_SQRT1_2));
}

/// log of exp_phi_bar(z, b).
inline double log_exp_phi_bar(double z, double b) {
  if (b >= 0.0) return -0.5 * z * z + std::log(0.5 * erfcx(b * M_SQRT1_2));
  return 0.5 * (b * b - z * z) + std::log(0.5 * std::erfc(b * M_SQRT1_2));
}

/// log(exp(a) + exp(b)) without overflow.
inline double log_sum_exp(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp(-(std::fabs(a - b))));
}

}  // namespace alg
