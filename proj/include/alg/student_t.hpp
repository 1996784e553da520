#pragma once

namespace alg {

/// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// Student-t CDF with `df` degrees of freedom.
double student_t_cdf(double t, double df);

/// Student-t quantile; |CDF(quantile(p)) - p| <= 1e-10.
double student_t_quantile(double p, double df);

}  // namespace alg
