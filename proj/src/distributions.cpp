#include "alg/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "alg/special.hpp"

namespace alg {

namespace {

void check_finite_t(double t) {
  if (!std::isfinite(t)) throw domain_error("evaluation point must be finite");
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Bracketing inversion of a CDF: bisection with a secant step each iteration.
template <typename Cdf>
double invert_cdf(Cdf&& cdf, double mean, double stdev, double q) {
  if (!(q > 0.0 && q < 1.0)) throw domain_error("quantile level must be in (0,1)");
  double width = 8.0 * stdev;
  double lo = mean - width;
  double hi = mean + width;
  int guard = 0;
  while (cdf(lo) > q) {
    lo -= width;
    width *= 2.0;
    if (++guard > 200) throw convergence_error("quantile bracket expansion failed (low)");
  }
  width = 8.0 * stdev;
  guard = 0;
  while (cdf(hi) < q) {
    hi += width;
    width *= 2.0;
    if (++guard > 200) throw convergence_error("quantile bracket expansion failed (high)");
  }
  double flo = cdf(lo) - q;
  double fhi = cdf(hi) - q;
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    // Secant estimate, falling back to the midpoint when it leaves the bracket.
    double s = (fhi != flo) ? lo - flo * (hi - lo) / (fhi - flo) : t;
    if (!(s > lo && s < hi)) s = 0.5 * (lo + hi);
    t = s;
    const double ft = cdf(t) - q;
    if (std::fabs(ft) <= 1e-10) return t;
    if (ft < 0.0) {
      lo = t;
      flo = ft;
    } else {
      hi = t;
      fhi = ft;
    }
    if (hi - lo <= 1e-13 * (1.0 + std::fabs(t))) return t;
  }
  throw convergence_error("quantile iteration cap reached");
}

}  // namespace

// ---------------------------------------------------------------------------
// Ex-Gaussian
// ---------------------------------------------------------------------------

double exg_pdf(const ExGParams& p, double t) {
  p.validate();
  check_finite_t(t);
  const double z = (t - p.mu) / p.sigma;
  const double b = p.sigma / p.tau - z;
  return exp_phi_bar(z, b) / p.tau;
}

double exg_log_pdf(const ExGParams& p, double t) {
  p.validate();
  check_finite_t(t);
  const double z = (t - p.mu) / p.sigma;
  const double b = p.sigma / p.tau - z;
  return log_exp_phi_bar(z, b) - std::log(p.tau);
}

double exg_cdf(const ExGParams& p, double t) {
  p.validate();
  check_finite_t(t);
  const double z = (t - p.mu) / p.sigma;
  const double b = p.sigma / p.tau - z;
  const double f = norm_cdf(z) - exp_phi_bar(z, b);
  return std::clamp(f, 0.0, 1.0);
}

double exg_sf(const ExGParams& p, double t) {
  p.validate();
  check_finite_t(t);
  const double z = (t - p.mu) / p.sigma;
  const double b = p.sigma / p.tau - z;
  const double s = norm_sf(z) + exp_phi_bar(z, b);
  return std::clamp(s, 0.0, 1.0);
}

double exg_hazard(const ExGParams& p, double t) {
  const double f = exg_pdf(p, t);
  const double s = exg_sf(p, t);
  if (s > 0.0 && f > 0.0) {
    const double h = f / s;
    if (std::isfinite(h)) return h;
  }
  if (t <= p.mu) return f;  // survival is ~1 on the far left
  return 1.0 / p.tau;       // exponential tail limit
}

double exg_quantile(const ExGParams& p, double q) {
  p.validate();
  const ShapeStats s = exg_stats(p);
  return invert_cdf([&](double t) { return exg_cdf(p, t); }, s.mean, s.stdev, q);
}

ShapeStats exg_stats(const ExGParams& p) {
  p.validate();
  ShapeStats s;
  const double s2 = p.sigma * p.sigma;
  const double t2 = p.tau * p.tau;
  s.mean = p.mu + p.tau;
  s.variance = s2 + t2;
  s.stdev = std::sqrt(s.variance);
  s.skewness = 2.0 * std::pow(1.0 + s2 / t2, -1.5);
  const double r = t2 / s2;
  const double full = 3.0 * (1.0 + 2.0 * r + 3.0 * r * r) / ((1.0 + r) * (1.0 + r));
  s.paper_convention_kurtosis = full;
  s.excess_kurtosis = full - 3.0;
  return s;
}

double exg_cumulant(const ExGParams& p, int n) {
  p.validate();
  if (n < 1) throw domain_error("cumulant order must be >= 1");
  double k = factorial(n - 1) * std::pow(p.tau, n);
  if (n == 1) k += p.mu;
  if (n == 2) k += p.sigma * p.sigma;
  return k;
}

double exg_log_mgf(const ExGParams& p, double t) {
  p.validate();
  if (t >= 1.0 / p.tau) throw domain_error("MGF argument outside (-inf, 1/tau)");
  return -std::log1p(-t * p.tau) + p.mu * t + 0.5 * p.sigma * p.sigma * t * t;
}

// ---------------------------------------------------------------------------
// Asymmetric Laplace
// ---------------------------------------------------------------------------

double al_pdf(const ALParams& p, double t) {
  p.validate();
  check_finite_t(t);
  const double e = t < 0.0 ? std::exp(t / p.alpha1) : std::exp(-t / p.alpha2);
  return e / (p.alpha1 + p.alpha2);
}

double al_cdf(const ALParams& p, double t) {
  p.validate();
  check_finite_t(t);
  const double total = p.alpha1 + p.alpha2;
  if (t < 0.0) return p.alpha1 / total * std::exp(t / p.alpha1);
  return 1.0 - p.alpha2 / total * std::exp(-t / p.alpha2);
}

double al_quantile(const ALParams& p, double q) {
  p.validate();
  if (!(q > 0.0 && q < 1.0)) throw domain_error("quantile level must be in (0,1)");
  const double total = p.alpha1 + p.alpha2;
  const double mass_below_zero = p.alpha1 / total;
  if (q <= mass_below_zero) return p.alpha1 * std::log(q * total / p.alpha1);
  return -p.alpha2 * std::log((1.0 - q) * total / p.alpha2);
}

ShapeStats al_stats(const ALParams& p) {
  p.validate();
  ShapeStats s;
  const double a1 = p.alpha1, a2 = p.alpha2;
  const double a1sq = a1 * a1, a2sq = a2 * a2;
  s.mean = a2 - a1;
  s.variance = a1sq + a2sq;
  s.stdev = std::sqrt(s.variance);
  s.skewness = 2.0 * (a2 * a2sq - a1 * a1sq) / std::pow(s.variance, 1.5);
  const double full = 3.0 * (3.0 * a1sq * a1sq + 2.0 * a1sq * a2sq + 3.0 * a2sq * a2sq) /
                      (s.variance * s.variance);
  s.paper_convention_kurtosis = full;
  s.excess_kurtosis = full - 3.0;
  return s;
}

double al_cumulant(const ALParams& p, int n) {
  p.validate();
  if (n < 1) throw domain_error("cumulant order must be >= 1");
  return factorial(n - 1) * (std::pow(-p.alpha1, n) + std::pow(p.alpha2, n));
}

double al_log_mgf(const ALParams& p, double t) {
  p.validate();
  if (t <= -1.0 / p.alpha1 || t >= 1.0 / p.alpha2)
    throw domain_error("MGF argument outside (-1/alpha1, 1/alpha2)");
  return -std::log1p((p.alpha1 - p.alpha2) * t - p.alpha1 * p.alpha2 * t * t);
}

// ---------------------------------------------------------------------------
// Asymmetric Laplace Gaussian
// ---------------------------------------------------------------------------

ALGParams alg_from_exg_pair(const ExGParams& a, const ExGParams& b) {
  a.validate();
  b.validate();
  ALGParams p;
  p.alpha1 = a.tau;
  p.alpha2 = b.tau;
  p.mu = b.mu - a.mu;
  p.sigma = std::sqrt(b.sigma * b.sigma + a.sigma * a.sigma);
  return p;
}

namespace {

// Shared kernel arguments for the two exp*(1-Phi) terms of the closed forms.
struct AlgTerms {
  double z;   // (t - mu) / sigma
  double b1;  // sigma/alpha1 + z
  double b2;  // sigma/alpha2 - z
};

AlgTerms alg_terms(const ALGParams& p, double t) {
  const double z = (t - p.mu) / p.sigma;
  return {z, p.sigma / p.alpha1 + z, p.sigma / p.alpha2 - z};
}

}  // namespace

double alg_pdf(const ALGParams& p, double t) {
  p.validate();
  check_finite_t(t);
  const AlgTerms a = alg_terms(p, t);
  return (exp_phi_bar(a.z, a.b2) + exp_phi_bar(a.z, a.b1)) / (p.alpha1 + p.alpha2);
}

double alg_log_pdf(const ALGParams& p, double t) {
  p.validate();
  check_finite_t(t);
  const AlgTerms a = alg_terms(p, t);
  return log_sum_exp(log_exp_phi_bar(a.z, a.b2), log_exp_phi_bar(a.z, a.b1)) -
         std::log(p.alpha1 + p.alpha2);
}

double alg_cdf(const ALGParams& p, double t) {
  p.validate();
  check_finite_t(t);
  const AlgTerms a = alg_terms(p, t);
  const double total = p.alpha1 + p.alpha2;
  const double f = norm_cdf(a.z) - p.alpha2 / total * exp_phi_bar(a.z, a.b2) +
                   p.alpha1 / total * exp_phi_bar(a.z, a.b1);
  return std::clamp(f, 0.0, 1.0);
}

double alg_sf(const ALGParams& p, double t) {
  p.validate();
  check_finite_t(t);
  const AlgTerms a = alg_terms(p, t);
  const double total = p.alpha1 + p.alpha2;
  const double s = norm_sf(a.z) + p.alpha2 / total * exp_phi_bar(a.z, a.b2) -
                   p.alpha1 / total * exp_phi_bar(a.z, a.b1);
  return std::clamp(s, 0.0, 1.0);
}

double alg_quantile(const ALGParams& p, double q) {
  p.validate();
  const ShapeStats s = alg_stats(p);
  return invert_cdf([&](double t) { return alg_cdf(p, t); }, s.mean, s.stdev, q);
}

ShapeStats alg_stats(const ALGParams& p) {
  p.validate();
  ShapeStats s;
  const double a1 = p.alpha1, a2 = p.alpha2;
  const double a1sq = a1 * a1, a2sq = a2 * a2;
  s.mean = a2 - a1 + p.mu;
  s.variance = a1sq + a2sq + p.sigma * p.sigma;
  s.stdev = std::sqrt(s.variance);
  s.skewness = 2.0 * (a2 * a2sq - a1 * a1sq) / std::pow(s.variance, 1.5);
  s.excess_kurtosis = 6.0 * (a1sq * a1sq + a2sq * a2sq) / (s.variance * s.variance);
  s.paper_convention_kurtosis = s.excess_kurtosis;
  return s;
}

double alg_cumulant(const ALGParams& p, int n) {
  p.validate();
  if (n < 1) throw domain_error("cumulant order must be >= 1");
  double k = factorial(n - 1) * (std::pow(-p.alpha1, n) + std::pow(p.alpha2, n));
  if (n == 1) k += p.mu;
  if (n == 2) k += p.sigma * p.sigma;
  return k;
}

double alg_log_mgf(const ALGParams& p, double t) {
  p.validate();
  return al_log_mgf(p.laplace(), t) + p.mu * t + 0.5 * p.sigma * p.sigma * t * t;
}

HazardValue alg_hazard(const ALGParams& p, double t) {
  p.validate();
  check_finite_t(t);
  const double f = alg_pdf(p, t);
  const double s = alg_sf(p, t);
  if (s > 0.0 && f > 0.0) {
    const double h = f / s;
    if (std::isfinite(h)) return {h, false};
  }
  if (t <= p.mu) return {f > 0.0 ? f : 0.0, false};  // left tail: survival is ~1
  // Right tail beyond the representable range of both pdf and survival.
  return {1.0 / p.alpha2, true};
}

std::pair<ExGParams, ExGParams> alg_decompose(const ALGParams& p, double mu_a,
                                              double sigma_split) {
  p.validate();
  if (!std::isfinite(mu_a)) throw domain_error("mu_a must be finite");
  if (!(sigma_split > 0.0 && sigma_split < 1.0))
    throw domain_error("sigma_split must be in (0,1)");
  const double var = p.sigma * p.sigma;
  ExGParams a{mu_a, std::sqrt(sigma_split * var), p.alpha1};
  ExGParams b{p.mu + mu_a, std::sqrt((1.0 - sigma_split) * var), p.alpha2};
  return {a, b};
}

ShapeClass classify_shape(const ALGParams& p, double tol) {
  p.validate();
  if (!(tol >= 0.0)) throw domain_error("tolerance must be >= 0");
  ShapeClass c;
  const double a1 = p.alpha1, a2 = p.alpha2;
  const double band = tol * std::max(a1, a2);
  if (std::fabs(a2 - a1) <= band)
    c.skew_class = SkewClass::symmetric;
  else
    c.skew_class = a2 > a1 ? SkewClass::positive : SkewClass::negative;

  // Leptokurtic iff sqrt(2(a1^4 + a2^4)) - (a1^2 + a2^2) > sigma^2, i.e. the
  // excess-style kurtosis value exceeds 3.
  const double lhs = std::sqrt(2.0 * (a1 * a1 * a1 * a1 + a2 * a2 * a2 * a2)) -
                     (a1 * a1 + a2 * a2);
  const double rhs = p.sigma * p.sigma;
  const double kband = tol * std::max(std::fabs(lhs), rhs);
  if (std::fabs(lhs - rhs) <= kband)
    c.kurt_class = KurtClass::mesokurtic;
  else
    c.kurt_class = lhs > rhs ? KurtClass::leptokurtic : KurtClass::platykurtic;

  const double excess = alg_stats(p).excess_kurtosis;
  if (excess > 0.0)
    c.kurt_class_excess = KurtClass::leptokurtic;
  else if (excess < 0.0)
    c.kurt_class_excess = KurtClass::platykurtic;
  else
    c.kurt_class_excess = KurtClass::mesokurtic;
  return c;
}

}  // namespace alg
