#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace alg {

// Scales (sigma, tau, alpha) below this are rejected by validate().  The
// degenerate ExG limit (alpha1 -> 0) is reached through the dedicated
// evaluation path, not through parameter objects.
inline constexpr double kMinScale = 1e-9;

class invalid_parameter : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class convergence_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Ex-Gaussian parameters: Normal(mu, sigma^2) + Exp(tau), all in ms.
struct ExGParams {
  double mu = 0.0;
  double sigma = 1.0;
  double tau = 1.0;

  void validate() const {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || !std::isfinite(tau))
      throw invalid_parameter("ExGParams: non-finite parameter");
    if (sigma < kMinScale) throw invalid_parameter("ExGParams: sigma must be > 0");
    if (tau < kMinScale) throw invalid_parameter("ExGParams: tau must be > 0");
  }
};

/// Asymmetric Laplace parameters: Exp(alpha2) - Exp(alpha1), scales in ms.
struct ALParams {
  double alpha1 = 1.0;
  double alpha2 = 1.0;

  void validate() const {
    if (!std::isfinite(alpha1) || !std::isfinite(alpha2))
      throw invalid_parameter("ALParams: non-finite parameter");
    if (alpha1 < kMinScale) throw invalid_parameter("ALParams: alpha1 must be > 0");
    if (alpha2 < kMinScale) throw invalid_parameter("ALParams: alpha2 must be > 0");
  }
};

/// Asymmetric Laplace Gaussian parameters: AL(alpha1, alpha2) + N(mu, sigma^2).
struct ALGParams {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double mu = 0.0;
  double sigma = 1.0;

  void validate() const {
    if (!std::isfinite(alpha1) || !std::isfinite(alpha2) || !std::isfinite(mu) ||
        !std::isfinite(sigma))
      throw invalid_parameter("ALGParams: non-finite parameter");
    if (alpha1 < kMinScale) throw invalid_parameter("ALGParams: alpha1 must be > 0");
    if (alpha2 < kMinScale) throw invalid_parameter("ALGParams: alpha2 must be > 0");
    if (sigma < kMinScale) throw invalid_parameter("ALGParams: sigma must be > 0");
  }

  ALParams laplace() const { return ALParams{alpha1, alpha2}; }
};

/// Descriptive and shape statistics of a distribution.
///
/// Kurtosis is reported twice because the source conventions differ: the ExG
/// and AL formulas are full kurtosis (Gaussian limit 3) while the ALG formula
/// is excess kurtosis (Gaussian limit 0).  `excess_kurtosis` is always the
/// standard excess value; `paper_convention_kurtosis` is whichever of the two
/// the family's reference formula produces.
struct ShapeStats {
  double mean = 0.0;
  double variance = 0.0;
  double stdev = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double paper_convention_kurtosis = 0.0;
};

enum class SkewClass { positive, symmetric, negative };
enum class KurtClass { leptokurtic, mesokurtic, platykurtic };

/// Shape classification of an ALG model.  `kurt_class` follows the reference
/// inequality sqrt(2(a1^4+a2^4)) - (a1^2+a2^2) vs sigma^2, which compares the
/// excess-style kurtosis value against 3; `kurt_class_excess` is the strict
/// excess-kurtosis-vs-0 classification.
struct ShapeClass {
  SkewClass skew_class = SkewClass::symmetric;
  KurtClass kurt_class = KurtClass::mesokurtic;
  KurtClass kurt_class_excess = KurtClass::mesokurtic;
};

inline const char* to_string(SkewClass c) {
  switch (c) {
    case SkewClass::positive: return "positive";
    case SkewClass::symmetric: return "symmetric";
    default: return "negative";
  }
}

inline const char* to_string(KurtClass c) {
  switch (c) {
    case KurtClass::leptokurtic: return "leptokurtic";
    case KurtClass::mesokurtic: return "mesokurtic";
    default: return "platykurtic";
  }
}

}  // namespace alg
