#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "alg/params.hpp"
#include "alg/special.hpp"
#include "alg/student_t.hpp"

using namespace alg;

TEST_CASE("erfcx agrees with the direct product in the safe range") {
  CHECK(erfcx(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
    const double direct = std::exp(x * x) * std::erfc(x);
    CHECK(erfcx(x) == doctest::Approx(direct).epsilon(1e-13));
  }
}

TEST_CASE("erfcx asymptotic branch joins smoothly and follows 1/(x sqrt(pi))") {
  // both branches near the switch at x = 25, against reference values
  CHECK(erfcx(24.999999) == doctest::Approx(0.02254957333318686).epsilon(1e-12));
  CHECK(erfcx(25.000001) == doctest::Approx(0.02254957153209593).epsilon(1e-12));
  // leading-order behaviour deep in the tail
  for (double x : {30.0, 100.0, 1e4, 1e8}) {
    const double lead = 1.0 / (x * std::sqrt(M_PI));
    CHECK(erfcx(x) == doctest::Approx(lead).epsilon(1e-3));
    CHECK(erfcx(x) < lead);  // series alternates, first correction is negative
  }
}

TEST_CASE("erfcx negative-argument reflection") {
  for (double x : {-0.5, -1.0, -3.0, -10.0}) {
    const double expect = 2.0 * std::exp(x * x) - erfcx(-x);
    CHECK(erfcx(x) == doctest::Approx(expect).epsilon(1e-14));
  }
  CHECK(erfcx(-1.0) == doctest::Approx(std::exp(1.0) * std::erfc(-1.0)).epsilon(1e-13));
}

TEST_CASE("normal cdf/sf/pdf basics") {
  CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(norm_sf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(norm_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  CHECK(norm_pdf(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-15));
  for (double x : {-3.0, -1.0, 0.3, 2.5})
    CHECK(norm_cdf(x) + norm_sf(x) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("log_norm_sf stays finite and accurate far into the tail") {
  for (double x : {1.0, 5.0, 8.0, 20.0, 40.0, 100.0}) {
    const double lsf = log_norm_sf(x);
    CHECK(std::isfinite(lsf));
    // Mills-ratio form: log Phi_bar(x) = -x^2/2 + log(erfcx(x/sqrt 2)/2)
    const double expect = -0.5 * x * x + std::log(0.5 * erfcx(x * M_SQRT1_2));
    CHECK(lsf == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(std::exp(log_norm_sf(2.0)) == doctest::Approx(norm_sf(2.0)).epsilon(1e-13));
}

TEST_CASE("exp_phi_bar equals exp((b^2-z^2)/2) * (1 - Phi(b)) where both are safe") {
  for (double z : {-2.0, 0.0, 1.5, 3.0}) {
    for (double b : {-3.0, -0.5, 0.0, 1.0, 4.0}) {
      const double direct = std::exp(0.5 * (b * b - z * z)) * norm_sf(b);
      CHECK(exp_phi_bar(z, b) == doctest::Approx(direct).epsilon(1e-12));
      CHECK(log_exp_phi_bar(z, b) ==
            doctest::Approx(std::log(direct)).epsilon(1e-12));
    }
  }
}

TEST_CASE("exp_phi_bar does not overflow for large opposing arguments") {
  // b^2/2 alone would overflow exp; the paired kernel must not
  const double v = exp_phi_bar(40.0, 45.0);
  CHECK(std::isfinite(v));
  CHECK(v >= 0.0);
  CHECK(std::isfinite(exp_phi_bar(0.0, 700.0)));
  CHECK(std::isfinite(log_exp_phi_bar(0.0, 700.0)));
}

TEST_CASE("log_sum_exp") {
  CHECK(log_sum_exp(0.0, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(log_sum_exp(1000.0, 1000.0) ==
        doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-15));
  CHECK(log_sum_exp(-INFINITY, 3.0) == doctest::Approx(3.0));
  CHECK(log_sum_exp(5.0, -INFINITY) == doctest::Approx(5.0));
  CHECK(log_sum_exp(0.0, -800.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("incomplete beta endpoints and symmetry") {
  CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  // I_x(a,b) = 1 - I_{1-x}(b,a)
  for (double x : {0.1, 0.37, 0.5, 0.9})
    CHECK(incomplete_beta(2.5, 4.0, x) ==
          doctest::Approx(1.0 - incomplete_beta(4.0, 2.5, 1.0 - x)).epsilon(1e-13));
  // I_x(1,1) = x
  CHECK(incomplete_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-13));
}

TEST_CASE("student t cdf reference values") {
  // t with 1 df is Cauchy: F(1) = 3/4
  CHECK(student_t_cdf(1.0, 1.0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(student_t_cdf(0.0, 7.0) == doctest::Approx(0.5));
  // classical two-sided 5% critical value for df = 10
  CHECK(student_t_cdf(2.228138851986273, 10.0) ==
        doctest::Approx(0.975).epsilon(1e-10));
  for (double t : {-2.0, -0.3, 1.7})
    CHECK(student_t_cdf(t, 6.0) + student_t_cdf(-t, 6.0) ==
          doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("student t quantile round trips at the CI probabilities") {
  for (double df : {1.0, 5.0, 43.0, 100.0}) {
    for (double p : {0.025, 0.975}) {
      const double q = student_t_quantile(p, df);
      CHECK(student_t_cdf(q, df) == doctest::Approx(p).epsilon(1e-10));
    }
  }
  CHECK(student_t_quantile(0.975, 10.0) ==
        doctest::Approx(2.228138851986273).epsilon(1e-9));
  CHECK_THROWS_AS(student_t_quantile(0.0, 5.0), alg::domain_error);
  CHECK_THROWS_AS(student_t_quantile(0.5, -1.0), alg::domain_error);
}
