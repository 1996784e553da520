#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alg/distributions.hpp"
#include "alg/params.hpp"

namespace alg {

/// Per-participant Ex-Gaussian fits for the three clusters.
struct ParticipantParams {
  std::string id;
  ExGParams theta_s;  // whole session
  ExGParams theta_a;  // trials preceded by a go trial
  ExGParams theta_b;  // trials preceded by a stop trial
};

/// Parse the parameter CSV
/// (`id,mu_S,mu_A,mu_B,sigma_S,sigma_A,sigma_B,tau_S,tau_A,tau_B`).
std::vector<ParticipantParams> load_param_table(std::istream& in);
std::vector<ParticipantParams> load_param_table_file(const std::string& path);

struct ParticipantStats {
  ALGParams alg_params;   // from (theta_a, theta_b)
  ShapeStats exg_a;
  ShapeStats exg_b;
  ShapeStats alg;
  double delta_gort_mean = 0.0;  // (mu_B + tau_B) - (mu_A + tau_A)
};

ParticipantStats participant_stats(const ParticipantParams& pp);

struct PairedTestResult {
  double mean_diff = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double t_stat = 0.0;
  int df = 0;
  double p_value = 1.0;
  std::string stars;  // "*" p<0.05, "**" p<0.005, "***" p<0.0005
};

/// Classical paired t-test of y - x with a two-sided 95% CI.
PairedTestResult paired_t_test(std::span<const double> x, std::span<const double> y);

struct GroupSummary {
  std::string variable;
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int n = 0;
};

/// One table cell: a mean with its 95% CI, plus test fields when the cell is
/// a B-vs-A comparison.
struct ReportCell {
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double p_value = -1.0;  // < 0 when not a test
  std::string stars;
};

struct ReportColumn {
  std::optional<ReportCell> alpha1, alpha2;
  std::optional<ReportCell> mu, sigma, tau;
  ReportCell mean, stdev, skewness, kurtosis;
};

/// Group-level summary mirroring the four-column layout (type A, type B,
/// B-vs-A comparison, ALG).  ExG kurtosis cells use the full-kurtosis
/// convention; the ALG column uses the excess-style value.
struct Table2Report {
  int n = 0;
  ReportColumn type_a;
  ReportColumn type_b;
  ReportColumn comparison;
  ReportColumn alg_model;
  bool degenerate_ci = false;  // n < 2: CIs are undefined
};

Table2Report table2_report(std::span<const ParticipantParams> params);

std::string format_table2_text(const Table2Report& r);
std::string format_table2_csv(const Table2Report& r);

}  // namespace alg
