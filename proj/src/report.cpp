#include "alg/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <sstream>

#include "alg/pipeline.hpp"
#include "alg/student_t.hpp"

namespace alg {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& raw, std::size_t line, const char* field) {
  const std::string s = trim(raw);
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw parse_error(line, std::string("field '") + field + "': not a number: '" +
                                s + "'");
  }
  if (pos != s.size())
    throw parse_error(line, std::string("field '") + field + "': trailing characters");
  return v;
}

std::string stars_for(double p) {
  if (p < 0.0005) return "***";
  if (p < 0.005) return "**";
  if (p < 0.05) return "*";
  return "";
}

}  // namespace

std::vector<ParticipantParams> load_param_table(std::istream& in) {
  static const char* kCols[] = {"id",      "mu_S",    "mu_A",    "mu_B",
                                "sigma_S", "sigma_A", "sigma_B", "tau_S",
                                "tau_A",   "tau_B"};
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw parse_error(1, "empty input, header expected");
  ++lineno;
  {
    auto header = split_csv_line(line);
    if (header.size() != 10) throw parse_error(lineno, "header must have 10 columns");
    for (std::size_t i = 0; i < 10; ++i)
      if (trim(header[i]) != kCols[i])
        throw parse_error(lineno, "unexpected header column '" + header[i] +
                                      "' (want '" + kCols[i] + "')");
  }

  std::vector<ParticipantParams> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 10) throw parse_error(lineno, "expected 10 fields");
    ParticipantParams pp;
    pp.id = trim(f[0]);
    if (pp.id.empty()) throw parse_error(lineno, "field 'id': empty");
    pp.theta_s = {parse_double(f[1], lineno, "mu_S"), parse_double(f[4], lineno, "sigma_S"),
                  parse_double(f[7], lineno, "tau_S")};
    pp.theta_a = {parse_double(f[2], lineno, "mu_A"), parse_double(f[5], lineno, "sigma_A"),
                  parse_double(f[8], lineno, "tau_A")};
    pp.theta_b = {parse_double(f[3], lineno, "mu_B"), parse_double(f[6], lineno, "sigma_B"),
                  parse_double(f[9], lineno, "tau_B")};
    try {
      pp.theta_s.validate();
      pp.theta_a.validate();
      pp.theta_b.validate();
    } catch (const invalid_parameter& e) {
      throw parse_error(lineno, e.what());
    }
    out.push_back(std::move(pp));
  }
  if (out.empty()) throw parse_error(lineno + 1, "no data rows");
  return out;
}

std::vector<ParticipantParams> load_param_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open file: " + path);
  return load_param_table(in);
}

ParticipantStats participant_stats(const ParticipantParams& pp) {
  ParticipantStats s;
  s.alg_params = alg_from_exg_pair(pp.theta_a, pp.theta_b);
  s.exg_a = exg_stats(pp.theta_a);
  s.exg_b = exg_stats(pp.theta_b);
  s.alg = alg_stats(s.alg_params);
  s.delta_gort_mean = (pp.theta_b.mu + pp.theta_b.tau) - (pp.theta_a.mu + pp.theta_a.tau);
  return s;
}

PairedTestResult paired_t_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw domain_error("paired_t_test: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw domain_error("paired_t_test: need at least 2 pairs");
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += y[i] - x[i];
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (y[i] - x[i]) - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0)) throw domain_error("paired_t_test: zero variance of differences");

  PairedTestResult r;
  r.df = static_cast<int>(n - 1);
  r.mean_diff = mean;
  const double se = sd / std::sqrt(static_cast<double>(n));
  r.t_stat = mean / se;
  const double tq = student_t_quantile(0.975, static_cast<double>(r.df));
  r.ci_low = mean - tq * se;
  r.ci_high = mean + tq * se;
  r.p_value = 2.0 * student_t_cdf(-std::fabs(r.t_stat), static_cast<double>(r.df));
  r.stars = stars_for(r.p_value);
  return r;
}

namespace {

ReportCell summary_cell(std::span<const double> v) {
  const std::size_t n = v.size();
  ReportCell c;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(n);
  c.mean = mean;
  if (n < 2) {
    c.ci_low = c.ci_high = std::numeric_limits<double>::quiet_NaN();
    return c;
  }
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
  const double tq = student_t_quantile(0.975, static_cast<double>(n - 1));
  c.ci_low = mean - tq * se;
  c.ci_high = mean + tq * se;
  return c;
}

ReportCell test_cell(std::span<const double> x, std::span<const double> y) {
  const PairedTestResult t = paired_t_test(x, y);
  ReportCell c;
  c.mean = t.mean_diff;
  c.ci_low = t.ci_low;
  c.ci_high = t.ci_high;
  c.p_value = t.p_value;
  c.stars = t.stars;
  return c;
}

}  // namespace

Table2Report table2_report(std::span<const ParticipantParams> params) {
  if (params.empty()) throw domain_error("table2_report: no participants");
  const std::size_t n = params.size();

  std::vector<double> mu_a(n), mu_b(n), sg_a(n), sg_b(n), ta_a(n), ta_b(n);
  std::vector<double> mean_a(n), mean_b(n), sd_a(n), sd_b(n), sk_a(n), sk_b(n),
      ku_a(n), ku_b(n);
  std::vector<double> g_mu(n), g_sigma(n), g_mean(n), g_sd(n), g_sk(n), g_ku(n);

  for (std::size_t i = 0; i < n; ++i) {
    const ParticipantStats s = participant_stats(params[i]);
    mu_a[i] = params[i].theta_a.mu;
    mu_b[i] = params[i].theta_b.mu;
    sg_a[i] = params[i].theta_a.sigma;
    sg_b[i] = params[i].theta_b.sigma;
    ta_a[i] = params[i].theta_a.tau;
    ta_b[i] = params[i].theta_b.tau;
    mean_a[i] = s.exg_a.mean;
    mean_b[i] = s.exg_b.mean;
    sd_a[i] = s.exg_a.stdev;
    sd_b[i] = s.exg_b.stdev;
    sk_a[i] = s.exg_a.skewness;
    sk_b[i] = s.exg_b.skewness;
    ku_a[i] = s.exg_a.paper_convention_kurtosis;  // full kurtosis
    ku_b[i] = s.exg_b.paper_convention_kurtosis;
    g_mu[i] = s.alg_params.mu;
    g_sigma[i] = s.alg_params.sigma;
    g_mean[i] = s.alg.mean;
    g_sd[i] = s.alg.stdev;
    g_sk[i] = s.alg.skewness;
    g_ku[i] = s.alg.paper_convention_kurtosis;  // excess-style value
  }

  Table2Report r;
  r.n = static_cast<int>(n);
  r.degenerate_ci = n < 2;

  auto fill = [&](ReportColumn& col, const std::vector<double>& mu,
                  const std::vector<double>& sg, const std::vector<double>& ta,
                  const std::vector<double>& me, const std::vector<double>& sd,
                  const std::vector<double>& sk, const std::vector<double>& ku) {
    col.mu = summary_cell(mu);
    col.sigma = summary_cell(sg);
    col.tau = summary_cell(ta);
    col.mean = summary_cell(me);
    col.stdev = summary_cell(sd);
    col.skewness = summary_cell(sk);
    col.kurtosis = summary_cell(ku);
  };
  fill(r.type_a, mu_a, sg_a, ta_a, mean_a, sd_a, sk_a, ku_a);
  fill(r.type_b, mu_b, sg_b, ta_b, mean_b, sd_b, sk_b, ku_b);

  if (n >= 2) {
    r.comparison.mu = test_cell(mu_a, mu_b);
    r.comparison.sigma = test_cell(sg_a, sg_b);
    r.comparison.tau = test_cell(ta_a, ta_b);
    r.comparison.mean = test_cell(mean_a, mean_b);
    r.comparison.stdev = test_cell(sd_a, sd_b);
    r.comparison.skewness = test_cell(sk_a, sk_b);
    r.comparison.kurtosis = test_cell(ku_a, ku_b);
  } else {
    // Single participant: differences are defined, intervals are not.
    auto diff_cell = [](double a, double b) {
      ReportCell c;
      c.mean = b - a;
      c.ci_low = c.ci_high = std::numeric_limits<double>::quiet_NaN();
      return c;
    };
    r.comparison.mu = diff_cell(mu_a[0], mu_b[0]);
    r.comparison.sigma = diff_cell(sg_a[0], sg_b[0]);
    r.comparison.tau = diff_cell(ta_a[0], ta_b[0]);
    r.comparison.mean = diff_cell(mean_a[0], mean_b[0]);
    r.comparison.stdev = diff_cell(sd_a[0], sd_b[0]);
    r.comparison.skewness = diff_cell(sk_a[0], sk_b[0]);
    r.comparison.kurtosis = diff_cell(ku_a[0], ku_b[0]);
  }

  r.alg_model.alpha1 = summary_cell(ta_a);
  r.alg_model.alpha2 = summary_cell(ta_b);
  r.alg_model.mu = summary_cell(g_mu);
  r.alg_model.sigma = summary_cell(g_sigma);
  r.alg_model.mean = summary_cell(g_mean);
  r.alg_model.stdev = summary_cell(g_sd);
  r.alg_model.skewness = summary_cell(g_sk);
  r.alg_model.kurtosis = summary_cell(g_ku);
  return r;
}

namespace {

std::string fmt(double v, int decimals) {
  if (std::isnan(v)) return "NA";
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << v;
  return os.str();
}

std::string cell_text(const std::optional<ReportCell>& c, int decimals) {
  if (!c) return "-";
  std::string s = fmt(c->mean, decimals) + c->stars + " (" + fmt(c->ci_low, decimals) +
                  ", " + fmt(c->ci_high, decimals) + ")";
  return s;
}

std::string cell_text(const ReportCell& c, int decimals) {
  return cell_text(std::optional<ReportCell>(c), decimals);
}

void csv_row(std::ostringstream& os, const char* column, const char* row,
             const std::optional<ReportCell>& c) {
  if (!c) return;
  os << column << ',' << row << ',' << std::setprecision(17) << c->mean << ','
     << c->ci_low << ',' << c->ci_high << ',';
  if (c->p_value >= 0.0) os << c->p_value;
  os << ',' << c->stars << '\n';
}

}  // namespace

std::string format_table2_text(const Table2Report& r) {
  std::ostringstream os;
  os << "Group summary (n=" << r.n << ")";
  if (r.degenerate_ci) os << "  [warning: n < 2, confidence intervals undefined]";
  os << "\n\n";

  const int w = 26;
  auto line = [&](const char* label, const std::string& a, const std::string& b,
                  const std::string& cmp, const std::string& alg) {
    os << std::left << std::setw(10) << label << std::setw(w) << a << std::setw(w)
       << b << std::setw(w) << cmp << std::setw(w) << alg << '\n';
  };
  line("", "Type A (ExG)", "Type B (ExG)", "B vs A", "ALG (type S)");
  line("alpha1", "-", "-", "-", cell_text(r.alg_model.alpha1, 1));
  line("alpha2", "-", "-", "-", cell_text(r.alg_model.alpha2, 1));
  line("mu", cell_text(r.type_a.mu, 1), cell_text(r.type_b.mu, 1),
       cell_text(r.comparison.mu, 1), cell_text(r.alg_model.mu, 1));
  line("sigma", cell_text(r.type_a.sigma, 1), cell_text(r.type_b.sigma, 1),
       cell_text(r.comparison.sigma, 1), cell_text(r.alg_model.sigma, 1));
  line("tau", cell_text(r.type_a.tau, 1), cell_text(r.type_b.tau, 1),
       cell_text(r.comparison.tau, 1), "-");
  line("Mean", cell_text(r.type_a.mean, 1), cell_text(r.type_b.mean, 1),
       cell_text(r.comparison.mean, 1), cell_text(r.alg_model.mean, 1));
  line("St.D", cell_text(r.type_a.stdev, 1), cell_text(r.type_b.stdev, 1),
       cell_text(r.comparison.stdev, 1), cell_text(r.alg_model.stdev, 1));
  line("Skewness", cell_text(r.type_a.skewness, 3), cell_text(r.type_b.skewness, 3),
       cell_text(r.comparison.skewness, 3), cell_text(r.alg_model.skewness, 3));
  line("Kurtosis", cell_text(r.type_a.kurtosis, 3), cell_text(r.type_b.kurtosis, 3),
       cell_text(r.comparison.kurtosis, 3), cell_text(r.alg_model.kurtosis, 3));
  os << "\nNotes: * p<0.05; ** p<0.005; *** p<0.0005."
     << " ExG kurtosis cells are full kurtosis; the ALG kurtosis cell is the"
     << " excess-style value.\n";
  return os.str();
}

std::string format_table2_csv(const Table2Report& r) {
  std::ostringstream os;
  os << "column,row,mean,ci_low,ci_high,p_value,stars\n";
  auto col = [&](const char* name, const ReportColumn& c) {
    csv_row(os, name, "alpha1", c.alpha1);
    csv_row(os, name, "alpha2", c.alpha2);
    csv_row(os, name, "mu", c.mu);
    csv_row(os, name, "sigma", c.sigma);
    csv_row(os, name, "tau", c.tau);
    csv_row(os, name, "mean", c.mean);
    csv_row(os, name, "stdev", c.stdev);
    csv_row(os, name, "skewness", c.skewness);
    csv_row(os, name, "kurtosis", c.kurtosis);
  };
  col("type_a", r.type_a);
  col("type_b", r.type_b);
  col("comparison", r.comparison);
  col("alg", r.alg_model);
  return os.str();
}

}  // namespace alg
