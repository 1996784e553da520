// Command-line front end: distribution queries, session clustering, model
// fitting, group reports and curve tables for plotting.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "alg/batch.hpp"
#include "alg/distributions.hpp"
#include "alg/estimation.hpp"
#include "alg/pipeline.hpp"
#include "alg/report.hpp"

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

std::vector<double> read_sample(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw alg::domain_error("file not found: " + path);
  std::vector<double> v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line == "value") continue;
    try {
      std::size_t pos = 0;
      const double x = std::stod(line, &pos);
      if (pos != line.size()) throw std::invalid_argument(line);
      v.push_back(x);
    } catch (const std::exception&) {
      throw alg::parse_error(lineno, "not a number: '" + line + "'");
    }
  }
  return v;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw alg::domain_error("cannot write file: " + path);
  out << content;
}

std::string probability_in_open_unit(const std::string& s) {
  try {
    const double q = std::stod(s);
    if (q > 0.0 && q < 1.0) return "";
  } catch (const std::exception&) {
  }
  return "must be a probability in (0,1)";
}

void print_values(const std::vector<double>& v) {
  for (double x : v) std::printf("%.17g\n", x);
}

void print_stats(const alg::ShapeStats& s) {
  std::printf("mean %.17g\n", s.mean);
  std::printf("variance %.17g\n", s.variance);
  std::printf("stdev %.17g\n", s.stdev);
  std::printf("skewness %.17g\n", s.skewness);
  std::printf("excess_kurtosis %.17g\n", s.excess_kurtosis);
  std::printf("paper_convention_kurtosis %.17g\n", s.paper_convention_kurtosis);
}

struct DistQuery {
  std::vector<double> t;
  std::vector<double> q;
  std::size_t n = 0;
  std::optional<std::uint64_t> seed;
};

// Wires the pdf/cdf/quantile/stats/sample query subcommands under one
// distribution subcommand.
template <typename Pdf, typename Cdf, typename Quantile, typename Stats,
          typename Sample>
void add_queries(CLI::App* dist, DistQuery& dq, Pdf pdf, Cdf cdf, Quantile quantile,
                 Stats stats, Sample sample) {
  auto* c_pdf = dist->add_subcommand("pdf", "density at --t");
  c_pdf->add_option("--t", dq.t, "evaluation points, ms")->required();
  c_pdf->callback([&dq, pdf] {
    for (double t : dq.t) std::printf("%.17g\n", pdf(t));
  });

  auto* c_cdf = dist->add_subcommand("cdf", "cumulative probability at --t");
  c_cdf->add_option("--t", dq.t, "evaluation points, ms")->required();
  c_cdf->callback([&dq, cdf] {
    for (double t : dq.t) std::printf("%.17g\n", cdf(t));
  });

  auto* c_q = dist->add_subcommand("quantile", "quantile at --q");
  c_q->add_option("--q", dq.q, "probabilities in (0,1)")
      ->required()
      ->check(CLI::Validator(probability_in_open_unit, "PROB"));
  c_q->callback([&dq, quantile] {
    for (double q : dq.q) std::printf("%.17g\n", quantile(q));
  });

  auto* c_stats = dist->add_subcommand("stats", "descriptive and shape statistics");
  c_stats->callback([stats] { print_stats(stats()); });

  auto* c_sample = dist->add_subcommand("sample", "seeded draws");
  c_sample->add_option("--n", dq.n, "number of draws")->required()
      ->check(CLI::PositiveNumber);
  c_sample->add_option("--seed", dq.seed, "RNG seed")->required();
  c_sample->callback([&dq, sample] { print_values(sample(dq.n, *dq.seed)); });
}

void cmd_partition(const std::string& input, const std::string& outdir,
                   std::optional<std::uint64_t> seed) {
  namespace fs = std::filesystem;
  auto groups = alg::parse_trials_file(input);
  fs::create_directories(outdir);

  std::ostringstream summary;
  summary << "participant_id,n_trials,n_go,n_stop,n_type_a,n_type_b,"
             "n_gort_a,n_gort_b,n_go_omitted\n";
  for (const auto& g : groups) {
    const alg::ClusteredSession cs = alg::partition_clusters(g);
    summary << cs.participant_id << ',' << cs.n_trials << ',' << cs.n_go << ','
            << cs.n_stop << ',' << cs.n_type_a << ',' << cs.n_type_b << ','
            << cs.gort_a.size() << ',' << cs.gort_b.size() << ','
            << cs.n_go_omitted << '\n';
    auto dump = [&](const std::string& suffix, const std::vector<double>& v) {
      std::ostringstream os;
      os << "value\n";
      for (double x : v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g\n", x);
        os << buf;
      }
      write_file((fs::path(outdir) / (cs.participant_id + suffix)).string(), os.str());
    };
    dump("_gort_a.csv", cs.gort_a);
    dump("_gort_b.csv", cs.gort_b);
    dump("_gort_s.csv", cs.gort_s);
    if (seed) dump("_delta.csv", alg::difference_gorts(cs, *seed));
  }
  write_file((fs::path(outdir) / "summary.csv").string(), summary.str());
  std::printf("%s", summary.str().c_str());
}

void print_fit_common(double loglik, bool converged, int iterations) {
  std::printf("log_likelihood %.17g\n", loglik);
  std::printf("converged %s\n", converged ? "true" : "false");
  std::printf("iterations %d\n", iterations);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymmetric-Laplace-Gaussian toolkit for stop-signal-task data"};
  app.require_subcommand(1);

  // ---- dist ----
  auto* dist = app.add_subcommand("dist", "evaluate a distribution");
  dist->require_subcommand(1);
  alg::ExGParams exg;
  alg::ALParams al;
  alg::ALGParams algp;
  DistQuery dq;

  auto* d_exg = dist->add_subcommand("exg", "Ex-Gaussian (mu, sigma, tau)");
  d_exg->add_option("--mu", exg.mu)->required();
  d_exg->add_option("--sigma", exg.sigma)->required();
  d_exg->add_option("--tau", exg.tau)->required();
  d_exg->require_subcommand(1);
  add_queries(
      d_exg, dq, [&](double t) { return alg::exg_pdf(exg, t); },
      [&](double t) { return alg::exg_cdf(exg, t); },
      [&](double q) { return alg::exg_quantile(exg, q); },
      [&] { return alg::exg_stats(exg); },
      [&](std::size_t n, std::uint64_t s) { return alg::sample_exg(exg, n, s); });

  auto* d_al = dist->add_subcommand("al", "Asymmetric Laplace (alpha1, alpha2)");
  d_al->add_option("--a1", al.alpha1)->required();
  d_al->add_option("--a2", al.alpha2)->required();
  d_al->require_subcommand(1);
  add_queries(
      d_al, dq, [&](double t) { return alg::al_pdf(al, t); },
      [&](double t) { return alg::al_cdf(al, t); },
      [&](double q) { return alg::al_quantile(al, q); },
      [&] { return alg::al_stats(al); },
      [&](std::size_t n, std::uint64_t s) { return alg::sample_al(al, n, s); });

  auto* d_alg =
      dist->add_subcommand("alg", "Asymmetric Laplace Gaussian (alpha1, alpha2, mu, sigma)");
  d_alg->add_option("--a1", algp.alpha1)->required();
  d_alg->add_option("--a2", algp.alpha2)->required();
  d_alg->add_option("--mu", algp.mu)->required();
  d_alg->add_option("--sigma", algp.sigma)->required();
  d_alg->require_subcommand(1);
  add_queries(
      d_alg, dq, [&](double t) { return alg::alg_pdf(algp, t); },
      [&](double t) { return alg::alg_cdf(algp, t); },
      [&](double q) { return alg::alg_quantile(algp, q); },
      [&] { return alg::alg_stats(algp); },
      [&](std::size_t n, std::uint64_t s) { return alg::sample_alg(algp, n, s); });

  // ---- partition ----
  auto* part = app.add_subcommand("partition", "split sessions into trial-type clusters");
  std::string part_input, part_outdir;
  std::optional<std::uint64_t> part_seed;
  part->add_option("--input", part_input, "trial CSV")->required();
  part->add_option("--outdir", part_outdir, "output directory")->required();
  part->add_option("--seed", part_seed,
                   "also write differenced GORTs with this pairing seed");
  part->callback([&] { cmd_partition(part_input, part_outdir, part_seed); });

  // ---- fit ----
  auto* fit = app.add_subcommand("fit", "fit a model to a sample");
  fit->require_subcommand(1);
  std::string fit_input, fit_csv;
  alg::McmcConfig mcmc;
  bool have_seed = false;

  auto* f_exg_ml = fit->add_subcommand("exg-ml", "maximum likelihood Ex-Gaussian");
  f_exg_ml->add_option("--input", fit_input, "sample CSV, one value per line")->required();
  f_exg_ml->add_option("--csv", fit_csv, "also write the estimates as CSV");
  f_exg_ml->callback([&] {
    const auto sample = read_sample(fit_input);
    const alg::ExgFit r = alg::fit_exg_ml(sample);
    std::printf("mu %.17g\nsigma %.17g\ntau %.17g\n", r.params.mu, r.params.sigma,
                r.params.tau);
    print_fit_common(r.log_likelihood, r.converged, r.iterations);
    if (r.se_estimates)
      std::printf("se_mu %.17g\nse_sigma %.17g\nse_tau %.17g\n",
                  (*r.se_estimates)[0], (*r.se_estimates)[1], (*r.se_estimates)[2]);
    if (!fit_csv.empty()) {
      std::ostringstream os;
      os << "param,estimate\nmu," << r.params.mu << "\nsigma," << r.params.sigma
         << "\ntau," << r.params.tau << "\nlog_likelihood," << r.log_likelihood
         << "\nconverged," << (r.converged ? 1 : 0) << "\n";
      write_file(fit_csv, os.str());
    }
  });

  auto* f_alg_ml = fit->add_subcommand("alg-ml", "maximum likelihood ALG");
  f_alg_ml->add_option("--input", fit_input, "sample CSV, one value per line")->required();
  f_alg_ml->add_option("--csv", fit_csv, "also write the estimates as CSV");
  f_alg_ml->callback([&] {
    const auto sample = read_sample(fit_input);
    const alg::AlgFit r = alg::fit_alg_ml(sample);
    std::printf("alpha1 %.17g\nalpha2 %.17g\nmu %.17g\nsigma %.17g\n", r.params.alpha1,
                r.params.alpha2, r.params.mu, r.params.sigma);
    print_fit_common(r.log_likelihood, r.converged, r.iterations);
    std::printf("boundary %s\n", r.boundary ? "true" : "false");
    if (!fit_csv.empty()) {
      std::ostringstream os;
      os << "param,estimate\nalpha1," << r.params.alpha1 << "\nalpha2,"
         << r.params.alpha2 << "\nmu," << r.params.mu << "\nsigma," << r.params.sigma
         << "\nlog_likelihood," << r.log_likelihood << "\nconverged,"
         << (r.converged ? 1 : 0) << "\n";
      write_file(fit_csv, os.str());
    }
  });

  auto* f_bayes = fit->add_subcommand("exg-bayes", "individual Bayesian Ex-Gaussian");
  f_bayes->add_option("--input", fit_input, "sample CSV, one value per line")->required();
  f_bayes->add_option("--chains", mcmc.chains, "number of chains")
      ->capture_default_str();
  f_bayes->add_option("--iters", mcmc.iterations, "iterations per chain")
      ->capture_default_str();
  f_bayes->add_option("--burnin", mcmc.burn_in, "burn-in per chain")
      ->capture_default_str();
  f_bayes->add_option("--prior-low", mcmc.prior_low)->capture_default_str();
  f_bayes->add_option("--prior-high", mcmc.prior_high)->capture_default_str();
  f_bayes
      ->add_option_function<std::uint64_t>(
          "--seed",
          [&](std::uint64_t s) {
            mcmc.seed = s;
            have_seed = true;
          },
          "RNG seed")
      ->required();
  f_bayes->add_option("--csv", fit_csv, "also write the summaries as CSV");
  f_bayes->callback([&] {
    const auto sample = read_sample(fit_input);
    std::printf("config: chains=%d iters=%d burnin=%d priors=[%g,%g] seed=%llu\n",
                mcmc.chains, mcmc.iterations, mcmc.burn_in, mcmc.prior_low,
                mcmc.prior_high, static_cast<unsigned long long>(mcmc.seed));
    const alg::PosteriorSummary s = alg::fit_exg_bayes(sample, mcmc);
    const char* names[3] = {"mu", "sigma", "tau"};
    const double means[3] = {s.mean_params.mu, s.mean_params.sigma, s.mean_params.tau};
    for (int i = 0; i < 3; ++i)
      std::printf("%s %.17g sd %.17g rhat %.6f ess %.1f\n", names[i], means[i],
                  s.sd_params[i], s.rhat[i], s.effective_samples[i]);
    std::printf("acceptance_rate %.4f\n", s.acceptance_rate);
    if (s.convergence_warning) std::printf("warning: R-hat above 1.05\n");
    if (!fit_csv.empty()) {
      std::ostringstream os;
      os << "param,post_mean,post_sd,rhat,ess\n";
      for (int i = 0; i < 3; ++i)
        os << names[i] << ',' << means[i] << ',' << s.sd_params[i] << ','
           << s.rhat[i] << ',' << s.effective_samples[i] << '\n';
      write_file(fit_csv, os.str());
    }
  });

  // ---- report ----
  auto* rep = app.add_subcommand("report", "group-level summary from a parameter table");
  std::string rep_input, rep_csv;
  rep->add_option("--input", rep_input, "parameter CSV")->required();
  rep->add_option("--csv", rep_csv, "also write the machine-readable report");
  rep->callback([&] {
    const auto params = alg::load_param_table_file(rep_input);
    const alg::Table2Report r = alg::table2_report(params);
    std::printf("%s", alg::format_table2_text(r).c_str());
    if (!rep_csv.empty()) write_file(rep_csv, alg::format_table2_csv(r));
  });

  // ---- curves ----
  auto* curves = app.add_subcommand("curves", "grid of pdf/cdf/hazard values");
  std::string curves_dist = "alg", curves_output;
  double tmin = 0.0, tmax = 0.0;
  std::size_t points = 0;
  curves->add_option("--dist", curves_dist, "exg or alg")
      ->check(CLI::IsMember({"exg", "alg"}))
      ->capture_default_str();
  curves->add_option("--a1", algp.alpha1);
  curves->add_option("--a2", algp.alpha2);
  curves->add_option("--mu", algp.mu);
  curves->add_option("--sigma", algp.sigma);
  curves->add_option("--tau", exg.tau);
  curves->add_option("--tmin", tmin)->required();
  curves->add_option("--tmax", tmax)->required();
  curves->add_option("--points", points)->required()->check(CLI::Range(std::size_t{2},
                     std::numeric_limits<std::size_t>::max()));
  curves->add_option("--output", curves_output, "output CSV path ('-' for stdout)")
      ->required();
  curves->callback([&] {
    alg::batch::CurveTable c;
    if (curves_dist == "alg") {
      c = alg::batch::alg_curves(algp, tmin, tmax, points);
    } else {
      exg.mu = algp.mu;
      exg.sigma = algp.sigma;
      c = alg::batch::exg_curves(exg, tmin, tmax, points);
    }
    std::ostringstream os;
    os << "t,pdf,cdf,hazard\n";
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", c.grid[i], c.pdf[i],
                    c.cdf[i], c.hazard[i]);
      os << buf;
    }
    if (curves_output == "-")
      std::printf("%s", os.str().c_str());
    else
      write_file(curves_output, os.str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints message/help
    return e.get_exit_code() == 0 ? 0 : kExitUsage;
  } catch (const alg::parse_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomain;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomain;
  }
  return 0;
}
