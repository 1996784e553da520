#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "alg/batch.hpp"
#include "alg/distributions.hpp"

using namespace alg;
using batch::Exec;

namespace {

const ALGParams kP{96, 68, 22, 37.0};
const ExGParams kE{350, 35, 96};

std::vector<double> grid(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i)
    t[i] = -700.0 + 1600.0 * static_cast<double>(i) / static_cast<double>(n - 1);
  return t;
}

}  // namespace

TEST_CASE("grid kernels: serial and parallel outputs are bit-identical") {
  // sizes straddle the chunk boundary on purpose
  for (std::size_t n : {2u, 4095u, 4096u, 4097u, 50'000u}) {
    const auto t = grid(n);
    CHECK(batch::alg_pdf_grid(kP, t, Exec::serial) ==
          batch::alg_pdf_grid(kP, t, Exec::parallel));
    CHECK(batch::alg_cdf_grid(kP, t, Exec::serial) ==
          batch::alg_cdf_grid(kP, t, Exec::parallel));
    CHECK(batch::alg_hazard_grid(kP, t, Exec::serial) ==
          batch::alg_hazard_grid(kP, t, Exec::parallel));
    CHECK(batch::exg_pdf_grid(kE, t, Exec::serial) ==
          batch::exg_pdf_grid(kE, t, Exec::parallel));
  }
}

TEST_CASE("grid kernels agree with the scalar functions") {
  const auto t = grid(1000);
  const auto pdf = batch::alg_pdf_grid(kP, t);
  const auto cdf = batch::alg_cdf_grid(kP, t);
  const auto haz = batch::alg_hazard_grid(kP, t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(pdf[i] == alg_pdf(kP, t[i]));
    CHECK(cdf[i] == alg_cdf(kP, t[i]));
    CHECK(haz[i] == alg_hazard(kP, t[i]).rate);
  }
}

TEST_CASE("samplers: serial and parallel sequences are bit-identical") {
  for (std::size_t n : {1u, 4096u, 4097u, 100'000u}) {
    CHECK(batch::sample_alg(kP, n, 9, Exec::serial) ==
          batch::sample_alg(kP, n, 9, Exec::parallel));
    CHECK(batch::sample_exg(kE, n, 9, Exec::serial) ==
          batch::sample_exg(kE, n, 9, Exec::parallel));
    CHECK(batch::sample_al(kP.laplace(), n, 9, Exec::serial) ==
          batch::sample_al(kP.laplace(), n, 9, Exec::parallel));
  }
  // the scalar-facing samplers delegate to the same sequence
  CHECK(sample_alg(kP, 1000, 9) == batch::sample_alg(kP, 1000, 9, Exec::parallel));
}

TEST_CASE("log-likelihood is thread-count independent and matches a naive sum") {
  const auto x = batch::sample_alg(kP, 20'001, 3, Exec::serial);
  const double par = batch::alg_log_lik(kP, x, Exec::parallel);
  const double ser = batch::alg_log_lik(kP, x, Exec::serial);
  CHECK(par == ser);
  double naive = 0.0;
  for (double v : x) naive += alg_log_pdf(kP, v);
  CHECK(par == doctest::Approx(naive).epsilon(1e-12));

  const auto y = batch::sample_exg(kE, 10'000, 3, Exec::serial);
  CHECK(batch::exg_log_lik(kE, y, Exec::parallel) ==
        batch::exg_log_lik(kE, y, Exec::serial));
}

TEST_CASE("curve tables satisfy their invariants") {
  const auto c = batch::alg_curves(kP, -500.0, 2000.0, 501);
  REQUIRE(c.grid.size() == 501);
  CHECK(c.pdf.size() == 501);
  CHECK(c.cdf.size() == 501);
  CHECK(c.hazard.size() == 501);
  CHECK(c.grid.front() == -500.0);
  CHECK(c.grid.back() == 2000.0);
  for (std::size_t i = 1; i < c.grid.size(); ++i) {
    CHECK(c.grid[i] > c.grid[i - 1]);
    CHECK(c.cdf[i] >= c.cdf[i - 1]);
  }
  const auto two = batch::alg_curves(kP, 0.0, 1.0, 2);
  CHECK(two.grid.size() == 2);
}

TEST_CASE("curve grid argument validation") {
  CHECK_THROWS_AS(batch::alg_curves(kP, 10.0, 10.0, 5), alg::domain_error);
  CHECK_THROWS_AS(batch::alg_curves(kP, 0.0, 1.0, 1), alg::domain_error);
}
