// Integration tests driving the built command-line binary.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const std::string kCli = ALG_CLI_PATH;
const std::string kFix = ALG_FIXTURE_DIR;
const std::string kData = ALG_DATA_DIR;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string out_file =
      (fs::temp_directory_path() / "alg_cli_test_out.txt").string();
  const std::string cmd = kCli + " " + args + " > " + out_file + " 2>&1";
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(out_file);
  std::ostringstream os;
  os << in.rdbuf();
  r.out = os.str();
  return r;
}

fs::path temp_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("dist stats prints the model mean") {
  const RunResult r =
      run("dist alg --a1 96 --a2 68 --mu 22 --sigma 37.696 stats");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("mean -6") != std::string::npos);

  const RunResult e = run("dist exg --mu 400 --sigma 50 --tau 100 stats");
  CHECK(e.exit_code == 0);
  CHECK(e.out.find("mean 500") != std::string::npos);
}

TEST_CASE("dist quantile validates the probability") {
  const RunResult r =
      run("dist alg --a1 96 --a2 68 --mu 22 --sigma 37.696 quantile --q 1.5");
  CHECK(r.exit_code == 2);
  const RunResult ok =
      run("dist alg --a1 96 --a2 68 --mu 22 --sigma 37.696 quantile --q 0.5");
  CHECK(ok.exit_code == 0);
}

TEST_CASE("dist sample requires a seed and is reproducible") {
  const RunResult missing = run("dist al --a1 96 --a2 68 sample --n 5");
  CHECK(missing.exit_code == 2);
  const RunResult a = run("dist al --a1 96 --a2 68 sample --n 5 --seed 3");
  const RunResult b = run("dist al --a1 96 --a2 68 sample --n 5 --seed 3");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(count_lines(a.out) == 5);
}

TEST_CASE("invalid parameters exit with the domain code") {
  const RunResult r = run("dist exg --mu 400 --sigma -5 --tau 100 stats");
  CHECK(r.exit_code == 1);
  const RunResult usage = run("dist exg --mu 400 stats");
  CHECK(usage.exit_code == 2);
  const RunResult none = run("");
  CHECK(none.exit_code == 2);
}

TEST_CASE("partition writes the cluster summary and GORT files") {
  const fs::path out = temp_dir("alg_cli_partition");
  const RunResult r = run("partition --input " + kFix + "/session96.csv --outdir " +
                          out.string() + " --seed 11");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("p1,96,72,24,72,24,47,24,1") != std::string::npos);
  CHECK(fs::exists(out / "summary.csv"));
  CHECK(fs::exists(out / "p1_gort_a.csv"));
  CHECK(fs::exists(out / "p1_gort_b.csv"));
  CHECK(fs::exists(out / "p1_delta.csv"));
  std::ifstream delta(out / "p1_delta.csv");
  std::string header;
  std::getline(delta, header);
  CHECK(header == "value");
  int n = 0;
  for (std::string line; std::getline(delta, line);) ++n;
  CHECK(n == 24);
}

TEST_CASE("partition of an all-go session reports zero type-B trials") {
  const fs::path out = temp_dir("alg_cli_partition_go");
  const RunResult r =
      run("partition --input " + kFix + "/all_go.csv --outdir " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("p2,12,12,0,12,0,12,0,0") != std::string::npos);
  CHECK_FALSE(fs::exists(out / "p2_delta.csv"));  // no seed given
}

TEST_CASE("partition errors carry context") {
  const RunResult missing =
      run("partition --input /nonexistent.csv --outdir /tmp/alg_cli_x");
  CHECK(missing.exit_code == 1);
  CHECK(missing.out.find("cannot open file") != std::string::npos);
  const RunResult bad = run("partition --input " + kFix +
                            "/bad_rt.csv --outdir /tmp/alg_cli_x");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("line 3") != std::string::npos);
}

TEST_CASE("fit alg-ml converges on the bundled synthetic differences") {
  const RunResult r = run("fit alg-ml --input " + kData + "/delta_synth.csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("converged true") != std::string::npos);
  CHECK(r.out.find("alpha1") != std::string::npos);
}

TEST_CASE("fit rejects undersized samples") {
  const fs::path f = fs::temp_directory_path() / "alg_cli_tiny.csv";
  std::ofstream(f) << "value\n400\n410\n420\n430\n440\n";
  const RunResult r = run("fit exg-ml --input " + f.string());
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("too few") != std::string::npos);
}

TEST_CASE("fit exg-bayes echoes the sampler settings") {
  const fs::path f = fs::temp_directory_path() / "alg_cli_gort.csv";
  {
    const RunResult s =
        run("dist exg --mu 478 --sigma 110 --tau 104 sample --n 72 --seed 6");
    REQUIRE(s.exit_code == 0);
    std::ofstream(f) << "value\n" << s.out;
  }
  const RunResult r = run("fit exg-bayes --input " + f.string() + " --seed 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("chains=3 iters=20000 burnin=5000") != std::string::npos);
  CHECK(r.out.find("priors=[10,2000]") != std::string::npos);
  CHECK(r.out.find("rhat") != std::string::npos);
  const RunResult noseed = run("fit exg-bayes --input " + f.string());
  CHECK(noseed.exit_code == 2);
}

TEST_CASE("report reproduces the headline rows") {
  const RunResult r = run("report --input " + kData + "/tableB1.csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("92.1") != std::string::npos);
  CHECK(r.out.find("(69.4, 114.9)") != std::string::npos);
  CHECK(r.out.find("38.2") != std::string::npos);
  CHECK(r.out.find("(19.6, 56.8)") != std::string::npos);
  CHECK(r.out.find("478.8") != std::string::npos);
}

TEST_CASE("curves emits a well-formed table") {
  // participant 16 derived model: symmetric reference shape
  const std::string flags =
      "--a1 56 --a2 57 --mu 47 --sigma " + std::to_string(std::sqrt(57.0 * 57 + 61.0 * 61));
  const RunResult two =
      run("curves " + flags + " --tmin 0 --tmax 1 --points 2 --output -");
  CHECK(two.exit_code == 0);
  CHECK(count_lines(two.out) == 3);  // header + 2 rows

  const double mean = 57.0 - 56.0 + 47.0;
  const double tmax = mean + 40.0 * 57.0;
  const RunResult r = run("curves " + flags + " --tmin -400 --tmax " +
                          std::to_string(tmax) + " --points 500 --output -");
  CHECK(r.exit_code == 0);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,pdf,cdf,hazard");
  double prev_t = -1e300, prev_cdf = -1.0, prev_h = -1e300, last_cdf = 0.0;
  int rows = 0;
  for (std::string line; std::getline(in, line);) {
    double t, pdf, cdf, hazard;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &t, &pdf, &cdf, &hazard) == 4);
    CHECK(t > prev_t);
    CHECK(cdf >= prev_cdf);
    CHECK(hazard >= prev_h - 1e-12);
    prev_t = t;
    prev_cdf = cdf;
    prev_h = hazard;
    last_cdf = cdf;
    ++rows;
  }
  CHECK(rows == 500);
  CHECK(last_cdf > 0.999);

  const RunResult bad =
      run("curves " + flags + " --tmin 0 --tmax 1 --points 1 --output -");
  CHECK(bad.exit_code == 2);
}
