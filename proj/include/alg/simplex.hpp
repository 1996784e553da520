#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace alg {

struct SimplexOptions {
  double ftol_rel = 1e-8;
  int max_evals = 2000;
  int restarts = 1;  // re-seed the simplex around the incumbent after converging
};

struct SimplexResult {
  std::vector<double> x;
  double fmin = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Derivative-free Nelder-Mead minimization with optional restart.
inline SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                 std::vector<double> x0, std::vector<double> step,
                                 SimplexOptions opt = {}) {
  const std::size_t n = x0.size();
  SimplexResult result;
  result.x = x0;
  result.fmin = f(x0);
  result.evaluations = 1;

  auto run = [&](const std::vector<double>& start, const std::vector<double>& steps) {
    std::vector<std::vector<double>> pts(n + 1, start);
    std::vector<double> fv(n + 1);
    fv[0] = f(pts[0]);
    ++result.evaluations;
    for (std::size_t i = 0; i < n; ++i) {
      pts[i + 1][i] += steps[i];
      fv[i + 1] = f(pts[i + 1]);
      ++result.evaluations;
    }
    bool converged = false;
    while (result.evaluations < opt.max_evals) {
      std::vector<std::size_t> order(n + 1);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
      const std::size_t best = order[0], worst = order[n], second = order[n - 1];
      const double spread = std::fabs(fv[worst] - fv[best]);
      if (spread <= opt.ftol_rel * (std::fabs(fv[best]) + opt.ftol_rel)) {
        converged = true;
        break;
      }
      std::vector<double> centroid(n, 0.0);
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == worst) continue;
        for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d];
      }
      for (double& c : centroid) c /= static_cast<double>(n);

      auto blend = [&](double coef) {
        std::vector<double> p(n);
        for (std::size_t d = 0; d < n; ++d)
          p[d] = centroid[d] + coef * (pts[worst][d] - centroid[d]);
        return p;
      };

      std::vector<double> refl = blend(-1.0);
      double frefl = f(refl);
      ++result.evaluations;
      if (frefl < fv[order[0]]) {
        std::vector<double> exp_pt = blend(-2.0);
        double fexp = f(exp_pt);
        ++result.evaluations;
        if (fexp < frefl) {
          pts[worst] = std::move(exp_pt);
          fv[worst] = fexp;
        } else {
          pts[worst] = std::move(refl);
          fv[worst] = frefl;
        }
      } else if (frefl < fv[second]) {
        pts[worst] = std::move(refl);
        fv[worst] = frefl;
      } else {
        const bool outside = frefl < fv[worst];
        std::vector<double> con = blend(outside ? -0.5 : 0.5);
        double fcon = f(con);
        ++result.evaluations;
        if (fcon < std::min(frefl, fv[worst])) {
          pts[worst] = std::move(con);
          fv[worst] = fcon;
        } else {
          // Shrink toward the best vertex.
          for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t d = 0; d < n; ++d)
              pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
            fv[i] = f(pts[i]);
            ++result.evaluations;
          }
        }
      }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
      if (fv[i] < fv[best]) best = i;
    if (fv[best] < result.fmin) {
      result.fmin = fv[best];
      result.x = pts[best];
    }
    return converged;
  };

  bool converged = run(x0, step);
  for (int r = 0; r < opt.restarts && converged && result.evaluations < opt.max_evals;
       ++r) {
    std::vector<double> small_step(step);
    for (double& s : small_step) s *= 0.1;
    converged = run(result.x, small_step);
  }
  result.converged = converged;
  return result;
}

}  // namespace alg
