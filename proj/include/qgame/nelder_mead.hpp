// Copyright 2026 The qgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Derivative-free minimization by the Nelder-Mead simplex method with
// dimension-adaptive coefficients (Gao & Han), restarted from the best vertex
// whenever the simplex collapses without reaching the target.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

namespace qgame {

struct NelderMeadOptions {
  std::size_t max_iters = 20000;
  double step_tol = 1e-10;   // simplex diameter (inf-norm) at convergence
  double value_tol = 1e-14;  // spread of vertex values at convergence
  double initial_step = 0.5;
  std::optional<double> target;  // stop as soon as f <= target
  std::size_t max_rebuilds = 8;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool reached_target = false;
};

template <class F>
NelderMeadResult nelder_mead(F&& f, std::vector<double> x0, const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  NelderMeadResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };
  res.x = x0;
  res.value = eval(x0);
  auto hit = [&] { return opt.target && res.value <= *opt.target; };
  if (hit() || n == 0) {
    res.reached_target = hit();
    return res;
  }

  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double gamma = 1.0 + 2.0 / dn;
  const double rho = 0.75 - 1.0 / (2.0 * dn);
  const double sigma = 1.0 - 1.0 / dn;

  std::vector<std::vector<double>> simplex(n + 1);
  std::vector<double> fv(n + 1);
  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);

  auto point = [&](const std::vector<double>& base, const std::vector<double>& dir, double t,
                   std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = base[i] + t * (dir[i] - base[i]);
  };

  for (std::size_t rebuild = 0; rebuild <= opt.max_rebuilds && res.iterations < opt.max_iters; ++rebuild) {
    const double before = res.value;
    simplex[0] = res.x;
    fv[0] = res.value;
    for (std::size_t i = 0; i < n; ++i) {
      simplex[i + 1] = res.x;
      simplex[i + 1][i] += opt.initial_step;
      fv[i + 1] = eval(simplex[i + 1]);
    }

    while (res.iterations < opt.max_iters) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
      const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

      if (fv[best] < res.value) {
        res.value = fv[best];
        res.x = simplex[best];
      }
      if (hit()) {
        res.reached_target = true;
        return res;
      }

      double diam = 0.0;
      for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t i = 0; i < n; ++i)
          diam = std::max(diam, std::abs(simplex[order[k]][i] - simplex[best][i]));
      if (diam <= opt.step_tol && fv[worst] - fv[best] <= opt.value_tol) break;

      ++res.iterations;
      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[order[k]][i] / dn;

      point(centroid, simplex[worst], -alpha, xr);
      const double fr = eval(xr);
      if (fr < fv[best]) {
        point(centroid, simplex[worst], -gamma, xe);
        const double fe = eval(xe);
        if (fe < fr) {
          simplex[worst] = xe;
          fv[worst] = fe;
        } else {
          simplex[worst] = xr;
          fv[worst] = fr;
        }
        continue;
      }
      if (fr < fv[second]) {
        simplex[worst] = xr;
        fv[worst] = fr;
        continue;
      }
      const bool outside = fr < fv[worst];
      point(centroid, outside ? xr : simplex[worst], rho, xc);
      const double fc = eval(xc);
      if (fc < (outside ? fr : fv[worst])) {
        simplex[worst] = xc;
        fv[worst] = fc;
        continue;
      }
      for (std::size_t k = 1; k <= n; ++k) {
        point(simplex[best], simplex[order[k]], sigma, xc);
        simplex[order[k]] = xc;
        fv[order[k]] = eval(xc);
      }
    }

    for (std::size_t k = 0; k <= n; ++k) {
      if (fv[k] < res.value) {
        res.value = fv[k];
        res.x = simplex[k];
      }
    }
    if (hit()) {
      res.reached_target = true;
      return res;
    }
    if (before - res.value <= opt.value_tol) break;
  }
  return res;
}

}  // namespace qgame
