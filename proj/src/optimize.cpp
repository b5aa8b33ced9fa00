// Copyright 2026 The maxstab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/tools/minima.hpp>

namespace maxstab::detail {

LocalMax nelder_mead_max(const std::function<double(const std::vector<double>&)>& f,
                         std::vector<double> start, const std::vector<double>& lo,
                         const std::vector<double>& hi, double initial_step,
                         double ftol, int max_evaluations) {
  const std::size_t n = start.size();
  LocalMax out;
  auto clamp = [&](std::vector<double> x) {
    for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    return x;
  };
  auto eval = [&](const std::vector<double>& x) {
    ++out.evaluations;
    return f(clamp(x));
  };
  if (n == 0) {
    out.x = start;
    out.value = eval(start);
    out.converged = true;
    return out;
  }

  std::vector<std::vector<double>> simplex(n + 1, clamp(start));
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    auto& v = simplex[i + 1];
    // Step inward when the start sits on the upper face.
    v[i] += (v[i] + initial_step <= hi[i]) ? initial_step : -initial_step;
  }
  for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  while (out.evaluations < max_evaluations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    double size = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        size = std::max(size, std::abs(simplex[i][k] - simplex[best][k]));
      }
    }
    if (values[best] - values[worst] <= ftol && size <= 1e-9) {
      out.converged = true;
      break;
    }
    if (size <= 1e-12) {
      out.converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / n;
    }
    auto along = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t k = 0; k < n; ++k) {
        p[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
      }
      return clamp(p);
    };
    auto reflected = along(-1.0);
    const double fr = eval(reflected);
    if (fr > values[best]) {
      auto expanded = along(-2.0);
      const double fe = eval(expanded);
      if (fe > fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
    } else if (fr > values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
    } else {
      auto contracted = fr > values[worst] ? along(-0.5) : along(0.5);
      const double fc = eval(contracted);
      if (fc > std::max(fr, values[worst])) {
        simplex[worst] = contracted;
        values[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t k = 0; k < n; ++k) {
            simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
          }
          simplex[i] = clamp(simplex[i]);
          values[i] = eval(simplex[i]);
        }
      }
    }
  }
  const auto best = static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
  out.x = clamp(simplex[best]);
  out.value = values[best];
  return out;
}

ScalarMax brent_max(const std::function<double(double)>& f, double a, double b) {
  const auto r = boost::math::tools::brent_find_minima(
      [&](double x) { return -f(x); }, a, b, std::numeric_limits<double>::digits);
  return {r.first, -r.second};
}

ScalarMax scan_and_polish(const std::function<double(double)>& f, double a,
                          double b, int n, int keep) {
  std::vector<double> xs(n), fs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = a + (b - a) * i / (n - 1);
    fs[i] = f(xs[i]);
  }
  std::vector<int> peaks;
  for (int i = 0; i < n; ++i) {
    const bool left = i == 0 || fs[i] >= fs[i - 1];
    const bool right = i == n - 1 || fs[i] >= fs[i + 1];
    if (left && right) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int p, int q) { return fs[p] > fs[q]; });
  if (static_cast<int>(peaks.size()) > keep) peaks.resize(keep);
  ScalarMax best{xs[0], fs[0]};
  for (int i = 0; i < n; ++i) {
    if (fs[i] > best.value) best = {xs[i], fs[i]};
  }
  for (int p : peaks) {
    const double lo = xs[std::max(0, p - 1)];
    const double hi = xs[std::min(n - 1, p + 1)];
    if (hi <= lo) continue;
    const auto m = brent_max(f, lo, hi);
    if (m.value > best.value) best = m;
  }
  return best;
}

}  // namespace maxstab::detail
