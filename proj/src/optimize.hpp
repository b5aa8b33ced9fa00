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

#ifndef MAXSTAB_SRC_OPTIMIZE_HPP_
#define MAXSTAB_SRC_OPTIMIZE_HPP_

#include <functional>
#include <vector>

namespace maxstab::detail {

struct LocalMax {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
  int evaluations = 0;
};

// Nelder-Mead maximization inside the box [lo, hi]; trial points are clamped
// onto the box before evaluation.
LocalMax nelder_mead_max(const std::function<double(const std::vector<double>&)>& f,
                         std::vector<double> start, const std::vector<double>& lo,
                         const std::vector<double>& hi, double initial_step,
                         double ftol = 1e-13, int max_evaluations = 4000);

struct ScalarMax {
  double x = 0.0;
  double value = 0.0;
};

// Brent maximization of f on [a, b].
ScalarMax brent_max(const std::function<double(double)>& f, double a, double b);

// Scans [a, b] with n points, then polishes the best `keep` local maxima with
// Brent on their neighbouring cells.
ScalarMax scan_and_polish(const std::function<double(double)>& f, double a,
                          double b, int n = 2000, int keep = 3);

}  // namespace maxstab::detail

#endif  // MAXSTAB_SRC_OPTIMIZE_HPP_
