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

#include "maxstab/psi.hpp"

#include <algorithm>
#include <cmath>

#include "maxstab/error.hpp"
#include "maxstab/mvn.hpp"

namespace maxstab {

std::size_t psi_cell(std::span<const double> s, std::span<const double> x) {
  std::size_t best = 0;
  double best_ratio = std::isinf(x[0]) ? 0.0 : s[0] / x[0];
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double r = std::isinf(x[i]) ? 0.0 : s[i] / x[i];
    if (r > best_ratio) {  // strict: ties stay with the lower index
      best_ratio = r;
      best = i;
    }
  }
  return best;
}

PsiVector psi_discrete(const AngularMeasure& h, std::span<const double> x) {
  require(x.size() == h.dim(), "psi_discrete: wrong dimension");
  for (double v : x) require(v > 0.0, "psi_discrete: x must be positive");
  PsiVector out;
  out.values.assign(h.dim(), 0.0);
  out.point.assign(x.begin(), x.end());
  out.source = "discrete_spectral";
  for (const auto& a : h.atoms()) {
    const std::size_t i = psi_cell(a.point, x);
    if (a.point[i] > 0.0) out.values[i] += a.weight * std::pow(a.point[i], h.alpha());
  }
  return out;
}

double psi_hr(const Eigen::MatrixXd& lambda, std::span<const double> x,
              std::size_t i, const MvnSettings& mvn) {
  const auto d = static_cast<std::size_t>(lambda.rows());
  require(x.size() == d, "psi_hr: wrong dimension");
  require(i < d, "psi_hr: index out of range");
  for (double v : x) require(v > 0.0, "psi_hr: x must be positive");
  if (d == 1) return 1.0;
  if (std::isinf(x[i])) return 0.0;

  bool all_tiny = true;
  for (std::size_t j = 0; j < d; ++j) {
    if (j != i && lambda(i, j) >= 1e-8) all_tiny = false;
  }
  if (all_tiny) {
    // Comonotone limit: the whole mass sits in the first argmin cell.
    std::size_t first = 0;
    for (std::size_t j = 1; j < d; ++j) {
      if (x[j] < x[first]) first = j;
    }
    bool others_tiny = true;
    for (std::size_t j = 0; j < d && others_tiny; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        if (j != k && lambda(j, k) >= 1e-8) others_tiny = false;
      }
    }
    if (others_tiny) return first == i ? 1.0 : 0.0;
  }

  std::vector<double> q;
  q.reserve(d - 1);
  for (std::size_t j = 0; j < d; ++j) {
    if (j == i) continue;
    const double lij = lambda(i, j);
    if (std::isinf(x[j])) {
      q.push_back(kInf);
    } else if (lij < 1e-8 && x[j] != x[i]) {
      q.push_back(x[j] > x[i] ? kInf : -kInf);
    } else {
      q.push_back(lij / 2.0 + std::log(x[j] / x[i]) / lij);
    }
  }
  MvnProblem problem;
  problem.upper = std::move(q);
  problem.correlation = hr_correlation(lambda, i);
  for (Eigen::Index a = 0; a < problem.correlation.rows(); ++a) {
    for (Eigen::Index b = 0; b < problem.correlation.cols(); ++b) {
      if (a != b) {
        problem.correlation(a, b) = std::clamp(problem.correlation(a, b), -1.0, 1.0);
      }
    }
  }
  problem.tol = mvn.tol;
  problem.seed = mvn.seed;
  return mvn_cdf(problem).value;
}

PsiVector psi(const MaxStableModel& model, std::span<const double> x) {
  require(x.size() == model.dim(), "psi: wrong dimension");
  for (double v : x) require(v > 0.0, "psi: x must be positive");
  switch (model.family()) {
    case Family::kIndependent:
    case Family::kComonotone:
    case Family::kDiscreteSpectral: {
      PsiVector out = psi_discrete(*model.angular_measure(), x);
      out.source = model.id();
      return out;
    }
    case Family::kLogistic: {
      PsiVector out;
      out.point.assign(x.begin(), x.end());
      out.source = model.id();
      out.values.assign(model.dim(), 0.0);
      // Psi_i = x_i^(alpha - alpha/theta) (sum_j x_j^(-alpha/theta))^(theta - 1)
      const double k = model.alpha() / model.theta();
      double top = -kInf;
      for (double xi : x) {
        if (!std::isinf(xi)) top = std::max(top, -k * std::log(xi));
      }
      if (top == -kInf) return out;
      double s = 0.0;
      for (double xi : x) {
        if (!std::isinf(xi)) s += std::exp(-k * std::log(xi) - top);
      }
      const double lse = top + std::log(s);
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::isinf(x[i])) continue;
        const double lx = std::log(x[i]);
        out.values[i] = std::exp(model.alpha() * lx - k * lx + (model.theta() - 1.0) * lse);
      }
      return out;
    }
    case Family::kHuslerReiss:
    case Family::kBrownResnick: {
      PsiVector out;
      out.point.assign(x.begin(), x.end());
      out.source = model.id();
      out.values.resize(model.dim());
      for (std::size_t i = 0; i < model.dim(); ++i) {
        out.values[i] = psi_hr(model.lambda(), x, i, model.mvn_settings());
      }
      return out;
    }
  }
  throw InvalidArgument("psi: unsupported family");
}

SectionSearchResult psi_sup_discrepancy(const MaxStableModel& m1,
                                        const MaxStableModel& m2,
                                        const SectionSearchOptions& options) {
  require(m1.dim() == m2.dim(), "psi_sup_discrepancy: dimension mismatch");
  require(m1.alpha() == m2.alpha(), "psi_sup_discrepancy: alpha mismatch");
  auto objective = [&](std::span<const double> u) {
    const auto p1 = psi(m1, u);
    const auto p2 = psi(m2, u);
    double total = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) total += std::abs(p1.values[i] - p2.values[i]);
    return total;
  };
  return search_canonical_section(m1.dim(), objective, options);
}

}  // namespace maxstab
