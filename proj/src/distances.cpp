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

#include "maxstab/distances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "maxstab/error.hpp"
#include "maxstab/rng.hpp"
#include "optimize.hpp"

namespace maxstab {
namespace {

int default_grid(std::size_t dim) {
  switch (dim) {
    case 2: return 200;
    case 3: return 40;
    case 4: return 14;
    default: return 0;
  }
}

struct Candidate {
  double value;
  std::vector<double> u;
};

// Unchecked closed form, valid for any positive a, b.
RadialSup radial_closed_form(double a, double b) {
  if (a == b) return {0.0, 1.0 / a};
  if (a > b) std::swap(a, b);
  const double gap = b - a;
  const double r = std::log1p(gap / a) / gap;
  // exp(-a r) - exp(-b r) = exp(-a r) (1 - a/b)
  return {std::exp(-a * r) * gap / b, r};
}

}  // namespace

SectionSearchResult search_canonical_section(
    std::size_t dim, const std::function<double(std::span<const double>)>& objective,
    const SectionSearchOptions& options) {
  require(dim >= 1, "section search needs dimension >= 1");
  require(options.u_max > 1.0, "u_max must exceed 1");
  SectionSearchResult out;
  if (dim == 1) {
    out.argmax = {1.0};
    out.value = out.certified_lower = objective(out.argmax);
    out.evaluations = 1;
    return out;
  }
  const std::size_t free = dim - 1;
  const double log_max = std::log(options.u_max);
  const int grid = options.grid > 0 ? options.grid : default_grid(dim);
  out.heuristic = grid == 0;

  const std::size_t keep = static_cast<std::size_t>(std::max(options.refine_starts, 0));
  std::vector<Candidate> top;
  auto consider = [&](double v, const std::vector<double>& u) {
    ++out.evaluations;
    if (std::isnan(v)) return;
    if (out.argmax.empty() || v > out.certified_lower) {
      out.certified_lower = v;
      out.argmax = u;
    }
    if (keep == 0) return;
    if (top.size() < keep) {
      top.push_back({v, u});
    } else {
      auto worst = std::min_element(top.begin(), top.end(),
                                    [](const Candidate& a, const Candidate& b) {
                                      return a.value < b.value;
                                    });
      if (v > worst->value) *worst = {v, u};
    }
  };

  std::vector<double> u(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    auto place = [&](const std::vector<double>& free_values) {
      std::size_t f = 0;
      for (std::size_t i = 0; i < dim; ++i) u[i] = (i == k) ? 1.0 : free_values[f++];
    };
    std::vector<double> fv(free);
    if (grid > 0) {
      // Axis values: log grid on [1, u_max] followed by +inf.
      std::vector<double> axis(grid + 1);
      for (int g = 0; g < grid; ++g) {
        axis[g] = grid == 1 ? 1.0 : std::exp(log_max * g / (grid - 1));
      }
      axis[grid] = kInf;
      std::vector<int> idx(free, 0);
      while (true) {
        for (std::size_t f = 0; f < free; ++f) fv[f] = axis[idx[f]];
        place(fv);
        consider(objective(u), u);
        std::size_t f = 0;
        while (f < free && ++idx[f] == grid + 1) idx[f++] = 0;
        if (f == free) break;
      }
    } else {
      CounterRng rng(options.seed, k);
      std::fill(fv.begin(), fv.end(), 1.0);
      place(fv);
      consider(objective(u), u);
      for (int s = 0; s < options.random_points; ++s) {
        for (auto& v : fv) {
          const double pick = rng.uniform();
          v = pick < 0.1 ? 1.0 : pick < 0.15 ? kInf : std::exp(log_max * rng.uniform());
        }
        place(fv);
        consider(objective(u), u);
      }
    }
  }
  out.value = out.certified_lower;

  // Refine the best cells over their finite free coordinates in log space.
  const double step = grid > 1 ? log_max / (grid - 1) : log_max / 10.0;
  for (const auto& c : top) {
    std::size_t pinned = 0;
    while (pinned < dim && c.u[pinned] != 1.0) ++pinned;
    std::vector<std::size_t> coords;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i != pinned && !std::isinf(c.u[i])) coords.push_back(i);
    }
    if (coords.empty()) continue;
    std::vector<double> start(coords.size()), lo(coords.size(), 0.0),
        hi(coords.size(), log_max);
    for (std::size_t j = 0; j < coords.size(); ++j) start[j] = std::log(c.u[coords[j]]);
    std::vector<double> trial = c.u;
    auto f = [&](const std::vector<double>& t) {
      for (std::size_t j = 0; j < coords.size(); ++j) trial[coords[j]] = std::exp(t[j]);
      const double v = objective(trial);
      return std::isnan(v) ? -kInf : v;
    };
    const auto r = detail::nelder_mead_max(f, start, lo, hi, step);
    out.evaluations += static_cast<std::size_t>(r.evaluations);
    out.converged = out.converged && r.converged;
    if (r.value > out.value) {
      out.value = r.value;
      for (std::size_t j = 0; j < coords.size(); ++j) trial[coords[j]] = std::exp(r.x[j]);
      out.argmax = trial;
    }
  }
  return out;
}

RadialSup radial_sup(double a, double b) {
  require(a >= 1.0 - 1e-12 && b >= 1.0 - 1e-12,
          "radial_sup needs a, b >= 1 (margins must be unit Frechet)");
  return radial_closed_form(a, b);
}

KolmogorovResult kolmogorov_exact(const MaxStableModel& m1,
                                  const MaxStableModel& m2,
                                  const SectionSearchOptions& options) {
  require(m1.dim() == m2.dim(), "kolmogorov_exact: dimension mismatch");
  const bool same_alpha = m1.alpha() == m2.alpha();
  auto objective = [&](std::span<const double> u) {
    const double a = m1.exponent(u);
    const double b = m2.exponent(u);
    if (same_alpha) return radial_closed_form(a, b).value;
    return kolmogorov_univariate_frechet(a, m1.alpha(), b, m2.alpha()).value;
  };
  const auto s = search_canonical_section(m1.dim(), objective, options);

  KolmogorovResult out;
  out.value = s.value;
  out.certified_lower = s.certified_lower;
  out.witness_u = s.argmax;
  out.converged = s.converged;
  out.heuristic = s.heuristic;
  out.evaluations = s.evaluations;
  const double a = m1.exponent(out.witness_u);
  const double b = m2.exponent(out.witness_u);
  double scale;  // x = u * scale
  if (same_alpha) {
    out.witness_r = radial_closed_form(a, b).r_star;
    scale = std::pow(out.witness_r, -1.0 / m1.alpha());
  } else {
    scale = kolmogorov_univariate_frechet(a, m1.alpha(), b, m2.alpha()).argmax_x;
    out.witness_r = std::pow(scale, -m1.alpha());
  }
  out.witness_x = out.witness_u;
  for (double& v : out.witness_x) v *= scale;
  return out;
}

UnivariateFrechetDistance kolmogorov_univariate_frechet(double c1, double a1,
                                                        double c2, double a2) {
  require(c1 > 0.0 && a1 > 0.0 && c2 > 0.0 && a2 > 0.0,
          "Frechet parameters must be positive");
  UnivariateFrechetDistance out;
  out.analytic_bound = std::abs(a1 - a2) / (std::exp(2.0) * std::min(a1, a2)) +
                       std::abs(c1 - c2) / (std::numbers::e * std::min(c1, c2));
  if (a1 == a2) {
    // Same index: t = x^-a reduces to the radial problem in t.
    const auto r = radial_closed_form(c1, c2);
    out.value = r.value;
    out.argmax_x = std::pow(r.r_star, -1.0 / a1);
    out.bound_holds = out.value <= out.analytic_bound + 1e-12;
    return out;
  }
  // s = ln t1 with t1 = c1 x^-a1 and ln t2 = ln c2 + k (s - ln c1).
  const double k = a2 / a1;
  const double lc1 = std::log(c1);
  const double lc2 = std::log(c2);
  auto t2_log = [&](double s) { return lc2 + k * (s - lc1); };
  auto diff = [&](double s) {
    return std::abs(std::exp(-std::exp(s)) - std::exp(-std::exp(t2_log(s))));
  };
  const double lo_cut = -40.0;
  const double hi_cut = std::log(40.0);
  auto preimage = [&](double l2) { return lc1 + (l2 - lc2) / k; };
  const double lo = std::min(lo_cut, preimage(lo_cut));
  const double hi = std::max(hi_cut, preimage(hi_cut));
  const int n = static_cast<int>(std::clamp(40.0 * (hi - lo), 2000.0, 200000.0));
  const auto m = detail::scan_and_polish(diff, lo, hi, n, 4);
  out.value = m.value;
  out.argmax_x = std::pow(c1 / std::exp(m.x), 1.0 / a1);
  out.bound_holds = out.value <= out.analytic_bound + 1e-12;
  return out;
}

WeightedPoints as_law(const DeHaanRepresenter& z) {
  WeightedPoints w;
  for (const auto& a : z.atoms()) {
    w.points.push_back(a.vector);
    w.probs.push_back(a.prob);
  }
  return w;
}

WassersteinResult wasserstein1_sup(const WeightedPoints& p, const WeightedPoints& q,
                                   bool power, double alpha) {
  require(!p.points.empty() && !q.points.empty(), "empty law");
  require(p.points.size() == p.probs.size() && q.points.size() == q.probs.size(),
          "law points/probabilities mismatch");
  const std::size_t d = p.points.front().size();
  auto lift = [&](const std::vector<double>& z) {
    require(z.size() == d, "wasserstein1_sup: dimension mismatch");
    std::vector<double> w(z);
    if (power) {
      for (double& v : w) v = std::pow(v, alpha);
    }
    return w;
  };
  std::vector<std::vector<double>> lp, lq;
  for (const auto& z : p.points) lp.push_back(lift(z));
  for (const auto& z : q.points) lq.push_back(lift(z));
  Eigen::MatrixXd cost(lp.size(), lq.size());
  for (std::size_t j = 0; j < lp.size(); ++j) {
    for (std::size_t k = 0; k < lq.size(); ++k) {
      double c = 0.0;
      for (std::size_t i = 0; i < d; ++i) c = std::max(c, std::abs(lp[j][i] - lq[k][i]));
      cost(j, k) = c;
    }
  }
  WassersteinResult out;
  out.plan = solve_transport(p.probs, q.probs, cost);
  out.value = out.plan.cost;
  return out;
}

WassersteinResult wasserstein1_sup(const DeHaanRepresenter& p,
                                   const DeHaanRepresenter& q, bool power) {
  require(p.dim() == q.dim(), "wasserstein1_sup: dimension mismatch");
  require(!power || p.alpha() == q.alpha(), "wasserstein1_sup: alpha mismatch");
  return wasserstein1_sup(as_law(p), as_law(q), power, p.alpha());
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m, double clip) {
  require(m.rows() == m.cols(), "matrix square root needs a square matrix");
  require(m.isApprox(m.transpose(), 1e-10) || m.norm() == 0.0,
          "matrix square root needs a symmetric matrix");
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  Eigen::VectorXd ev = es.eigenvalues();
  const double tol = clip * std::max(1.0, ev.cwiseAbs().maxCoeff());
  require(ev.minCoeff() >= -tol, "matrix is not positive semidefinite");
  ev = ev.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

double w2_gelbrich(const Eigen::VectorXd& mean1, const Eigen::MatrixXd& cov1,
                   const Eigen::VectorXd& mean2, const Eigen::MatrixXd& cov2) {
  require(mean1.size() == mean2.size() && cov1.rows() == mean1.size() &&
              cov2.rows() == mean2.size(),
          "w2_gelbrich: dimension mismatch");
  const Eigen::MatrixXd s2 = psd_sqrt(cov2);
  psd_sqrt(cov1);  // validates cov1
  const Eigen::MatrixXd cross = psd_sqrt(s2 * cov1 * s2);
  const double trace = (cov1 + cov2 - 2.0 * cross).trace();
  return std::sqrt(std::max(0.0, (mean1 - mean2).squaredNorm() + trace));
}

std::vector<double> softmax(std::span<const double> u) {
  require(!u.empty(), "softmax of an empty vector");
  const double top = *std::max_element(u.begin(), u.end());
  std::vector<double> s(u.size());
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    s[i] = std::exp(u[i] - top);
    total += s[i];
  }
  for (double& v : s) v /= total;
  return s;
}

double softmax_lipschitz_constant() { return std::numbers::sqrt2 / 4.0; }

}  // namespace maxstab
