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

#include "maxstab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "maxstab/error.hpp"
#include "maxstab/psi.hpp"
#include "optimize.hpp"

namespace maxstab {
namespace {

constexpr double kInvE = 1.0 / std::numbers::e;

}  // namespace

std::optional<double> BoundReport::slack() const {
  if (!dominated_quantity) return std::nullopt;
  return value - *dominated_quantity;
}

bool BoundReport::holds(double tol) const {
  const auto s = slack();
  return !s || *s >= -tol;
}

void BoundReport::dominate(double quantity, std::string label) {
  dominated_quantity = quantity;
  dominated_label = std::move(label);
}

BoundReport bound_wasserstein(const DeHaanRepresenter& z1, const DeHaanRepresenter& z2) {
  require(z1.alpha() == z2.alpha(), "bound_wasserstein: alpha mismatch");
  const auto w = wasserstein1_sup(z1, z2, true);
  BoundReport r;
  r.name = "wasserstein";
  r.value = w.value * kInvE;
  r.constants = {{"factor_1_over_e", kInvE}, {"w1_sup", w.value}};
  return r;
}

BoundReport bound_wasserstein(
    const AngularMeasure& h1, const AngularMeasure& h2,
    std::span<const std::pair<DeHaanRepresenter, DeHaanRepresenter>> alternatives) {
  BoundReport best = bound_wasserstein(canonical_representer(h1), canonical_representer(h2));
  best.detail = "canonical";
  for (std::size_t k = 0; k < alternatives.size(); ++k) {
    auto r = bound_wasserstein(alternatives[k].first, alternatives[k].second);
    if (r.value < best.value) {
      best = std::move(r);
      best.detail = "alternative " + std::to_string(k);
    }
  }
  return best;
}

BoundReport bound_tv(const AngularMeasure& h1, const AngularMeasure& h2,
                     std::span<const NormSpec> norms) {
  require(h1.dim() == h2.dim(), "bound_tv: dimension mismatch");
  require(h1.alpha() == h2.alpha(), "bound_tv: alpha mismatch");
  std::vector<NormSpec> candidates(norms.begin(), norms.end());
  if (candidates.empty()) candidates.push_back(NormSpec::lp(h1.alpha()));
  BoundReport best;
  best.name = "tv";
  bool first = true;
  for (const auto& norm : candidates) {
    const double tv = tv_distance(reproject(h1, norm), reproject(h2, norm));
    const auto m = m_alpha(norm, h1.alpha(), h1.dim());
    const double value = m.value * tv * kInvE;
    if (first || value < best.value) {
      first = false;
      best.value = value;
      best.detail = norm.describe();
      best.constants = {{"m_alpha", m.value},
                        {"tv", tv},
                        {"factor_1_over_e", kInvE},
                        {"m_alpha_converged", m.converged ? 1.0 : 0.0}};
    }
  }
  return best;
}

BoundReport bound_psi(const MaxStableModel& m1, const MaxStableModel& m2,
                      const SectionSearchOptions& options) {
  const auto s = psi_sup_discrepancy(m1, m2, options);
  BoundReport r;
  r.name = "psi";
  r.value = s.value * kInvE;
  r.constants = {{"psi_sup", s.value},
                 {"psi_sup_grid", s.certified_lower},
                 {"factor_1_over_e", kInvE}};
  if (s.heuristic) r.detail = "heuristic search";
  return r;
}

BoundReport bound_alpha_mismatch(const AngularMeasure& h, double alpha1, double alpha2) {
  require(alpha1 > 0.0 && alpha2 > 0.0, "alpha indices must be positive");
  const double lo = std::min(alpha1, alpha2);
  const double hi = std::max(alpha1, alpha2);
  const double nu0 = h.total_mass();
  const double c_inf = std::max(1.0, sup_inf_norm_on_sphere(h.norm(), h.dim()));
  const double factor = std::max(kInvE / lo, std::pow(c_inf, hi) * std::log(c_inf));
  BoundReport r;
  r.name = "alpha_mismatch";
  r.value = nu0 * kInvE * (hi - lo) * factor;
  r.constants = {{"nu0", nu0}, {"c_inf", c_inf}, {"factor_1_over_e", kInvE}};
  return r;
}

double bound_alpha_lp(std::size_t dim, double p, double alpha1, double alpha2) {
  require(dim >= 1, "dimension must be positive");
  require(p > 0.0 && alpha1 > 0.0 && alpha2 > 0.0, "p and alpha must be positive");
  const double lo = std::min(alpha1, alpha2);
  const double hi = std::max(alpha1, alpha2);
  const double expo = std::isinf(p) ? 1.0 : std::max(1.0, hi / p);
  return std::pow(static_cast<double>(dim), expo) * (hi - lo) /
         (std::exp(2.0) * lo);
}

BoundReport bound_brown_resnick(const Eigen::MatrixXd& sigma1,
                                std::span<const double> c1,
                                const Eigen::MatrixXd& sigma2,
                                std::span<const double> c2) {
  const auto d = sigma1.rows();
  require(sigma2.rows() == d && sigma1.cols() == d && sigma2.cols() == d,
          "bound_brown_resnick: dimension mismatch");
  auto shift = [&](std::span<const double> c, const Eigen::MatrixXd& s) {
    Eigen::VectorXd v(d);
    if (c.empty()) {
      v = s.diagonal() / 2.0;
    } else {
      require(static_cast<Eigen::Index>(c.size()) == d,
              "bound_brown_resnick: shift has wrong length");
      for (Eigen::Index i = 0; i < d; ++i) v(i) = c[i];
    }
    return v;
  };
  const Eigen::VectorXd s1 = shift(c1, sigma1);
  const Eigen::VectorXd s2 = shift(c2, sigma2);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(d);
  const double w2 = w2_gelbrich(zero, sigma1, zero, sigma2);
  const double cdiff = (s1 - s2).norm();
  const double lead = std::numbers::sqrt2 * static_cast<double>(d) / (4.0 * std::numbers::e);
  const double diag_diff = (sigma1.diagonal() - sigma2.diagonal()).norm();
  BoundReport r;
  r.name = "brown_resnick";
  r.value = lead * (w2 + cdiff);
  r.constants = {{"leading_factor", lead},
                 {"w2_gelbrich", w2},
                 {"shift_diff", cdiff},
                 {"example_form", lead * (diag_diff + w2 * w2)}};
  return r;
}

BoundReport bound_different_margins(double dk_term, const MarginSpec& margins1,
                                    const MarginSpec& margins2, bool exact_margins) {
  const std::size_t d = margins1.scale.size();
  margins1.validate(d);
  margins2.validate(d);
  require(dk_term >= 0.0, "d_K term must be nonnegative");
  BoundReport r;
  r.name = exact_margins ? "different_margins_exact" : "different_margins_analytic";
  double total = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const auto u = kolmogorov_univariate_frechet(margins1.scale[i], margins1.index[i],
                                                 margins2.scale[i], margins2.index[i]);
    const double term = exact_margins ? u.value : u.analytic_bound;
    r.constants["margin_" + std::to_string(i)] = term;
    total += term;
  }
  r.constants["dk_term"] = dk_term;
  r.value = dk_term + total;
  return r;
}

double k_psi(const GeneratorSpec& generator) {
  auto f = [&](double s) {
    const double t = std::exp(s);
    return t * std::abs(generator.derivative(t));
  };
  const auto m = detail::scan_and_polish(f, -40.0, 40.0, 4000, 3);
  // The endpoints t -> 0 and t -> inf: both catalog generators vanish there.
  const double value = std::max({m.value, f(-40.0), f(40.0)});
  require(std::isfinite(value), "K_psi is not finite for this generator");
  return value;
}

BoundReport bound_archimax(const GeneratorSpec& generator, double dk_term) {
  require(dk_term >= 0.0, "d_K term must be nonnegative");
  BoundReport r;
  r.name = "archimax";
  r.detail = generator.name();
  const double k = k_psi(generator);
  r.value = std::numbers::e * k * dk_term;
  r.constants = {{"k_psi", k}, {"dk_term", dk_term}};
  return r;
}

std::vector<BoundReport> applicable_bounds(const MaxStableModel& m1,
                                           const MaxStableModel& m2,
                                           std::span<const NormSpec> norms,
                                           const SectionSearchOptions& options) {
  require(m1.dim() == m2.dim(), "applicable_bounds: dimension mismatch");
  std::vector<BoundReport> out;
  const auto h1 = m1.angular_measure();
  const auto h2 = m2.angular_measure();
  const bool same_alpha = m1.alpha() == m2.alpha();
  if (same_alpha) {
    if (h1 && h2) {
      out.push_back(bound_wasserstein(*h1, *h2));
      std::vector<NormSpec> candidates{NormSpec::lp(m1.alpha())};
      candidates.insert(candidates.end(), norms.begin(), norms.end());
      out.push_back(bound_tv(*h1, *h2, candidates));
    }
    out.push_back(bound_psi(m1, m2, options));
  } else if (h1 && h2 && h1->norm() == h2->norm() &&
             h1->atoms().size() == h2->atoms().size()) {
    bool same = true;
    for (std::size_t k = 0; same && k < h1->atoms().size(); ++k) {
      const auto& a = h1->atoms()[k];
      const auto& b = h2->atoms()[k];
      same = a.point == b.point && a.weight == b.weight;
    }
    if (same) {
      out.push_back(bound_alpha_mismatch(*h1, m1.alpha(), m2.alpha()));
      if (!h1->norm().is_weighted()) {
        BoundReport r;
        r.name = "alpha_mismatch_lp";
        r.value = bound_alpha_lp(m1.dim(), h1->norm().p(), m1.alpha(), m2.alpha());
        r.detail = h1->norm().describe();
        out.push_back(r);
      }
    }
  }
  const bool br1 = m1.family() == Family::kBrownResnick || m1.family() == Family::kHuslerReiss;
  const bool br2 = m2.family() == Family::kBrownResnick || m2.family() == Family::kHuslerReiss;
  if (br1 && br2) {
    auto cov = [](const MaxStableModel& m) {
      return m.family() == Family::kBrownResnick ? m.covariance()
                                                 : variogram_to_covariance(m.lambda());
    };
    out.push_back(bound_brown_resnick(cov(m1), {}, cov(m2), {}));
  }
  std::stable_sort(out.begin(), out.end(), [](const BoundReport& a, const BoundReport& b) {
    return a.value < b.value;
  });
  return out;
}

}  // namespace maxstab
