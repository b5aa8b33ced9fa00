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

#ifndef MAXSTAB_DISTANCES_HPP_
#define MAXSTAB_DISTANCES_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "maxstab/models.hpp"
#include "maxstab/spectral.hpp"
#include "maxstab/transport.hpp"

namespace maxstab {

// Options for searches over the canonical section {u > 0 : min_i u_i = 1}.
struct SectionSearchOptions {
  double u_max = 50.0;
  // Grid points per free axis; 0 picks 200 (d = 2), 40 (d = 3), 14 (d = 4).
  // Dimensions above 4 use a seeded random search instead.
  int grid = 0;
  int random_points = 4000;  // per min-attaining coordinate, d > 4
  int refine_starts = 16;
  std::uint64_t seed = 20240611ULL;
};

struct SectionSearchResult {
  double value = 0.0;            // refined maximum
  double certified_lower = 0.0;  // best value over the fixed point set
  std::vector<double> argmax;    // canonical-section point
  bool converged = true;         // every refinement converged
  bool heuristic = false;        // random search was used
  std::size_t evaluations = 0;
};

// Maximizes `objective` over the canonical section: for each coordinate k
// pinned at 1 the free coordinates range over a log grid on [1, u_max]
// extended by +inf, and the top cells are refined by Nelder-Mead.
SectionSearchResult search_canonical_section(
    std::size_t dim, const std::function<double(std::span<const double>)>& objective,
    const SectionSearchOptions& options = {});

struct RadialSup {
  double value = 0.0;
  double r_star = 0.0;
};

// sup_{r > 0} |exp(-a r) - exp(-b r)| in closed form; a, b >= 1.
RadialSup radial_sup(double a, double b);

struct KolmogorovResult {
  double value = 0.0;
  double certified_lower = 0.0;
  std::vector<double> witness_u;
  double witness_r = 0.0;        // x = witness_u * witness_r^(-1/alpha)
  std::vector<double> witness_x;
  bool converged = true;
  bool heuristic = false;
  std::size_t evaluations = 0;
};

// d_K(F1, F2) via the canonical-section reduction. Equal alphas use the
// closed-form radial supremum; unequal alphas fall back to the univariate
// Frechet supremum along each ray.
KolmogorovResult kolmogorov_exact(const MaxStableModel& m1,
                                  const MaxStableModel& m2,
                                  const SectionSearchOptions& options = {});

struct UnivariateFrechetDistance {
  double value = 0.0;
  double argmax_x = 0.0;
  double analytic_bound = 0.0;  // Delta alpha / (e^2 alpha_*) + |Delta c| / (e min c)
  bool bound_holds = true;
};

// sup_x |exp(-c1 x^-a1) - exp(-c2 x^-a2)|.
UnivariateFrechetDistance kolmogorov_univariate_frechet(double c1, double a1,
                                                        double c2, double a2);

struct WeightedPoints {
  std::vector<std::vector<double>> points;
  std::vector<double> probs;
};

WeightedPoints as_law(const DeHaanRepresenter& z);

struct WassersteinResult {
  double value = 0.0;
  TransportPlan plan;
};

// W_1 with sup-norm cost between two finite laws; with `power` the atoms are
// raised coordinatewise to `alpha` first.
WassersteinResult wasserstein1_sup(const WeightedPoints& p, const WeightedPoints& q,
                                   bool power = false, double alpha = 1.0);
WassersteinResult wasserstein1_sup(const DeHaanRepresenter& p,
                                   const DeHaanRepresenter& q, bool power = true);

// Symmetric PSD square root; eigenvalues below -clip are rejected, the rest
// are clipped at zero.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m, double clip = 1e-12);

// Gelbrich distance; equals W_2 between the corresponding Gaussians.
double w2_gelbrich(const Eigen::VectorXd& mean1, const Eigen::MatrixXd& cov1,
                   const Eigen::VectorXd& mean2, const Eigen::MatrixXd& cov2);

std::vector<double> softmax(std::span<const double> u);
double softmax_lipschitz_constant();

}  // namespace maxstab

#endif  // MAXSTAB_DISTANCES_HPP_
