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

#ifndef MAXSTAB_BOUNDS_HPP_
#define MAXSTAB_BOUNDS_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "maxstab/distances.hpp"
#include "maxstab/models.hpp"
#include "maxstab/norm.hpp"
#include "maxstab/spectral.hpp"

namespace maxstab {

// A named upper bound on d_K together with the constants that produced it.
struct BoundReport {
  std::string name;
  double value = 0.0;
  std::map<std::string, double> constants;
  std::string detail;  // e.g. the winning norm of a TV bound
  // The distance the bound is compared against: an exact d_K or a
  // certified lower bound on it.
  std::optional<double> dominated_quantity;
  std::string dominated_label;

  std::optional<double> slack() const;
  // True unless a dominated quantity is attached and exceeds the bound by
  // more than `tol`.
  bool holds(double tol = 1e-9) const;
  void dominate(double quantity, std::string label);
};

// d_K <= W_1,inf((Z1)^alpha, (Z2)^alpha) / e.
BoundReport bound_wasserstein(const DeHaanRepresenter& z1, const DeHaanRepresenter& z2);

// Same bound evaluated at the canonical representers of two angular
// measures, and at any extra representer pairs; the smallest value wins.
BoundReport bound_wasserstein(
    const AngularMeasure& h1, const AngularMeasure& h2,
    std::span<const std::pair<DeHaanRepresenter, DeHaanRepresenter>> alternatives = {});

// min over the candidate norms of M_alpha ||H1 - H2||_TV / e after
// reprojecting both measures. An empty list means the l_alpha norm.
BoundReport bound_tv(const AngularMeasure& h1, const AngularMeasure& h2,
                     std::span<const NormSpec> norms = {});

// sup_u sum_i |Psi_i^(1)(u) - Psi_i^(2)(u)| / e.
BoundReport bound_psi(const MaxStableModel& m1, const MaxStableModel& m2,
                      const SectionSearchOptions& options = {});

// Same angular measure H used with indices alpha1 and alpha2:
// (nu0 / e) |alpha1 - alpha2| max(1 / (e alpha_*), C_inf^alpha^* ln C_inf).
BoundReport bound_alpha_mismatch(const AngularMeasure& h, double alpha1, double alpha2);

// The l_p closed form d^max(1, alpha^*/p) / e^2 * |alpha1 - alpha2| / alpha_*.
// The larger index is used in alpha / p, which gives the larger constant.
double bound_alpha_lp(std::size_t dim, double p, double alpha1, double alpha2);

// (sqrt(2) d / (4e)) (W_2(U1, U2) + ||c1 - c2||_2) for representers
// exp(U_k - c_k), U_k ~ N(0, Sigma_k); W_2 is the Gelbrich value. Empty
// shifts default to diag(Sigma_k) / 2. The constant "example_form" holds the
// variant with ||diag(Sigma1) - diag(Sigma2)||_2 plus the unsquare-rooted
// trace term.
BoundReport bound_brown_resnick(const Eigen::MatrixXd& sigma1,
                                std::span<const double> c1,
                                const Eigen::MatrixXd& sigma2,
                                std::span<const double> c2);

// d_K(F~1, F~2) <= d_K term + per-margin terms. With `exact_margins` the
// per-margin terms are exact univariate Frechet distances, otherwise the
// analytic Delta alpha / (e^2 alpha_*) + |Delta c| / (e min c).
BoundReport bound_different_margins(double dk_term, const MarginSpec& margins1,
                                    const MarginSpec& margins2, bool exact_margins);

// K_psi = sup_{t >= 0} t |psi'(t)|.
double k_psi(const GeneratorSpec& generator);

// e K_psi d_K term.
BoundReport bound_archimax(const GeneratorSpec& generator, double dk_term);

// Every bound that applies to the pair, sorted by value: Wasserstein and TV
// for finite angular measures, Psi for equal indices, the index-mismatch
// bound for a shared angular measure, and the Brown-Resnick bound.
std::vector<BoundReport> applicable_bounds(const MaxStableModel& m1,
                                           const MaxStableModel& m2,
                                           std::span<const NormSpec> norms = {},
                                           const SectionSearchOptions& options = {});

}  // namespace maxstab

#endif  // MAXSTAB_BOUNDS_HPP_
