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

#ifndef MAXSTAB_PSI_HPP_
#define MAXSTAB_PSI_HPP_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "maxstab/distances.hpp"
#include "maxstab/models.hpp"
#include "maxstab/spectral.hpp"

namespace maxstab {

// Psi-decomposition V(x) = sum_i x_i^(-alpha) Psi_i(x).
struct PsiVector {
  std::vector<double> values;
  std::vector<double> point;
  std::string source;
};

// Inf-argmax selector on a discrete angular measure: an atom s goes to the
// lowest index i maximizing s_i / x_i (exact comparisons).
PsiVector psi_discrete(const AngularMeasure& h, std::span<const double> x);

// Index of the cell C_i(x) containing the point s.
std::size_t psi_cell(std::span<const double> s, std::span<const double> x);

// Husler-Reiss Psi_i(x) = Phi_{d-1}(q^(i)(x); R^(i)).
double psi_hr(const Eigen::MatrixXd& lambda, std::span<const double> x,
              std::size_t i, const MvnSettings& mvn = {});

// Psi for any catalog model. Logistic uses its closed form, which agrees with
// the selector form since the logistic representer has no ties.
PsiVector psi(const MaxStableModel& model, std::span<const double> x);

// sup over the canonical section of sum_i |Psi_i^(1)(u) - Psi_i^(2)(u)|.
SectionSearchResult psi_sup_discrepancy(const MaxStableModel& m1,
                                        const MaxStableModel& m2,
                                        const SectionSearchOptions& options = {});

}  // namespace maxstab

#endif  // MAXSTAB_PSI_HPP_
