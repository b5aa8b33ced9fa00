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

#ifndef MAXSTAB_MVN_HPP_
#define MAXSTAB_MVN_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace maxstab {

double std_normal_cdf(double z);
double std_normal_pdf(double z);
double std_normal_quantile(double p);

// P(X <= h, Y <= k) for a standard bivariate normal with correlation rho.
double bivariate_normal_cdf(double h, double k, double rho);

// Default absolute tolerance: 1e-7 up to five dimensions, 1e-6 above.
double default_mvn_tol(std::size_t dim);

struct MvnProblem {
  std::vector<double> upper;       // entries may be +inf (or -inf)
  Eigen::MatrixXd correlation;     // unit diagonal, PSD
  double tol = 0.0;                // <= 0 selects default_mvn_tol
  std::uint64_t seed = 0x5eed5eedULL;
  std::size_t max_evaluations = 1u << 23;
};

struct MvnResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  std::size_t evaluations = 0;
};

// P(X <= upper) for X ~ N(0, correlation). One and two effective dimensions
// use the deterministic kernels; three or more use randomly shifted lattice
// rules over the separation-of-variables integrand with Genz-Bretz variable
// reordering. Deterministic for a fixed seed.
MvnResult mvn_cdf(const MvnProblem& problem);

// Throws unless `m` is symmetric PSD (eigenvalue slack `slack`) with unit
// diagonal.
void check_correlation(const Eigen::MatrixXd& m, double slack = 1e-10);

}  // namespace maxstab

#endif  // MAXSTAB_MVN_HPP_
