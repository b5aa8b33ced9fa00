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

#ifndef MAXSTAB_MODELS_HPP_
#define MAXSTAB_MODELS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "maxstab/spectral.hpp"

namespace maxstab {

enum class Family {
  kLogistic,
  kIndependent,
  kComonotone,
  kDiscreteSpectral,
  kHuslerReiss,
  kBrownResnick,
};

std::string family_name(Family f);
Family parse_family(const std::string& name);

// Settings for the normal-CDF evaluations inside Husler-Reiss models.
struct MvnSettings {
  double tol = 1e-7;
  std::uint64_t seed = 0x5eed5eedULL;
};

// Max-stable law with unit alpha-Frechet margins, F = exp(-V).
//
// Coordinates of x may be +inf; such coordinates drop out of V, which is how
// lower-dimensional margins are evaluated.
class MaxStableModel {
 public:
  static MaxStableModel logistic(std::size_t dim, double theta, double alpha);
  static MaxStableModel independent(std::size_t dim, double alpha);
  static MaxStableModel comonotone(std::size_t dim, double alpha);
  static MaxStableModel discrete_spectral(AngularMeasure h);
  // lambda: symmetric, zero diagonal, positive off-diagonal; alpha is 1.
  static MaxStableModel husler_reiss(Eigen::MatrixXd lambda,
                                     MvnSettings mvn = {});
  // Brown-Resnick law of the log-normal representer exp(U - var(U)/2),
  // U ~ N(0, covariance); evaluated through its Husler-Reiss form.
  static MaxStableModel brown_resnick(Eigen::MatrixXd covariance,
                                      MvnSettings mvn = {});

  Family family() const { return family_; }
  std::size_t dim() const { return dim_; }
  double alpha() const { return alpha_; }
  double theta() const { return theta_; }
  const std::optional<AngularMeasure>& spectral() const { return spectral_; }
  const Eigen::MatrixXd& lambda() const { return lambda_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }
  const MvnSettings& mvn_settings() const { return mvn_; }

  // Exponent function V(x); x strictly positive, +inf allowed.
  double exponent(std::span<const double> x) const;
  double cdf(std::span<const double> x) const;

  // Angular measure, when the family has a finite one (independent,
  // comonotone, discrete spectral), on the l_alpha sphere unless the model
  // carries its own.
  std::optional<AngularMeasure> angular_measure() const;

  std::string id() const;

 private:
  MaxStableModel() = default;

  Family family_ = Family::kIndependent;
  std::size_t dim_ = 0;
  double alpha_ = 1.0;
  double theta_ = 1.0;
  std::optional<AngularMeasure> spectral_;
  Eigen::MatrixXd lambda_;
  Eigen::MatrixXd covariance_;
  MvnSettings mvn_;
};

// Variogram square roots lambda_ij = sqrt(S_ii + S_jj - 2 S_ij).
Eigen::MatrixXd variogram_lambda(const Eigen::MatrixXd& covariance);

// A covariance with the given variogram: U_j = W_j - W_1 style construction
// Sigma_jk = (lambda_1j^2 + lambda_1k^2 - lambda_jk^2) / 2, so U_1 = 0.
Eigen::MatrixXd variogram_to_covariance(const Eigen::MatrixXd& lambda);

// Correlation matrix R^(i) of the Husler-Reiss Psi-function for index i
// (rows/columns j != i in increasing order).
Eigen::MatrixXd hr_correlation(const Eigen::MatrixXd& lambda, std::size_t i);

// Stable tail dependence function l(z) = V(z^(-1/alpha)), 0^(-1/alpha) = inf.
double stdf(const MaxStableModel& model, std::span<const double> z);

// Extreme-value copula C(u) = F(F_1^{-1}(u_1), ..., F_d^{-1}(u_d)).
double ev_copula(const MaxStableModel& model, std::span<const double> u);

// Per-coordinate margins exp(-c_i x^(-alpha_i)).
struct MarginSpec {
  std::vector<double> scale;
  std::vector<double> index;

  static MarginSpec unit(std::size_t dim, double alpha);
  void validate(std::size_t dim) const;
};

// F~(x) = F(y) where y is the unit-margin coordinate of x, i.e. the margins
// of F~ are exp(-c_i x_i^(-alpha_i)).
class MarginTransformedModel {
 public:
  MarginTransformedModel(MaxStableModel base, MarginSpec margins);

  const MaxStableModel& base() const { return base_; }
  const MarginSpec& margins() const { return margins_; }

  std::vector<double> to_unit(std::span<const double> x) const;
  std::vector<double> from_unit(std::span<const double> y) const;
  double cdf(std::span<const double> x) const;
  double margin_cdf(std::size_t i, double x) const;

 private:
  MaxStableModel base_;
  MarginSpec margins_;
};

MarginTransformedModel transform_margins(const MaxStableModel& model,
                                         const MarginSpec& margins);
MaxStableModel to_unit_frechet(const MarginTransformedModel& model);

// Archimedean generators with closed-form inverse and derivative.
struct GeneratorSpec {
  enum class Kind { kExponential, kClayton };
  Kind kind = Kind::kExponential;
  double theta = 1.0;  // Clayton parameter, > 0

  static GeneratorSpec exponential() { return {Kind::kExponential, 1.0}; }
  static GeneratorSpec clayton(double theta);

  double value(double t) const;
  double inverse(double u) const;
  double derivative(double t) const;
  std::string name() const;
};

// C(u) = psi(l(psi^{-1}(u_1), ..., psi^{-1}(u_d))).
double archimax_copula(const GeneratorSpec& generator,
                       const MaxStableModel& model, std::span<const double> u);

}  // namespace maxstab

#endif  // MAXSTAB_MODELS_HPP_
