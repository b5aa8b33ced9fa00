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

#include "maxstab/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "maxstab/error.hpp"
#include "maxstab/mvn.hpp"
#include "maxstab/psi.hpp"

namespace maxstab {
namespace {

void check_point(std::span<const double> x, std::size_t dim) {
  require(x.size() == dim, "evaluation point has the wrong dimension");
  for (double v : x) {
    require(v > 0.0, "evaluation point must be strictly positive");
  }
}

void check_alpha(double alpha) {
  require(alpha > 0.0 && std::isfinite(alpha), "alpha must be positive");
}

// Every R^(i) must be a valid correlation matrix; this is how Lambda
// matrices not realizable by a variogram are rejected.
void validate_lambda(const Eigen::MatrixXd& lambda) {
  require(lambda.rows() == lambda.cols() && lambda.rows() >= 1,
          "lambda matrix must be square and nonempty");
  const auto d = lambda.rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    require(lambda(i, i) == 0.0, "lambda matrix must have zero diagonal");
    for (Eigen::Index j = 0; j < d; ++j) {
      if (i == j) continue;
      require(std::isfinite(lambda(i, j)), "lambda entries must be finite");
      require(lambda(i, j) == lambda(j, i), "lambda matrix must be symmetric");
      require(lambda(i, j) > 0.0,
              "lambda_ij must be positive off the diagonal (degenerate pair)");
    }
  }
  for (Eigen::Index i = 0; i < d && d > 2; ++i) {
    const Eigen::MatrixXd r = hr_correlation(lambda, static_cast<std::size_t>(i));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r, Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -1e-10,
            "lambda matrix is not realizable: R^(i) is indefinite");
  }
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::kLogistic: return "logistic";
    case Family::kIndependent: return "independent";
    case Family::kComonotone: return "comonotone";
    case Family::kDiscreteSpectral: return "discrete_spectral";
    case Family::kHuslerReiss: return "husler_reiss";
    case Family::kBrownResnick: return "brown_resnick";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::kLogistic, Family::kIndependent, Family::kComonotone,
                   Family::kDiscreteSpectral, Family::kHuslerReiss,
                   Family::kBrownResnick}) {
    if (family_name(f) == name) return f;
  }
  throw InvalidArgument("unknown model family '" + name + "'");
}

MaxStableModel MaxStableModel::logistic(std::size_t dim, double theta,
                                        double alpha) {
  require(dim >= 1, "dimension must be at least 1");
  require(theta > 0.0 && theta <= 1.0, "logistic theta must lie in (0, 1]");
  check_alpha(alpha);
  MaxStableModel m;
  m.family_ = Family::kLogistic;
  m.dim_ = dim;
  m.alpha_ = alpha;
  m.theta_ = theta;
  return m;
}

MaxStableModel MaxStableModel::independent(std::size_t dim, double alpha) {
  require(dim >= 1, "dimension must be at least 1");
  check_alpha(alpha);
  MaxStableModel m;
  m.family_ = Family::kIndependent;
  m.dim_ = dim;
  m.alpha_ = alpha;
  return m;
}

MaxStableModel MaxStableModel::comonotone(std::size_t dim, double alpha) {
  require(dim >= 1, "dimension must be at least 1");
  check_alpha(alpha);
  MaxStableModel m;
  m.family_ = Family::kComonotone;
  m.dim_ = dim;
  m.alpha_ = alpha;
  return m;
}

MaxStableModel MaxStableModel::discrete_spectral(AngularMeasure h) {
  require(h.normalized(),
          "discrete spectral model needs unit marginal moments");
  MaxStableModel m;
  m.family_ = Family::kDiscreteSpectral;
  m.dim_ = h.dim();
  m.alpha_ = h.alpha();
  m.spectral_ = std::move(h);
  return m;
}

MaxStableModel MaxStableModel::husler_reiss(Eigen::MatrixXd lambda,
                                            MvnSettings mvn) {
  validate_lambda(lambda);
  MaxStableModel m;
  m.family_ = Family::kHuslerReiss;
  m.dim_ = static_cast<std::size_t>(lambda.rows());
  m.alpha_ = 1.0;
  m.lambda_ = std::move(lambda);
  m.mvn_ = mvn;
  return m;
}

MaxStableModel MaxStableModel::brown_resnick(Eigen::MatrixXd covariance,
                                             MvnSettings mvn) {
  MaxStableModel m = husler_reiss(variogram_lambda(covariance), mvn);
  m.family_ = Family::kBrownResnick;
  m.covariance_ = std::move(covariance);
  return m;
}

Eigen::MatrixXd variogram_lambda(const Eigen::MatrixXd& covariance) {
  require(covariance.rows() == covariance.cols() && covariance.rows() >= 1,
          "covariance must be square and nonempty");
  require(covariance.isApprox(covariance.transpose(), 1e-12),
          "covariance must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(covariance,
                                                    Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -1e-10 * std::max(1.0, covariance.norm()),
          "covariance is not positive semidefinite");
  const auto d = covariance.rows();
  Eigen::MatrixXd lambda = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (i == j) continue;
      const double g = covariance(i, i) + covariance(j, j) - 2.0 * covariance(i, j);
      lambda(i, j) = std::sqrt(std::max(0.0, g));
    }
  }
  // Enforce exact symmetry.
  lambda = 0.5 * (lambda + lambda.transpose()).eval();
  return lambda;
}

Eigen::MatrixXd variogram_to_covariance(const Eigen::MatrixXd& lambda) {
  require(lambda.rows() == lambda.cols() && lambda.rows() >= 1,
          "lambda must be square and nonempty");
  const auto d = lambda.rows();
  Eigen::MatrixXd sigma(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = 0; k < d; ++k) {
      const double a = lambda(0, j), b = lambda(0, k), c = lambda(j, k);
      sigma(j, k) = 0.5 * (a * a + b * b - c * c);
    }
  }
  return sigma;
}

Eigen::MatrixXd hr_correlation(const Eigen::MatrixXd& lambda, std::size_t i) {
  const auto d = lambda.rows();
  const auto ii = static_cast<Eigen::Index>(i);
  Eigen::MatrixXd r(d - 1, d - 1);
  Eigen::Index a = 0;
  for (Eigen::Index j = 0; j < d; ++j) {
    if (j == ii) continue;
    Eigen::Index b = 0;
    for (Eigen::Index k = 0; k < d; ++k) {
      if (k == ii) continue;
      if (j == k) {
        r(a, b) = 1.0;
      } else {
        const double lij = lambda(ii, j);
        const double lik = lambda(ii, k);
        const double ljk = lambda(j, k);
        r(a, b) = (lij * lij + lik * lik - ljk * ljk) / (2.0 * lij * lik);
      }
      ++b;
    }
    ++a;
  }
  return r;
}

double MaxStableModel::exponent(std::span<const double> x) const {
  check_point(x, dim_);
  switch (family_) {
    case Family::kIndependent: {
      double v = 0.0;
      for (double xi : x) {
        if (!std::isinf(xi)) v += std::pow(xi, -alpha_);
      }
      return v;
    }
    case Family::kComonotone: {
      double v = 0.0;
      for (double xi : x) {
        if (!std::isinf(xi)) v = std::max(v, std::pow(xi, -alpha_));
      }
      return v;
    }
    case Family::kLogistic: {
      // (sum_j x_j^(-alpha/theta))^theta through a log-sum-exp.
      const double k = alpha_ / theta_;
      double top = -kInf;
      for (double xi : x) {
        if (!std::isinf(xi)) top = std::max(top, -k * std::log(xi));
      }
      if (top == -kInf) return 0.0;
      double s = 0.0;
      for (double xi : x) {
        if (!std::isinf(xi)) s += std::exp(-k * std::log(xi) - top);
      }
      return std::exp(theta_ * (top + std::log(s)));
    }
    case Family::kDiscreteSpectral: {
      double v = 0.0;
      for (const auto& a : spectral_->atoms()) {
        double m = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
          if (!std::isinf(x[i])) m = std::max(m, a.point[i] / x[i]);
        }
        if (m > 0.0) v += a.weight * std::pow(m, alpha_);
      }
      return v;
    }
    case Family::kHuslerReiss:
    case Family::kBrownResnick: {
      double v = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) {
        if (std::isinf(x[i])) continue;
        v += psi_hr(lambda_, x, i, mvn_) / x[i];
      }
      return v;
    }
  }
  return 0.0;
}

double MaxStableModel::cdf(std::span<const double> x) const {
  return std::exp(-exponent(x));
}

std::optional<AngularMeasure> MaxStableModel::angular_measure() const {
  const NormSpec l_alpha = NormSpec::lp(alpha_);
  switch (family_) {
    case Family::kIndependent:
      return AngularMeasure::independent(dim_, alpha_, l_alpha);
    case Family::kComonotone:
      return AngularMeasure::comonotone(dim_, alpha_, l_alpha);
    case Family::kDiscreteSpectral:
      return spectral_;
    case Family::kLogistic:
      if (theta_ == 1.0) return AngularMeasure::independent(dim_, alpha_, l_alpha);
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

std::string MaxStableModel::id() const {
  std::ostringstream os;
  os << family_name(family_) << "(d=" << dim_ << ",alpha=" << alpha_;
  if (family_ == Family::kLogistic) os << ",theta=" << theta_;
  if (family_ == Family::kDiscreteSpectral) {
    os << ",atoms=" << spectral_->atoms().size() << ",norm="
       << spectral_->norm().describe();
  }
  os << ")";
  return os.str();
}

double stdf(const MaxStableModel& model, std::span<const double> z) {
  require(z.size() == model.dim(), "stdf: wrong dimension");
  bool nonzero = false;
  std::vector<double> x(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    require(z[i] >= 0.0, "stdf: z must be nonnegative");
    nonzero = nonzero || z[i] > 0.0;
    x[i] = z[i] == 0.0 ? kInf : std::pow(z[i], -1.0 / model.alpha());
  }
  require(nonzero, "stdf: z must not be the zero vector");
  return model.exponent(x);
}

double ev_copula(const MaxStableModel& model, std::span<const double> u) {
  require(u.size() == model.dim(), "ev_copula: wrong dimension");
  std::vector<double> x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    require(u[i] > 0.0 && u[i] <= 1.0, "ev_copula: u must lie in (0, 1]");
    // Unit alpha-Frechet quantile (-1/ln u)^(1/alpha).
    x[i] = u[i] == 1.0 ? kInf : std::pow(-1.0 / std::log(u[i]), 1.0 / model.alpha());
  }
  return std::exp(-model.exponent(x));
}

MarginSpec MarginSpec::unit(std::size_t dim, double alpha) {
  return {std::vector<double>(dim, 1.0), std::vector<double>(dim, alpha)};
}

void MarginSpec::validate(std::size_t dim) const {
  require(scale.size() == dim && index.size() == dim,
          "margin specification has the wrong dimension");
  for (std::size_t i = 0; i < dim; ++i) {
    require(scale[i] > 0.0 && std::isfinite(scale[i]), "margin scales must be positive");
    require(index[i] > 0.0 && std::isfinite(index[i]), "margin indices must be positive");
  }
}

MarginTransformedModel::MarginTransformedModel(MaxStableModel base,
                                               MarginSpec margins)
    : base_(std::move(base)), margins_(std::move(margins)) {
  margins_.validate(base_.dim());
}

std::vector<double> MarginTransformedModel::to_unit(
    std::span<const double> x) const {
  require(x.size() == base_.dim(), "wrong dimension");
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0.0, "evaluation point must be strictly positive");
    // y^(-alpha) = c x^(-alpha_i)
    y[i] = std::isinf(x[i])
               ? kInf
               : std::pow(std::pow(x[i], margins_.index[i]) / margins_.scale[i],
                          1.0 / base_.alpha());
  }
  return y;
}

std::vector<double> MarginTransformedModel::from_unit(
    std::span<const double> y) const {
  require(y.size() == base_.dim(), "wrong dimension");
  std::vector<double> x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    x[i] = std::isinf(y[i])
               ? kInf
               : std::pow(margins_.scale[i] * std::pow(y[i], base_.alpha()),
                          1.0 / margins_.index[i]);
  }
  return x;
}

double MarginTransformedModel::cdf(std::span<const double> x) const {
  return base_.cdf(to_unit(x));
}

double MarginTransformedModel::margin_cdf(std::size_t i, double x) const {
  std::vector<double> full(base_.dim(), kInf);
  full[i] = x;
  return cdf(full);
}

MarginTransformedModel transform_margins(const MaxStableModel& model,
                                         const MarginSpec& margins) {
  return MarginTransformedModel(model, margins);
}

MaxStableModel to_unit_frechet(const MarginTransformedModel& model) {
  return model.base();
}

GeneratorSpec GeneratorSpec::clayton(double theta) {
  require(theta > 0.0 && std::isfinite(theta), "Clayton theta must be positive");
  return {Kind::kClayton, theta};
}

double GeneratorSpec::value(double t) const {
  if (std::isinf(t)) return 0.0;
  switch (kind) {
    case Kind::kExponential: return std::exp(-t);
    case Kind::kClayton: return std::pow(1.0 + t, -1.0 / theta);
  }
  return 0.0;
}

double GeneratorSpec::inverse(double u) const {
  require(u > 0.0 && u <= 1.0, "generator inverse needs u in (0, 1]");
  switch (kind) {
    case Kind::kExponential: return -std::log(u);
    case Kind::kClayton: return std::pow(u, -theta) - 1.0;
  }
  return 0.0;
}

double GeneratorSpec::derivative(double t) const {
  switch (kind) {
    case Kind::kExponential: return -std::exp(-t);
    case Kind::kClayton:
      return -(1.0 / theta) * std::pow(1.0 + t, -1.0 / theta - 1.0);
  }
  return 0.0;
}

std::string GeneratorSpec::name() const {
  if (kind == Kind::kExponential) return "exponential";
  std::ostringstream os;
  os << "clayton(" << theta << ")";
  return os.str();
}

double archimax_copula(const GeneratorSpec& generator,
                       const MaxStableModel& model, std::span<const double> u) {
  require(u.size() == model.dim(), "archimax_copula: wrong dimension");
  std::vector<double> z(u.size());
  bool all_one = true;
  for (std::size_t i = 0; i < u.size(); ++i) {
    require(u[i] > 0.0 && u[i] <= 1.0, "archimax_copula: u must lie in (0, 1]");
    z[i] = generator.inverse(u[i]);
    all_one = all_one && z[i] == 0.0;
  }
  if (all_one) return 1.0;
  return generator.value(stdf(model, z));
}

}  // namespace maxstab
