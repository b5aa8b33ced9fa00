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

#include "maxstab/mvn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "maxstab/error.hpp"
#include "maxstab/norm.hpp"
#include "maxstab/rng.hpp"

namespace maxstab {

double std_normal_cdf(double z) {
  if (std::isnan(z)) return z;
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double std_normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double std_normal_quantile(double p) {
  require(p >= 0.0 && p <= 1.0, "normal quantile needs p in [0, 1]");
  if (p == 0.0) return -kInf;
  if (p == 1.0) return kInf;
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

namespace {

// Upper orthant P(X > h, Y > k). Drezner-Wesolowsky with Genz's
// Gauss-Legendre refinements (6/12/20 points by |rho|).
double bvn_upper(double h, double k, double r) {
  if (h == kInf || k == kInf) return 0.0;
  if (h == -kInf) return k == -kInf ? 1.0 : std_normal_cdf(-k);
  if (k == -kInf) return std_normal_cdf(-h);
  if (r == 0.0) return std_normal_cdf(-h) * std_normal_cdf(-k);

  static constexpr std::array<double, 3> w6 = {0.1713244923791705,
                                               0.3607615730481384,
                                               0.4679139345726904};
  static constexpr std::array<double, 3> x6 = {0.9324695142031522,
                                               0.6612093864662647,
                                               0.2386191860831970};
  static constexpr std::array<double, 6> w12 = {
      0.04717533638651177, 0.1069393259953183, 0.1600783285433464,
      0.2031674267230659,  0.2334925365383547, 0.2491470458134029};
  static constexpr std::array<double, 6> x12 = {
      0.9815606342467191, 0.9041172563704750, 0.7699026741943050,
      0.5873179542866171, 0.3678314989981802, 0.1252334085114692};
  static constexpr std::array<double, 10> w20 = {
      0.01761400713915212, 0.04060142980038694, 0.06267204833410906,
      0.08327674157670475, 0.1019301198172404,  0.1181945319615184,
      0.1316886384491766,  0.1420961093183821,  0.1491729864726037,
      0.1527533871307259};
  static constexpr std::array<double, 10> x20 = {
      0.9931285991850949, 0.9639719272779138, 0.9122344282513259,
      0.8391169718222188, 0.7463319064601508, 0.6360536807265150,
      0.5108670019508271, 0.3737060887154196, 0.2277858511416451,
      0.07652652113349733};

  const double* w;
  const double* x;
  int ng;
  if (std::abs(r) < 0.3) {
    w = w6.data(); x = x6.data(); ng = 3;
  } else if (std::abs(r) < 0.75) {
    w = w12.data(); x = x12.data(); ng = 6;
  } else {
    w = w20.data(); x = x20.data(); ng = 10;
  }

  const double tp = 2.0 * std::numbers::pi;
  double hk = h * k;
  double bvn = 0.0;
  if (std::abs(r) < 0.925) {
    const double hs = (h * h + k * k) / 2.0;
    const double asr = std::asin(r) / 2.0;
    for (int i = 0; i < ng; ++i) {
      for (double sign : {-1.0, 1.0}) {
        const double sn = std::sin(asr * (1.0 + sign * x[i]));
        bvn += w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
      }
    }
    return std::clamp(bvn * asr / tp + std_normal_cdf(-h) * std_normal_cdf(-k),
                      0.0, 1.0);
  }
  if (r < 0.0) {
    k = -k;
    hk = -hk;
  }
  if (std::abs(r) < 1.0) {
    const double as = 1.0 - r * r;
    double a = std::sqrt(as);
    const double bs = (h - k) * (h - k);
    const double c = (4.0 - hk) / 8.0;
    const double d = (12.0 - hk) / 80.0;
    double asr = -(bs / as + hk) / 2.0;
    if (asr > -100.0) {
      bvn = a * std::exp(asr) *
            (1.0 - c * (bs - as) * (1.0 - d * bs) / 3.0 + c * d * as * as);
    }
    if (hk > -100.0) {
      const double b = std::sqrt(bs);
      const double sp = std::sqrt(tp) * std_normal_cdf(-b / a);
      bvn -= std::exp(-hk / 2.0) * sp * b * (1.0 - c * bs * (1.0 - d * bs) / 3.0);
    }
    a /= 2.0;
    double sum = 0.0;
    for (int i = 0; i < ng; ++i) {
      for (double sign : {-1.0, 1.0}) {
        const double xs = std::pow(a * (1.0 + sign * x[i]), 2);
        const double asr_i = -(bs / xs + hk) / 2.0;
        if (asr_i > -100.0) {
          const double sp = 1.0 + c * xs * (1.0 + 5.0 * d * xs);
          const double rs = std::sqrt(1.0 - xs);
          const double ep = std::exp(-(hk / 2.0) * xs / ((1.0 + rs) * (1.0 + rs))) / rs;
          sum += w[i] * std::exp(asr_i) * (sp - ep);
        }
      }
    }
    bvn = (a * sum - bvn) / tp;
  }
  if (r > 0.0) {
    bvn += std_normal_cdf(-std::max(h, k));
  } else if (h >= k) {
    bvn = -bvn;
  } else {
    const double l = h < 0.0 ? std_normal_cdf(k) - std_normal_cdf(h)
                             : std_normal_cdf(-h) - std_normal_cdf(-k);
    bvn = l - bvn;
  }
  return std::clamp(bvn, 0.0, 1.0);
}

}  // namespace

double bivariate_normal_cdf(double h, double k, double rho) {
  require(std::abs(rho) <= 1.0, "bivariate normal needs |rho| <= 1");
  if (h == -kInf || k == -kInf) return 0.0;
  if (h == kInf) return std_normal_cdf(k);
  if (k == kInf) return std_normal_cdf(h);
  if (rho == 1.0) return std_normal_cdf(std::min(h, k));
  if (rho == -1.0) return std::max(0.0, std_normal_cdf(h) - std_normal_cdf(-k));
  return bvn_upper(-h, -k, rho);
}

double default_mvn_tol(std::size_t dim) { return dim <= 5 ? 1e-7 : 1e-6; }

void check_correlation(const Eigen::MatrixXd& m, double slack) {
  require(m.rows() == m.cols(), "correlation matrix must be square");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    require(std::abs(m(i, i) - 1.0) <= 1e-12,
            "correlation matrix must have unit diagonal");
    for (Eigen::Index j = 0; j < i; ++j) {
      require(std::abs(m(i, j) - m(j, i)) <= 1e-12,
              "correlation matrix must be symmetric");
    }
  }
  if (m.rows() == 0) return;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -slack,
          "correlation matrix is not positive semidefinite");
}

namespace {

struct SovFactor {
  Eigen::MatrixXd chol;        // lower triangular, permuted
  std::vector<double> upper;   // permuted limits
};

// Cholesky with Genz-Bretz prioritization: at each step the variable with
// the smallest conditional probability goes first.
SovFactor reorder_cholesky(Eigen::MatrixXd r, std::vector<double> b) {
  const Eigen::Index n = r.rows();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> y(n, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index best = i;
    double best_prob = kInf;
    for (Eigen::Index j = i; j < n; ++j) {
      double t = 0.0;
      double s = r(j, j);
      for (Eigen::Index k = 0; k < i; ++k) {
        t += l(j, k) * y[k];
        s -= l(j, k) * l(j, k);
      }
      const double sd = std::sqrt(std::max(s, 0.0));
      const double prob = sd > 0.0 ? std_normal_cdf((b[j] - t) / sd)
                                   : (b[j] - t >= 0.0 ? 1.0 : 0.0);
      if (prob < best_prob) {
        best_prob = prob;
        best = j;
      }
    }
    if (best != i) {
      r.row(i).swap(r.row(best));
      r.col(i).swap(r.col(best));
      l.row(i).swap(l.row(best));
      std::swap(b[i], b[best]);
    }
    double s = r(i, i);
    for (Eigen::Index k = 0; k < i; ++k) s -= l(i, k) * l(i, k);
    const double lii = std::sqrt(std::max(s, 1e-300));
    l(i, i) = lii;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double v = r(j, i);
      for (Eigen::Index k = 0; k < i; ++k) v -= l(j, k) * l(i, k);
      l(j, i) = v / lii;
    }
    double t = 0.0;
    for (Eigen::Index k = 0; k < i; ++k) t += l(i, k) * y[k];
    const double z = (b[i] - t) / lii;
    const double pz = std_normal_cdf(z);
    y[i] = pz > 1e-300 ? -std_normal_pdf(z) / pz : z;
  }
  return {l, b};
}

double sov_integrand(const SovFactor& f, const double* w, std::vector<double>& y) {
  const Eigen::Index n = f.chol.rows();
  double e = std_normal_cdf(f.upper[0] / f.chol(0, 0));
  double prod = e;
  for (Eigen::Index i = 1; i < n; ++i) {
    const double p = std::clamp(w[i - 1] * e, 1e-300, 1.0 - 1e-16);
    y[i - 1] = -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
    double t = 0.0;
    for (Eigen::Index k = 0; k < i; ++k) t += f.chol(i, k) * y[k];
    e = std_normal_cdf((f.upper[i] - t) / f.chol(i, i));
    prod *= e;
    if (prod == 0.0) break;
  }
  return prod;
}

constexpr std::array<int, 24> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19,
                                         23, 29, 31, 37, 41, 43, 47, 53,
                                         59, 61, 67, 71, 73, 79, 83, 89};

}  // namespace

MvnResult mvn_cdf(const MvnProblem& problem) {
  const std::size_t n_all = problem.upper.size();
  require(n_all >= 1, "mvn_cdf needs dimension >= 1");
  require(problem.correlation.rows() == static_cast<Eigen::Index>(n_all),
          "mvn_cdf: correlation size does not match limits");
  check_correlation(problem.correlation);

  MvnResult out;
  std::vector<Eigen::Index> keep;
  for (std::size_t i = 0; i < n_all; ++i) {
    if (problem.upper[i] == -kInf) {
      out.value = 0.0;
      return out;
    }
    require(!std::isnan(problem.upper[i]), "mvn_cdf: NaN limit");
    if (problem.upper[i] != kInf) keep.push_back(static_cast<Eigen::Index>(i));
  }
  const auto n = static_cast<Eigen::Index>(keep.size());
  if (n == 0) {
    out.value = 1.0;
    return out;
  }
  std::vector<double> b(n);
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    b[i] = problem.upper[keep[i]];
    for (Eigen::Index j = 0; j < n; ++j) r(i, j) = problem.correlation(keep[i], keep[j]);
  }
  if (n == 1) {
    out.value = std_normal_cdf(b[0]);
    return out;
  }
  if (n == 2) {
    out.value = bivariate_normal_cdf(b[0], b[1], std::clamp(r(0, 1), -1.0, 1.0));
    out.error = 1e-15;
    return out;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 1e-12) {
    r.diagonal().array() += 1e-12;
    const Eigen::VectorXd s = r.diagonal().array().rsqrt();
    r = s.asDiagonal() * r * s.asDiagonal();
  }

  const double tol = problem.tol > 0.0 ? problem.tol : default_mvn_tol(keep.size());
  const SovFactor factor = reorder_cholesky(r, b);
  const std::size_t m = static_cast<std::size_t>(n) - 1;
  require(m <= kPrimes.size(), "mvn_cdf supports at most 25 dimensions");

  constexpr int kShifts = 12;
  std::vector<double> zeta(m);
  for (std::size_t k = 0; k < m; ++k) zeta[k] = std::sqrt(static_cast<double>(kPrimes[k]));
  CounterRng rng(problem.seed, 0x6d766eULL);
  std::vector<std::vector<double>> shifts(kShifts, std::vector<double>(m));
  for (auto& s : shifts) {
    for (double& v : s) v = rng.uniform();
  }

  std::vector<double> sums(kShifts, 0.0);
  std::vector<double> w(m), y(static_cast<std::size_t>(n));
  std::size_t points = 0;
  std::size_t target = 1024;
  while (true) {
    for (; points < target; ++points) {
      const double idx = static_cast<double>(points + 1);
      for (int s = 0; s < kShifts; ++s) {
        for (std::size_t k = 0; k < m; ++k) {
          double v = idx * zeta[k] + shifts[s][k];
          v -= std::floor(v);
          w[k] = std::abs(2.0 * v - 1.0);  // periodizing tent
        }
        sums[s] += sov_integrand(factor, w.data(), y);
      }
    }
    double mean = 0.0;
    for (double v : sums) mean += v / static_cast<double>(points);
    mean /= kShifts;
    double var = 0.0;
    for (double v : sums) {
      const double dv = v / static_cast<double>(points) - mean;
      var += dv * dv;
    }
    var /= static_cast<double>(kShifts) * (kShifts - 1);
    out.value = std::clamp(mean, 0.0, 1.0);
    out.error = 3.0 * std::sqrt(var);
    out.evaluations = points * kShifts;
    if (out.error <= tol) {
      out.converged = true;
      break;
    }
    if (2 * target * kShifts > problem.max_evaluations) {
      out.converged = false;
      break;
    }
    target *= 2;
  }
  return out;
}

}  // namespace maxstab
