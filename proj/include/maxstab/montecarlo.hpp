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

#ifndef MAXSTAB_MONTECARLO_HPP_
#define MAXSTAB_MONTECARLO_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "maxstab/bounds.hpp"
#include "maxstab/distances.hpp"
#include "maxstab/models.hpp"
#include "maxstab/spectral.hpp"

namespace maxstab {

struct SamplerConfig {
  std::uint64_t seed = 12345;
  std::size_t n_samples = 10000;
  double truncation_eps = 1e-6;  // Brown-Resnick only
  std::size_t parallel_chunks = 8;

  void validate() const;
};

// Rows are samples. Chunk c of the rows is drawn from stream split(seed, c),
// so the matrix depends only on the seed and the configuration.
struct SampleSet {
  Eigen::MatrixXd x;
  double alpha = 1.0;
  std::string family;
  std::uint64_t seed = 0;
  // Upper bound on the probability that series truncation changed a sample
  // (0 for the exact discrete sampler).
  double truncation_bias = 0.0;
  std::size_t max_terms = 0;  // longest series used by any sample
};

// Exact de Haan series sampler for a finitely supported representer.
SampleSet sample_maxstable_discrete(const DeHaanRepresenter& z, const SamplerConfig& cfg);

// Brown-Resnick sampler with marks exp(U - diag(Sigma) / 2), U ~ N(0, Sigma).
SampleSet sample_brown_resnick(const Eigen::MatrixXd& sigma, const SamplerConfig& cfg);

// Samples any model with a finite angular measure or a Brown-Resnick /
// Husler-Reiss parametrization (the latter through variogram_to_covariance).
SampleSet sample_model(const MaxStableModel& model, const SamplerConfig& cfg);
bool has_sampler(const MaxStableModel& model);

// Dvoretzky-Kiefer-Wolfowitz half-width sqrt(ln(2/delta) / (2n)).
double dkw_epsilon(std::size_t n, double delta = 0.01);

// Asymptotic Kolmogorov tail probability P(K > lambda).
double kolmogorov_tail(double lambda);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// One-sample KS against a continuous CDF.
KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);
// Two-sample KS.
KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b);

struct MarginCheck {
  std::vector<KsResult> margins;
  double level = 0.01;
  bool pass = true;
};

// KS of every column against exp(-x^-alpha).
MarginCheck check_margins(const SampleSet& s, double level = 0.01);

// Product grid of marginal quantiles at the given probability levels.
std::vector<std::vector<double>> quantile_grid(std::size_t dim, double alpha,
                                               std::span<const double> levels);

struct CdfCheck {
  double discrepancy = 0.0;
  std::vector<double> worst_point;
  double dkw_threshold = 0.0;
  double allowance = 0.0;
  bool pass = true;
};

double empirical_cdf(const Eigen::MatrixXd& x, std::span<const double> point);

CdfCheck verify_cdf(const MaxStableModel& model, const SampleSet& s,
                    const std::vector<std::vector<double>>& grid, double delta = 0.01);

struct TwoSampleDistance {
  double value = 0.0;
  double band = 0.0;  // sum of the two one-sample DKW half-widths
  bool exact = false;  // exact sup over all ECDF steps (d <= 2)
};

// sup_x |F1_hat(x) - F2_hat(x)|. Exact for d <= 2; for larger d the sup is
// taken over a subsample of both point sets plus a quantile grid.
TwoSampleDistance empirical_kolmogorov(const SampleSet& a, const SampleSet& b,
                                       double delta = 0.01,
                                       std::size_t max_points = 4000);

// Componentwise max of k independent draws rescaled by k^(-1/alpha) against a
// fresh sample: two-sample KS on every margin and on the row minimum.
struct MaxStabilityCheck {
  std::vector<KsResult> tests;
  bool pass = true;
};
MaxStabilityCheck check_max_stability(const MaxStableModel& model, const SamplerConfig& cfg,
                                       int k, double level = 0.01);

struct VerifyReport {
  std::optional<KolmogorovResult> exact;
  std::optional<TwoSampleDistance> monte_carlo;
  std::vector<BoundReport> bounds;
  std::vector<std::string> failures;
  std::vector<SampleSet> samples;  // the two Monte Carlo samples, if drawn
  bool pass() const { return failures.empty(); }
};

// Exact d_K, every applicable bound checked against the certified lower
// bound of d_K, and optionally a Monte Carlo cross-check (skipped unless
// both models have a sampler).
VerifyReport verify_bounds(const MaxStableModel& m1, const MaxStableModel& m2,
                           const SamplerConfig& cfg, bool monte_carlo,
                           const SectionSearchOptions& options = {});

// Columnar text export: "# dim", "# alpha", "# family", "# seed" header lines,
// then one sample per row.
void write_samples(std::ostream& out, const SampleSet& s);

}  // namespace maxstab

#endif  // MAXSTAB_MONTECARLO_HPP_
