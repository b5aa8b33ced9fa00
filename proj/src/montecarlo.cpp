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

#include "maxstab/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <ostream>
#include <thread>

#include "maxstab/error.hpp"
#include "maxstab/mvn.hpp"
#include "maxstab/rng.hpp"

namespace maxstab {
namespace {

constexpr double kMaxTerms = 1e6;

// Runs fill(rng, chunk, first_row, end_row) for every chunk, one thread per
// chunk.
template <typename Fill>
void run_chunks(const SamplerConfig& cfg, Fill fill) {
  const std::size_t chunks = std::max<std::size_t>(1, cfg.parallel_chunks);
  const std::size_t per = (cfg.n_samples + chunks - 1) / chunks;
  std::vector<std::jthread> workers;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = c * per;
    const std::size_t end = std::min(cfg.n_samples, begin + per);
    if (begin >= end) break;
    workers.emplace_back([&fill, &cfg, c, begin, end] {
      CounterRng rng = CounterRng(cfg.seed, 0).split(c);
      fill(rng, c, begin, end);
    });
  }
}

// Max-plus segment tree over prefix sums with range add.
class RangeAddMinMax {
 public:
  explicit RangeAddMinMax(std::size_t n) : n_(n), hi_(4 * n, 0.0), lo_(4 * n, 0.0), lazy_(4 * n, 0.0) {}

  void add(std::size_t from, double v) { add(1, 0, n_ - 1, from, n_ - 1, v); }
  double max() const { return hi_[1]; }
  double min() const { return lo_[1]; }

 private:
  void add(std::size_t node, std::size_t l, std::size_t r, std::size_t a, std::size_t b,
           double v) {
    if (b < l || r < a) return;
    if (a <= l && r <= b) {
      hi_[node] += v;
      lo_[node] += v;
      lazy_[node] += v;
      return;
    }
    const std::size_t mid = (l + r) / 2;
    add(2 * node, l, mid, a, b, v);
    add(2 * node + 1, mid + 1, r, a, b, v);
    hi_[node] = std::max(hi_[2 * node], hi_[2 * node + 1]) + lazy_[node];
    lo_[node] = std::min(lo_[2 * node], lo_[2 * node + 1]) + lazy_[node];
  }

  std::size_t n_;
  std::vector<double> hi_, lo_, lazy_;
};

double frechet_cdf(double x, double alpha) {
  return x <= 0.0 ? 0.0 : std::exp(-std::pow(x, -alpha));
}

}  // namespace

void SamplerConfig::validate() const {
  require(n_samples >= 1, "n_samples must be at least 1");
  require(truncation_eps > 0.0 && truncation_eps < 1.0, "truncation_eps must lie in (0, 1)");
}

SampleSet sample_maxstable_discrete(const DeHaanRepresenter& z, const SamplerConfig& cfg) {
  cfg.validate();
  const std::size_t d = z.dim();
  const double alpha = z.alpha();
  const double bound = z.sup_bound();
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& a : z.atoms()) cumulative.push_back(acc += a.prob);
  cumulative.back() = 1.0;

  SampleSet s;
  s.x.resize(static_cast<Eigen::Index>(cfg.n_samples), static_cast<Eigen::Index>(d));
  s.alpha = alpha;
  s.family = "discrete_spectral";
  s.seed = cfg.seed;
  std::vector<std::size_t> longest(std::max<std::size_t>(1, cfg.parallel_chunks), 0);
  run_chunks(cfg, [&](CounterRng& rng, std::size_t chunk, std::size_t begin, std::size_t end) {
    std::vector<double> m(d);
    std::size_t chunk_longest = 0;
    for (std::size_t row = begin; row < end; ++row) {
      std::fill(m.begin(), m.end(), 0.0);
      double gamma = 0.0;
      std::size_t terms = 0;
      while (true) {
        gamma += rng.exponential();
        ++terms;
        const double scale = std::pow(gamma, -1.0 / alpha);
        const auto k = static_cast<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), rng.uniform()) -
            cumulative.begin());
        const auto& atom = z.atoms()[std::min(k, cumulative.size() - 1)].vector;
        for (std::size_t i = 0; i < d; ++i) m[i] = std::max(m[i], atom[i] * scale);
        // Later terms are below bound * scale, so stop once that cannot
        // change any coordinate.
        if (bound * scale < *std::min_element(m.begin(), m.end())) break;
      }
      chunk_longest = std::max(chunk_longest, terms);
      for (std::size_t i = 0; i < d; ++i) {
        s.x(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(i)) = m[i];
      }
    }
    longest[chunk] = chunk_longest;
  });
  s.max_terms = *std::max_element(longest.begin(), longest.end());
  return s;
}

SampleSet sample_brown_resnick(const Eigen::MatrixXd& sigma, const SamplerConfig& cfg) {
  cfg.validate();
  require(sigma.rows() == sigma.cols() && sigma.rows() >= 1,
          "covariance must be square and nonempty");
  const auto d = sigma.rows();
  const Eigen::MatrixXd root = psd_sqrt(sigma, 1e-10);
  double max_sd = 0.0;
  double min_var = kInf;
  for (Eigen::Index j = 0; j < d; ++j) {
    max_sd = std::max(max_sd, std::sqrt(sigma(j, j)));
    min_var = std::min(min_var, sigma(j, j));
  }
  // Union bound over d lognormal tails and at most kMaxTerms series terms.
  const double q_eps =
      std::exp(max_sd * std_normal_quantile(1.0 - cfg.truncation_eps / (static_cast<double>(d) * kMaxTerms)) -
               min_var / 2.0);

  SampleSet s;
  s.x.resize(static_cast<Eigen::Index>(cfg.n_samples), d);
  s.alpha = 1.0;
  s.family = "brown_resnick";
  s.seed = cfg.seed;
  s.truncation_bias = max_sd > 0.0 ? cfg.truncation_eps : 0.0;
  std::vector<std::size_t> longest(std::max<std::size_t>(1, cfg.parallel_chunks), 0);
  std::atomic<bool> capped = false;
  run_chunks(cfg, [&](CounterRng& rng, std::size_t chunk, std::size_t begin, std::size_t end) {
    Eigen::VectorXd m(d), normal(d), mark(d);
    std::size_t chunk_longest = 0;
    for (std::size_t row = begin; row < end; ++row) {
      m.setZero();
      double gamma = 0.0;
      std::size_t terms = 0;
      while (true) {
        gamma += rng.exponential();
        ++terms;
        for (Eigen::Index j = 0; j < d; ++j) normal(j) = rng.normal();
        mark = root * normal;
        for (Eigen::Index j = 0; j < d; ++j) {
          m(j) = std::max(m(j), std::exp(mark(j) - sigma(j, j) / 2.0) / gamma);
        }
        if (q_eps / gamma < m.minCoeff()) break;
        if (static_cast<double>(terms) >= kMaxTerms) {
          capped = true;
          break;
        }
      }
      chunk_longest = std::max(chunk_longest, terms);
      s.x.row(static_cast<Eigen::Index>(row)) = m.transpose();
    }
    longest[chunk] = chunk_longest;
  });
  s.max_terms = *std::max_element(longest.begin(), longest.end());
  if (capped) s.truncation_bias = 1.0;  // a series hit the term cap
  return s;
}

bool has_sampler(const MaxStableModel& model) {
  return model.family() == Family::kBrownResnick || model.family() == Family::kHuslerReiss ||
         model.angular_measure().has_value();
}

SampleSet sample_model(const MaxStableModel& model, const SamplerConfig& cfg) {
  switch (model.family()) {
    case Family::kBrownResnick: {
      auto s = sample_brown_resnick(model.covariance(), cfg);
      s.family = family_name(model.family());
      return s;
    }
    case Family::kHuslerReiss: {
      auto s = sample_brown_resnick(variogram_to_covariance(model.lambda()), cfg);
      s.family = family_name(model.family());
      return s;
    }
    default: {
      const auto h = model.angular_measure();
      require(h.has_value(), "no sampler for " + model.id());
      auto s = sample_maxstable_discrete(canonical_representer(*h), cfg);
      s.family = family_name(model.family());
      return s;
    }
  }
}

double dkw_epsilon(std::size_t n, double delta) {
  require(n >= 1 && delta > 0.0 && delta < 1.0, "dkw_epsilon: bad arguments");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Small-lambda form: 1 - sqrt(2 pi)/lambda sum exp(-(2k-1)^2 pi^2 / (8 lambda^2)).
    const double c = -std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int k = 1; k < 50; ++k) {
      const double term = std::exp((2.0 * k - 1.0) * (2.0 * k - 1.0) * c);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double ks_p_value(double n_eff, double statistic) {
  const double root = std::sqrt(n_eff);
  return kolmogorov_tail((root + 0.12 + 0.11 / root) * statistic);
}

}  // namespace

KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
  require(!sample.empty(), "ks_test: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return {d, ks_p_value(n, d)};
}

KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b) {
  require(!a.empty() && !b.empty(), "ks_test_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return {d, ks_p_value(na * nb / (na + nb), d)};
}

MarginCheck check_margins(const SampleSet& s, double level) {
  MarginCheck out;
  out.level = level;
  for (Eigen::Index j = 0; j < s.x.cols(); ++j) {
    std::vector<double> col(s.x.col(j).data(), s.x.col(j).data() + s.x.rows());
    out.margins.push_back(ks_test(std::move(col), [&](double v) { return frechet_cdf(v, s.alpha); }));
    out.pass = out.pass && out.margins.back().p_value >= level;
  }
  return out;
}

std::vector<std::vector<double>> quantile_grid(std::size_t dim, double alpha,
                                               std::span<const double> levels) {
  require(dim >= 1 && !levels.empty(), "quantile_grid: empty grid");
  std::vector<double> axis;
  for (double p : levels) {
    require(p > 0.0 && p < 1.0, "quantile levels must lie in (0, 1)");
    axis.push_back(std::pow(-std::log(p), -1.0 / alpha));
  }
  std::vector<std::vector<double>> grid;
  std::vector<std::size_t> idx(dim, 0);
  while (true) {
    std::vector<double> point(dim);
    for (std::size_t i = 0; i < dim; ++i) point[i] = axis[idx[i]];
    grid.push_back(std::move(point));
    std::size_t i = 0;
    while (i < dim && ++idx[i] == axis.size()) idx[i++] = 0;
    if (i == dim) break;
  }
  return grid;
}

double empirical_cdf(const Eigen::MatrixXd& x, std::span<const double> point) {
  require(static_cast<Eigen::Index>(point.size()) == x.cols(), "empirical_cdf: wrong dimension");
  std::size_t count = 0;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    bool below = true;
    for (Eigen::Index c = 0; below && c < x.cols(); ++c) below = x(r, c) <= point[c];
    count += below;
  }
  return static_cast<double>(count) / static_cast<double>(x.rows());
}

CdfCheck verify_cdf(const MaxStableModel& model, const SampleSet& s,
                    const std::vector<std::vector<double>>& grid, double delta) {
  CdfCheck out;
  for (const auto& point : grid) {
    const double diff = std::abs(empirical_cdf(s.x, point) - model.cdf(point));
    if (diff > out.discrepancy || out.worst_point.empty()) {
      out.discrepancy = diff;
      out.worst_point = point;
    }
  }
  out.dkw_threshold = dkw_epsilon(static_cast<std::size_t>(s.x.rows()), delta);
  out.allowance = s.truncation_bias;
  out.pass = out.discrepancy <= out.dkw_threshold + out.allowance;
  return out;
}

TwoSampleDistance empirical_kolmogorov(const SampleSet& a, const SampleSet& b,
                                       double delta, std::size_t max_points) {
  require(a.x.cols() == b.x.cols(), "empirical_kolmogorov: dimension mismatch");
  const auto d = a.x.cols();
  TwoSampleDistance out;
  out.band = dkw_epsilon(static_cast<std::size_t>(a.x.rows()), delta) +
             dkw_epsilon(static_cast<std::size_t>(b.x.rows()), delta);
  const double wa = 1.0 / static_cast<double>(a.x.rows());
  const double wb = -1.0 / static_cast<double>(b.x.rows());
  struct Point {
    double x, y, w;
  };
  if (d <= 2) {
    std::vector<Point> pts;
    for (Eigen::Index r = 0; r < a.x.rows(); ++r) pts.push_back({a.x(r, 0), d == 2 ? a.x(r, 1) : 0.0, wa});
    for (Eigen::Index r = 0; r < b.x.rows(); ++r) pts.push_back({b.x(r, 0), d == 2 ? b.x(r, 1) : 0.0, wb});
    std::vector<double> ys;
    for (const auto& p : pts) ys.push_back(p.y);
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    std::sort(pts.begin(), pts.end(), [](const Point& p, const Point& q) { return p.x < q.x; });
    RangeAddMinMax tree(ys.size());
    for (std::size_t k = 0; k < pts.size();) {
      const double x = pts[k].x;
      for (; k < pts.size() && pts[k].x == x; ++k) {
        const auto rank = static_cast<std::size_t>(
            std::lower_bound(ys.begin(), ys.end(), pts[k].y) - ys.begin());
        tree.add(rank, pts[k].w);
      }
      out.value = std::max({out.value, tree.max(), -tree.min()});
    }
    out.exact = true;
    return out;
  }
  std::vector<std::vector<double>> eval;
  auto take = [&](const Eigen::MatrixXd& x) {
    const std::size_t n = static_cast<std::size_t>(x.rows());
    const std::size_t stride = std::max<std::size_t>(1, n / (max_points / 2));
    for (std::size_t r = 0; r < n; r += stride) {
      eval.emplace_back(static_cast<std::size_t>(d));
      for (Eigen::Index c = 0; c < d; ++c) eval.back()[c] = x(static_cast<Eigen::Index>(r), c);
    }
  };
  take(a.x);
  take(b.x);
  const std::vector<double> levels{0.05, 0.2, 0.4, 0.6, 0.8, 0.95};
  for (auto& p : quantile_grid(static_cast<std::size_t>(d), a.alpha, levels)) eval.push_back(std::move(p));
  for (const auto& p : eval) {
    out.value = std::max(out.value, std::abs(empirical_cdf(a.x, p) - empirical_cdf(b.x, p)));
  }
  return out;
}

MaxStabilityCheck check_max_stability(const MaxStableModel& model, const SamplerConfig& cfg,
                                       int k, double level) {
  require(k >= 1, "max-stability check needs k >= 1");
  SamplerConfig big = cfg;
  big.n_samples = cfg.n_samples * static_cast<std::size_t>(k);
  const auto pooled = sample_model(model, big);
  SamplerConfig fresh = cfg;
  fresh.seed = CounterRng(cfg.seed, 0).split(0x6d61787374ULL)();
  const auto single = sample_model(model, fresh);
  const auto d = pooled.x.cols();
  const double scale = std::pow(static_cast<double>(k), -1.0 / pooled.alpha);
  Eigen::MatrixXd maxima(static_cast<Eigen::Index>(cfg.n_samples), d);
  for (Eigen::Index r = 0; r < maxima.rows(); ++r) {
    maxima.row(r) = pooled.x.middleRows(r * k, k).colwise().maxCoeff() * scale;
  }
  MaxStabilityCheck out;
  auto column = [](const Eigen::MatrixXd& x, Eigen::Index c) {
    return std::vector<double>(x.col(c).data(), x.col(c).data() + x.rows());
  };
  for (Eigen::Index c = 0; c < d; ++c) {
    out.tests.push_back(ks_test_two_sample(column(maxima, c), column(single.x, c)));
  }
  const Eigen::VectorXd min_a = maxima.rowwise().minCoeff();
  const Eigen::VectorXd min_b = single.x.rowwise().minCoeff();
  out.tests.push_back(ks_test_two_sample(
      std::vector<double>(min_a.data(), min_a.data() + min_a.size()),
      std::vector<double>(min_b.data(), min_b.data() + min_b.size())));
  for (const auto& t : out.tests) out.pass = out.pass && t.p_value >= level;
  return out;
}

VerifyReport verify_bounds(const MaxStableModel& m1, const MaxStableModel& m2,
                           const SamplerConfig& cfg, bool monte_carlo,
                           const SectionSearchOptions& options) {
  VerifyReport out;
  out.exact = kolmogorov_exact(m1, m2, options);
  out.bounds = applicable_bounds(m1, m2, {}, options);
  for (auto& b : out.bounds) {
    b.dominate(out.exact->certified_lower, "certified lower d_K");
    if (!b.holds()) {
      out.failures.push_back("bound " + b.name + " below certified d_K");
    }
  }
  if (monte_carlo && has_sampler(m1) && has_sampler(m2)) {
    SamplerConfig c2 = cfg;
    c2.seed = CounterRng(cfg.seed, 0).split(0x70616972ULL)();
    const auto s1 = sample_model(m1, cfg);
    const auto s2 = sample_model(m2, c2);
    out.monte_carlo = empirical_kolmogorov(s1, s2);
    const double allowance = s1.truncation_bias + s2.truncation_bias;
    const double gap = out.monte_carlo->value - out.exact->value;
    // Outside the band only on the high side for inexact evaluation sets,
    // since those underestimate the empirical sup.
    const bool ok = out.monte_carlo->exact
                        ? std::abs(gap) <= out.monte_carlo->band + allowance
                        : gap <= out.monte_carlo->band + allowance;
    if (!ok) out.failures.push_back("Monte Carlo d_K outside its DKW band");
    out.samples = {s1, s2};
  }
  return out;
}

void write_samples(std::ostream& out, const SampleSet& s) {
  const auto old = out.precision(17);
  out << "# dim " << s.x.cols() << "\n# alpha " << s.alpha << "\n# family " << s.family
      << "\n# seed " << s.seed << '\n';
  for (Eigen::Index r = 0; r < s.x.rows(); ++r) {
    for (Eigen::Index c = 0; c < s.x.cols(); ++c) {
      if (c) out << ' ';
      out << s.x(r, c);
    }
    out << '\n';
  }
  out.precision(old);
}

}  // namespace maxstab
