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

// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned here.
// `acceptance --criterion N` runs one criterion; no flag runs all of them.
// The exit status is nonzero if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "maxstab/bounds.hpp"
#include "maxstab/distances.hpp"
#include "maxstab/models.hpp"
#include "maxstab/montecarlo.hpp"
#include "maxstab/mvn.hpp"
#include "maxstab/psi.hpp"
#include "maxstab/rng.hpp"
#include "maxstab/spectral.hpp"
#include "maxstab/transport.hpp"
#include "test_support.hpp"

namespace maxstab {
namespace {

constexpr double kE = std::numbers::e;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail.clear();
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += why;
  o.pass = false;
}

// Criterion 1: comonotone vs independent on every dimension and index.
Outcome example_one_exact() {
  constexpr double kTol = 1e-6, kAlphaTol = 1e-9, kSeconds = 10.0;
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0, spread = 0.0;
  for (std::size_t d = 2; d <= 6; ++d) {
    const double closed = (d - 1.0) / d * std::pow(double(d), -1.0 / (d - 1.0));
    std::vector<double> values;
    for (double alpha : {0.5, 1.0, 2.0}) {
      const auto r = kolmogorov_exact(MaxStableModel::comonotone(d, alpha),
                                      MaxStableModel::independent(d, alpha));
      worst = std::max(worst, std::abs(r.value - closed));
      values.push_back(r.value);
      if (std::abs(r.value - closed) > kTol) {
        fail(o, fmt("d=%zu alpha=%g: %.10f vs %.10f", d, alpha, r.value, closed));
      }
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    spread = std::max(spread, *hi - *lo);
  }
  if (spread > kAlphaTol) fail(o, fmt("alpha dependence %.3g", spread));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds > kSeconds) fail(o, fmt("took %.1f s", seconds));
  if (o.pass) o.detail = fmt("max error %.2e, alpha spread %.2e, %.2f s", worst, spread, seconds);
  return o;
}

// Criterion 2: 0.25 <= 1/e <= 2/e for d = 2.
Outcome example_one_chain() {
  constexpr double kTol = 1e-9;
  Outcome o;
  const auto hc = AngularMeasure::comonotone(2, 1.0, NormSpec::lp(1.0));
  const auto hi = AngularMeasure::independent(2, 1.0, NormSpec::lp(1.0));
  const double exact = kolmogorov_exact(MaxStableModel::discrete_spectral(hc),
                                        MaxStableModel::discrete_spectral(hi)).value;
  const double w = bound_wasserstein(hc, hi).value;
  const double tv = bound_tv(hc, hi).value;
  if (std::abs(exact - 0.25) > kTol) fail(o, fmt("exact %.12f", exact));
  if (std::abs(w - 1.0 / kE) > kTol) fail(o, fmt("W bound %.12f", w));
  if (std::abs(tv - 2.0 / kE) > kTol) fail(o, fmt("TV bound %.12f", tv));
  if (!(exact <= w && w <= tv)) fail(o, "chain out of order");
  if (o.pass) o.detail = fmt("%.6f <= %.6f <= %.6f", exact, w, tv);
  return o;
}

// Criterion 3: two representers of one law at W_1 distance 2/3.
Outcome representer_dependence() {
  constexpr double kTol = 1e-12;
  Outcome o;
  const DeHaanRepresenter one(1.0, {{{1.0}, 1.0}});
  const DeHaanRepresenter mix(1.0, {{{2.0}, 1.0 / 3.0}, {{0.5}, 2.0 / 3.0}});
  const double w = wasserstein1_sup(one, mix).value;
  const auto m1 = MaxStableModel::discrete_spectral(angular_from_representer(one, NormSpec::lp(1.0)));
  const auto m2 = MaxStableModel::discrete_spectral(angular_from_representer(mix, NormSpec::lp(1.0)));
  const double dk = kolmogorov_exact(m1, m2).value;
  if (std::abs(w - 2.0 / 3.0) > kTol) fail(o, fmt("W1 %.15f", w));
  if (dk > kTol) fail(o, fmt("d_K %.3g", dk));
  if (o.pass) o.detail = fmt("W1 = %.12f, d_K = %.1e", w, dk);
  return o;
}

// Brute-force d_K on the two-dimensional canonical section: n log-spaced
// points per branch, radial sup by the closed form.
double grid_oracle_2d(const MaxStableModel& a, const MaxStableModel& b, int n) {
  double best = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = std::exp(std::log(1000.0) * k / (n - 1.0));
    for (int side = 0; side < 2; ++side) {
      const std::vector<double> u = side ? std::vector<double>{t, 1.0} : std::vector<double>{1.0, t};
      const double va = a.exponent(u), vb = b.exponent(u);
      if (va == vb) continue;
      const double r = std::log(vb / va) / (vb - va);
      best = std::max(best, std::abs(std::exp(-va * r) - std::exp(-vb * r)));
    }
  }
  return best;
}

// Criterion 4: logistic against the independent and comonotone laws.
Outcome example_two_logistic() {
  constexpr double kOracleTol = 1e-6, kSeconds = 60.0;
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  double worst_oracle = 0.0, min_slack = 1.0;
  for (std::size_t d : {2u, 3u}) {
    const auto ind = MaxStableModel::independent(d, 1.0);
    const auto com = MaxStableModel::comonotone(d, 1.0);
    for (double theta : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      const auto logi = MaxStableModel::logistic(d, theta, 1.0);
      const double di = kolmogorov_exact(ind, logi).value;
      const double dc = kolmogorov_exact(com, logi).value;
      const double bi = (d - std::pow(double(d), theta)) / kE;
      const double bc = (std::pow(double(d), theta) - 1.0) / kE;
      min_slack = std::min({min_slack, bi - di, bc - dc});
      if (di > bi) fail(o, fmt("ind d=%zu theta=%g: %.8f > %.8f", d, theta, di, bi));
      if (dc > bc) fail(o, fmt("com d=%zu theta=%g: %.8f > %.8f", d, theta, dc, bc));
      if (d == 2) {
        for (const auto& [other, exact] : {std::pair{&ind, di}, std::pair{&com, dc}}) {
          const double grid = grid_oracle_2d(*other, logi, 5000);
          worst_oracle = std::max(worst_oracle, std::abs(grid - exact));
          if (std::abs(grid - exact) > kOracleTol) {
            fail(o, fmt("oracle d=2 theta=%g: %.10f vs %.10f", theta, grid, exact));
          }
        }
      }
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds > kSeconds) fail(o, fmt("took %.1f s", seconds));
  if (o.pass) o.detail = fmt("min slack %.4f, oracle gap %.2e, %.1f s", min_slack, worst_oracle, seconds);
  return o;
}

// E max(k, c exp(m + s Z)) for Z standard normal.
double expected_max(double k, double c, double m, double s) {
  if (s <= 0.0) return std::max(k, c * std::exp(m));
  const double z = (std::log(k / c) - m) / s;
  return k * std_normal_cdf(z) + c * std::exp(m + 0.5 * s * s) * std_normal_cdf(s - z);
}

// V(x) = E max_i exp(U_i - S_ii / 2) / x_i with U_0 = 0, by one closed-form
// conditional expectation and adaptive quadrature over U_1.
double hr_exponent_oracle(const Eigen::MatrixXd& lambda, std::span<const double> x) {
  const Eigen::MatrixXd s = variogram_to_covariance(lambda);
  const std::size_t d = x.size();
  std::vector<double> c(d);
  for (std::size_t i = 0; i < d; ++i) c[i] = std::exp(-0.5 * s(i, i)) / x[i];
  const double s1 = std::sqrt(s(1, 1));
  if (d == 2) return expected_max(c[0], c[1], 0.0, s1);
  const double beta = s(1, 2) / s(1, 1);
  const double sc = std::sqrt(std::max(0.0, s(2, 2) - s(1, 2) * beta));
  auto f = [&](double z) {
    const double k = std::max(c[0], c[1] * std::exp(s1 * z));
    return std_normal_pdf(z) * expected_max(k, c[2], beta * s1 * z, sc);
  };
  using boost::math::quadrature::gauss_kronrod;
  const double kink = std::clamp(std::log(c[0] / c[1]) / s1, -12.0, 12.0);
  return gauss_kronrod<double, 61>::integrate(f, -12.0, kink, 20, 1e-14) +
         gauss_kronrod<double, 61>::integrate(f, kink, 12.0, 20, 1e-14);
}

// Criterion 5: the Psi-decomposition reconstructs V.
Outcome psi_identities() {
  constexpr double kDiscreteTol = 1e-12, kHrTol = 1e-5, kMvnTol = 1e-7;
  Outcome o;
  CounterRng rng(5005);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 2 + trial % 4;
    const double alpha = 0.5 + 2.0 * rng.uniform();
    const double p = std::array{0.5, 1.0, 2.0, kInf}[trial % 4];
    const auto h = testing::random_measure(rng, d, alpha, NormSpec::lp(p), 1 + rng() % 8);
    const auto x = testing::random_point(rng, d);
    const auto psi = psi_discrete(h, x);
    double sum = 0.0;
    for (std::size_t i = 0; i < d; ++i) sum += std::pow(x[i], -alpha) * psi.values[i];
    const double v = MaxStableModel::discrete_spectral(h).exponent(x);
    worst = std::max(worst, std::abs(sum - v));
  }
  if (worst > kDiscreteTol) fail(o, fmt("discrete error %.3g", worst));
  double worst_hr = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 2 + trial % 2;
    Eigen::MatrixXd a(d, d);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
    const Eigen::MatrixXd lambda = variogram_lambda(a * a.transpose() + 0.1 * Eigen::MatrixXd::Identity(d, d));
    const auto x = testing::random_point(rng, d);
    double sum = 0.0;
    for (std::size_t i = 0; i < d; ++i) sum += psi_hr(lambda, x, i, {kMvnTol, 7}) / x[i];
    worst_hr = std::max(worst_hr, std::abs(sum - hr_exponent_oracle(lambda, x)));
  }
  if (worst_hr > kHrTol) fail(o, fmt("HR error %.3g", worst_hr));
  if (o.pass) o.detail = fmt("discrete %.2e, HR %.2e", worst, worst_hr);
  return o;
}

// Criterion 6: sup-norm Lipschitz constant of softmax.
Outcome softmax_lipschitz() {
  constexpr double kSlack = 1e-12, kProbeTol = 1e-3;
  Outcome o;
  const double l = softmax_lipschitz_constant();
  CounterRng rng(6006);
  double worst = 0.0;
  for (int trial = 0; trial < 100000; ++trial) {
    const std::size_t d = 2 + trial % 5;
    std::vector<double> u(d), v(d);
    const double scale = std::exp(4.0 * rng.uniform() - 2.0);
    for (std::size_t i = 0; i < d; ++i) {
      u[i] = 3.0 * rng.normal();
      v[i] = u[i] + scale * rng.normal();
    }
    const auto su = softmax(u), sv = softmax(v);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      num = std::max(num, std::abs(su[i] - sv[i]));
      den += (u[i] - v[i]) * (u[i] - v[i]);
    }
    worst = std::max(worst, num / std::sqrt(den));
  }
  if (worst > l + kSlack) fail(o, fmt("ratio %.15f", worst));
  double probe = 1.0;
  for (std::size_t d = 2; d <= 6; ++d) {
    std::vector<double> u(d, -60.0), v;
    u[0] = u[1] = 0.0;
    v = u;
    const double eps = 1e-6;
    v[0] += eps / std::numbers::sqrt2;
    v[1] -= eps / std::numbers::sqrt2;
    const auto su = softmax(u), sv = softmax(v);
    double num = 0.0;
    for (std::size_t i = 0; i < d; ++i) num = std::max(num, std::abs(su[i] - sv[i]));
    probe = std::min(probe, num / eps);
  }
  if (probe < l - kProbeTol) fail(o, fmt("probe ratio %.6f", probe));
  if (o.pass) o.detail = fmt("max ratio %.9f, probe %.9f, constant %.9f", worst, probe, l);
  return o;
}

// Criterion 7: transportation simplex against permutation enumeration.
Outcome transport_enumeration() {
  constexpr double kTol = 1e-9;
  Outcome o;
  CounterRng rng(7007);
  double worst = 0.0;
  for (int instance = 0; instance < 100; ++instance) {
    const int n = instance < 50 ? 4 : 5;
    Eigen::MatrixXd cost(n, n);
    for (Eigen::Index i = 0; i < cost.size(); ++i) cost.data()[i] = rng.uniform();
    const std::vector<double> mass(n, 1.0 / n);
    const double solved = solve_transport(mass, mass, cost).cost;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      double c = 0.0;
      for (int i = 0; i < n; ++i) c += cost(i, perm[i]) / n;
      best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    worst = std::max(worst, std::abs(solved - best));
  }
  if (worst > kTol) fail(o, fmt("max gap %.3g", worst));
  if (o.pass) o.detail = fmt("100 instances, max gap %.2e", worst);
  return o;
}

// Minimum-cost perfect matching on a square cost matrix (Hungarian method
// with potentials); returns the total cost.
double assignment_cost(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1), v(n + 1), minv(n + 1);
  std::vector<int> p(n + 1), way(n + 1);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  double total = 0.0;
  for (int j = 1; j <= n; ++j) total += a(p[j] - 1, j - 1);
  return total;
}

// Criterion 8: Gelbrich closed forms and consistency with sample matching.
Outcome gelbrich() {
  constexpr double kTol = 1e-10;
  constexpr int kSamples = 10000, kBlock = 500;
  Outcome o;
  CounterRng rng(8008);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double m1 = rng.normal(), m2 = rng.normal();
    const double s1 = 0.1 + rng.uniform(), s2 = 0.1 + rng.uniform();
    const double g = w2_gelbrich(Eigen::VectorXd::Constant(1, m1), Eigen::MatrixXd::Constant(1, 1, s1 * s1),
                                 Eigen::VectorXd::Constant(1, m2), Eigen::MatrixXd::Constant(1, 1, s2 * s2));
    worst = std::max(worst, std::abs(g - std::hypot(m1 - m2, s1 - s2)));
    const int d = 2 + trial % 3;
    Eigen::VectorXd a(d), b(d), mu1(d), mu2(d);
    for (int i = 0; i < d; ++i) {
      a(i) = 0.1 + rng.uniform();
      b(i) = 0.1 + rng.uniform();
      mu1(i) = rng.normal();
      mu2(i) = rng.normal();
    }
    const double gd = w2_gelbrich(mu1, a.asDiagonal().toDenseMatrix(), mu2, b.asDiagonal().toDenseMatrix());
    const double closed = std::sqrt((mu1 - mu2).squaredNorm() +
                                    (a.cwiseSqrt() - b.cwiseSqrt()).squaredNorm());
    worst = std::max(worst, std::abs(gd - closed));
  }
  if (worst > kTol) fail(o, fmt("closed-form error %.3g", worst));

  double min_margin = std::numeric_limits<double>::infinity();
  for (int pair = 0; pair < 3; ++pair) {
    Eigen::Matrix2d l1, l2;
    l1 << 0.5 + rng.uniform(), 0.0, rng.normal() * 0.5, 0.5 + rng.uniform();
    l2 << 0.5 + rng.uniform(), 0.0, rng.normal() * 0.5, 0.5 + rng.uniform();
    const Eigen::Vector2d mu1(rng.normal(), rng.normal()), mu2(rng.normal(), rng.normal());
    const double g = w2_gelbrich(mu1, l1 * l1.transpose(), mu2, l2 * l2.transpose());
    std::vector<double> blocks;
    for (int start = 0; start < kSamples; start += kBlock) {
      Eigen::MatrixXd x(kBlock, 2), y(kBlock, 2), cost(kBlock, kBlock);
      for (int r = 0; r < kBlock; ++r) {
        const Eigen::Vector2d zx(rng.normal(), rng.normal()), zy(rng.normal(), rng.normal());
        x.row(r) = (mu1 + l1 * zx).transpose();
        y.row(r) = (mu2 + l2 * zy).transpose();
      }
      for (int r = 0; r < kBlock; ++r) {
        for (int c = 0; c < kBlock; ++c) cost(r, c) = (x.row(r) - y.row(c)).squaredNorm();
      }
      blocks.push_back(assignment_cost(cost) / kBlock);
    }
    const double k = static_cast<double>(blocks.size());
    const double mean = std::accumulate(blocks.begin(), blocks.end(), 0.0) / k;
    double var = 0.0;
    for (double b : blocks) var += (b - mean) * (b - mean);
    var /= (k - 1.0);
    const double w2 = std::sqrt(mean);
    const double sigma = std::sqrt(var / k) / (2.0 * w2);
    min_margin = std::min(min_margin, w2 + 3.0 * sigma - g);
    if (g > w2 + 3.0 * sigma) fail(o, fmt("Gelbrich %.6f > %.6f + 3 x %.6f", g, w2, sigma));
  }
  if (o.pass) o.detail = fmt("closed-form error %.2e, min margin %.4f", worst, min_margin);
  return o;
}

// Criterion 9: index mismatch on a shared independent angular measure.
Outcome alpha_mismatch() {
  Outcome o;
  const double a1 = 1.0, a2 = 1.1;
  std::string values;
  for (std::size_t d : {2u, 3u}) {
    // Both spheres (p = a1 and p = a2) carry the same axis atoms.
    for (double p : {a1, a2}) {
      const auto h = AngularMeasure::independent(d, a1, NormSpec::lp(p));
      const auto m1 = MaxStableModel::discrete_spectral(h);
      const auto m2 = MaxStableModel::discrete_spectral(h.with_alpha(a2));
      const auto exact = kolmogorov_exact(m1, m2);
      const double bound = bound_alpha_lp(d, p, a1, a2);
      values += fmt("%sd=%zu p=%g: %.6f vs %.6f", values.empty() ? "" : ", ", d, p,
                    exact.certified_lower, bound);
      if (exact.certified_lower > bound) o.pass = false;
    }
  }
  o.detail = (o.pass ? "" : "exact d_K exceeds the bound: ") + values;
  return o;
}

// Criterion 10: sampler margins and the two-sample distance.
Outcome sampler_validity() {
  constexpr double kLevel = 0.01, kSeconds = 120.0;
  constexpr std::size_t kN = 100000;
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  CounterRng rng(10010);
  const Eigen::MatrixXd sigma{{1.0, 0.5}, {0.5, 1.0}};
  const Eigen::MatrixXd lambda{{0.0, 1.0, 0.8}, {1.0, 0.0, 0.6}, {0.8, 0.6, 0.0}};
  const std::vector<std::pair<std::string, MaxStableModel>> models{
      {"comonotone", MaxStableModel::comonotone(2, 1.0)},
      {"independent", MaxStableModel::independent(2, 1.0)},
      {"discrete", MaxStableModel::discrete_spectral(testing::random_measure(rng, 3, 1.7, NormSpec::lp(2.0), 6))},
      {"brown_resnick", MaxStableModel::brown_resnick(sigma)},
      {"husler_reiss", MaxStableModel::husler_reiss(lambda)},
  };
  double min_p = 1.0;
  std::uint64_t seed = 101;
  for (const auto& [name, model] : models) {
    SamplerConfig cfg;
    cfg.seed = seed++;
    cfg.n_samples = kN;
    const auto s = sample_model(model, cfg);
    const auto check = check_margins(s, kLevel);
    for (const auto& m : check.margins) min_p = std::min(min_p, m.p_value);
    if (!check.pass) fail(o, name + " margins rejected");
  }
  SamplerConfig cfg;
  cfg.n_samples = kN;
  cfg.seed = 201;
  const auto com = sample_model(MaxStableModel::comonotone(2, 1.0), cfg);
  cfg.seed = 202;
  const auto ind = sample_model(MaxStableModel::independent(2, 1.0), cfg);
  const auto two = empirical_kolmogorov(com, ind);
  if (std::abs(two.value - 0.25) > two.band) fail(o, fmt("two-sample %.5f outside 0.25 +- %.5f", two.value, two.band));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds > kSeconds) fail(o, fmt("took %.1f s", seconds));
  if (o.pass) {
    o.detail = fmt("min margin p = %.3f, two-sample %.5f (band %.5f), %.1f s", min_p, two.value, two.band, seconds);
  }
  return o;
}

// Criterion 11: every applicable bound dominates the certified lower bound.
Outcome domination_sweep() {
  constexpr double kTol = 1e-9;
  Outcome o;
  CounterRng rng(11011);
  int violations = 0, checked = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const double alpha = 0.5 + 2.0 * rng.uniform();
    const double p1 = std::array{0.5, 1.0, 2.0, kInf}[rng() % 4];
    const double p2 = std::array{0.5, 1.0, 2.0, kInf}[rng() % 4];
    const auto m1 = MaxStableModel::discrete_spectral(
        testing::random_measure(rng, d, alpha, NormSpec::lp(p1), 1 + rng() % 8));
    const auto m2 = MaxStableModel::discrete_spectral(
        testing::random_measure(rng, d, alpha, NormSpec::lp(p2), 1 + rng() % 8));
    const double lower = kolmogorov_exact(m1, m2).certified_lower;
    for (const auto& b : applicable_bounds(m1, m2)) {
      ++checked;
      min_slack = std::min(min_slack, b.value - lower);
      if (b.value < lower - kTol) {
        if (violations++ < 3) fail(o, fmt("trial %d %s: %.8f < %.8f", trial, b.name.c_str(), b.value, lower));
      }
    }
  }
  if (violations) fail(o, fmt("%d violations", violations));
  if (o.pass) o.detail = fmt("%d bound checks, min slack %.2e", checked, min_slack);
  return o;
}

// Criterion 12: M_alpha closed form against numeric maximization.
Outcome m_alpha_closed_form_check() {
  constexpr double kTol = 1e-8;
  Outcome o;
  double worst = 0.0;
  for (double p : {0.5, 1.0, 2.0, kInf}) {
    for (double alpha : {0.5, 1.0, 2.0}) {
      for (std::size_t d = 1; d <= 6; ++d) {
        const auto numeric = m_alpha_numeric(NormSpec::lp(p), alpha, d);
        const double closed = m_alpha_closed_form(p, alpha, d);
        const double err = std::abs(numeric.value - closed);
        worst = std::max(worst, err);
        if (err > kTol) fail(o, fmt("p=%g alpha=%g d=%zu: %.12f vs %.12f", p, alpha, d, numeric.value, closed));
      }
    }
  }
  if (o.pass) o.detail = fmt("72 cases, max error %.2e", worst);
  return o;
}

// Criterion 13: Archimax transfer constants.
Outcome archimax() {
  constexpr double kExpTol = 1e-12, kClaytonTol = 1e-9;
  Outcome o;
  double worst = 0.0;
  for (double dk : {0.0, 1e-4, 0.05, 0.25, 0.6}) {
    worst = std::max(worst, std::abs(bound_archimax(GeneratorSpec::exponential(), dk).value - dk));
  }
  const double k = k_psi(GeneratorSpec::clayton(1.0));
  if (worst > kExpTol) fail(o, fmt("exponential gap %.3g", worst));
  if (std::abs(k - 0.25) > kClaytonTol) fail(o, fmt("Clayton K = %.12f", k));
  if (o.pass) o.detail = fmt("exponential gap %.1e, Clayton K = %.12f", worst, k);
  return o;
}

const std::vector<std::function<Outcome()>> kCriteria{
    example_one_exact, example_one_chain,   representer_dependence,    example_two_logistic,
    psi_identities,    softmax_lipschitz,   transport_enumeration,     gelbrich,
    alpha_mismatch,    sampler_validity,    domination_sweep,          m_alpha_closed_form_check,
    archimax,
};

}  // namespace
}  // namespace maxstab

int main(int argc, char** argv) {
  CLI::App app{"maxstab acceptance suite"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-13)")->check(CLI::Range(1, 13));
  CLI11_PARSE(app, argc, argv);
  bool all_pass = true;
  for (int n = 1; n <= static_cast<int>(maxstab::kCriteria.size()); ++n) {
    if (only && n != only) continue;
    maxstab::Outcome o;
    try {
      o = maxstab::kCriteria[n - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d: %s  %s\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
