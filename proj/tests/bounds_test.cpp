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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "maxstab/bounds.hpp"
#include "maxstab/distances.hpp"
#include "maxstab/error.hpp"
#include "maxstab/models.hpp"
#include "test_support.hpp"

namespace maxstab {
namespace {

using testing::random_measure;
using testing::random_point;

constexpr double kE = std::numbers::e;

TEST(BoundWasserstein, Examples) {
  const auto com = AngularMeasure::comonotone(2, 1.0, NormSpec::lp(1.0));
  const auto ind = AngularMeasure::independent(2, 1.0, NormSpec::lp(1.0));
  EXPECT_NEAR(bound_wasserstein(com, ind).value, 1.0 / kE, 1e-15);
  EXPECT_EQ(bound_wasserstein(ind, ind).value, 0.0);

  // Two representers of one law give a positive bound for a zero distance.
  const DeHaanRepresenter one(1.0, {{{1.0}, 1.0}});
  const DeHaanRepresenter mix(1.0, {{{2.0}, 1.0 / 3.0}, {{0.5}, 2.0 / 3.0}});
  EXPECT_NEAR(bound_wasserstein(one, mix).value, 2.0 / (3.0 * kE), 1e-15);
  const auto h1 = angular_from_representer(one, NormSpec::lp(1.0));
  const auto h2 = angular_from_representer(mix, NormSpec::lp(1.0));
  EXPECT_NEAR(kolmogorov_exact(MaxStableModel::discrete_spectral(h1),
                               MaxStableModel::discrete_spectral(h2)).value,
              0.0, 1e-15);
  // Supplying the canonical pair as an alternative cannot make it worse.
  const std::vector<std::pair<DeHaanRepresenter, DeHaanRepresenter>> alt{{one, mix}};
  EXPECT_EQ(bound_wasserstein(h1, h2, alt).value, 0.0);
}

TEST(BoundTv, ExamplesAndNormChoice) {
  const auto com = AngularMeasure::comonotone(3, 1.0, NormSpec::lp(1.0));
  const auto ind = AngularMeasure::independent(3, 1.0, NormSpec::lp(1.0));
  auto r = bound_tv(com, ind);
  EXPECT_NEAR(r.value, 3.0 / kE, 1e-15);
  EXPECT_EQ(r.constants.at("m_alpha"), 1.0);
  EXPECT_EQ(bound_tv(com, com).value, 0.0);

  // On the sup-norm sphere the comonotone atom has mass 1, the TV distance
  // stays 3 and M_alpha = d, so the l_1 norm wins.
  const std::vector<NormSpec> sup{NormSpec::lp(kInf)};
  EXPECT_NEAR(bound_tv(com, ind, sup).value, 9.0 / kE, 1e-14);
  const std::vector<NormSpec> both{NormSpec::lp(kInf), NormSpec::lp(1.0)};
  r = bound_tv(com, ind, both);
  EXPECT_NEAR(r.value, 3.0 / kE, 1e-14);
  EXPECT_EQ(r.detail, "l1");

  CounterRng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const double alpha = 0.5 + 2.0 * rng.uniform();
    const auto h1 = random_measure(rng, 3, alpha, NormSpec::lp(alpha), 4);
    const auto h2 = random_measure(rng, 3, alpha, NormSpec::lp(alpha), 4);
    const std::vector<NormSpec> norms{NormSpec::lp(alpha), NormSpec::lp(kInf), NormSpec::lp(0.5)};
    const auto best = bound_tv(h1, h2, norms);
    for (const auto& n : norms) {
      const double direct = m_alpha_closed_form(n.p(), alpha, 3) *
                            tv_distance(reproject(h1, n), reproject(h2, n)) / kE;
      EXPECT_LE(best.value, direct + 1e-12);
      const std::vector<NormSpec> just{n};
      EXPECT_NEAR(bound_tv(h1, h2, just).value, direct, 1e-12);
    }
  }
}

TEST(BoundTv, WassersteinIsNoLargerThanTv) {
  CounterRng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + trial % 2;
    const double alpha = 0.5 + 2.0 * rng.uniform();
    const auto h1 = random_measure(rng, d, alpha, NormSpec::lp(alpha), 1 + rng() % 5);
    const auto h2 = random_measure(rng, d, alpha, NormSpec::lp(alpha), 1 + rng() % 5);
    EXPECT_LE(bound_wasserstein(h1, h2).value, bound_tv(h1, h2).value + 1e-12);
  }
}

// W_1 with sup cost is at most the sup-norm diameter times the TV distance.
TEST(BoundTv, KantorovichRubinsteinAgainstTv) {
  CounterRng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + trial % 3;
    const NormSpec norm = NormSpec::lp(1.0);
    std::vector<std::vector<double>> support;
    for (int k = 0; k < 5; ++k) {
      auto s = random_point(rng, d);
      const double n = norm.evaluate(s);
      for (double& v : s) v /= n;
      support.push_back(s);
    }
    auto law = [&] {
      WeightedPoints w;
      double total = 0.0;
      for (const auto& s : support) {
        if (rng.uniform() < 0.3) continue;
        w.points.push_back(s);
        w.probs.push_back(rng.uniform() + 0.05);
        total += w.probs.back();
      }
      if (w.points.empty()) {
        w.points.push_back(support[0]);
        w.probs.push_back(total = 1.0);
      }
      for (double& p : w.probs) p /= total;
      return w;
    };
    const auto p = law(), q = law();
    auto measure = [&](const WeightedPoints& w) {
      std::vector<AngularAtom> atoms;
      for (std::size_t k = 0; k < w.points.size(); ++k) atoms.push_back({w.points[k], w.probs[k]});
      return AngularMeasure(1.0, norm, atoms, true);
    };
    double diameter = 0.0;
    for (const auto& a : support) {
      for (const auto& b : support) {
        for (std::size_t i = 0; i < d; ++i) diameter = std::max(diameter, std::abs(a[i] - b[i]));
      }
    }
    EXPECT_LE(wasserstein1_sup(p, q).value, diameter * tv_distance(measure(p), measure(q)) + 1e-12);
  }
}

TEST(BoundPsi, Examples) {
  const auto com = MaxStableModel::comonotone(2, 1.0);
  const auto ind = MaxStableModel::independent(2, 1.0);
  EXPECT_GE(bound_psi(com, ind).value, 1.0 / kE);
  EXPECT_EQ(bound_psi(ind, ind).value, 0.0);
  const auto logi = MaxStableModel::logistic(2, 0.5, 1.0);
  const auto r = bound_psi(logi, ind);
  EXPECT_GE(r.value, kolmogorov_exact(logi, ind).value);
  EXPECT_NEAR(r.value, r.constants.at("psi_sup") / kE, 1e-15);
}

TEST(BoundAlpha, ClosedForms) {
  const auto h = AngularMeasure::independent(2, 1.0, NormSpec::lp(1.0));
  EXPECT_EQ(bound_alpha_mismatch(h, 1.3, 1.3).value, 0.0);
  EXPECT_EQ(bound_alpha_lp(3, 2.0, 1.3, 1.3), 0.0);
  EXPECT_NEAR(bound_alpha_lp(2, 2.0, 1.0, 1.1), 2.0 / (kE * kE) * 0.1, 1e-15);
  EXPECT_NEAR(bound_alpha_lp(2, kInf, 1.0, 1.1), 2.0 / (kE * kE) * 0.1, 1e-15);
  // General form on an l_p sphere: C_inf = 1, so the max is 1 / (e alpha_*).
  const auto r = bound_alpha_mismatch(h, 1.0, 1.1);
  EXPECT_EQ(r.constants.at("c_inf"), 1.0);
  EXPECT_NEAR(r.value, 2.0 / kE * 0.1 / kE, 1e-15);
}

// With H_ind and alpha in {1, 1.1} the exact distance exceeds the l_p
// closed form, already in one dimension. See the README.
TEST(BoundAlpha, ExactDistanceExceedsClosedForm) {
  for (std::size_t d : {1u, 2u, 3u}) {
    const auto h1 = AngularMeasure::independent(d, 1.0, NormSpec::lp(1.0));
    const auto h2 = AngularMeasure::independent(d, 1.1, NormSpec::lp(1.0));
    const auto exact = kolmogorov_exact(MaxStableModel::discrete_spectral(h1),
                                        MaxStableModel::discrete_spectral(h2));
    EXPECT_GT(exact.certified_lower, bound_alpha_lp(d, 1.0, 1.0, 1.1));
    EXPECT_GT(exact.certified_lower, bound_alpha_mismatch(h1, 1.0, 1.1).value);
  }
}

TEST(BoundBrownResnick, ZeroAndHandEvaluation) {
  Eigen::MatrixXd s1 = Eigen::MatrixXd::Identity(2, 2);
  EXPECT_EQ(bound_brown_resnick(s1, {}, s1, {}).value, 0.0);
  const Eigen::MatrixXd s2 = 1.44 * Eigen::MatrixXd::Identity(2, 2);
  const auto r = bound_brown_resnick(s1, {}, s2, {});
  const double lead = std::sqrt(2.0) * 2.0 / (4.0 * kE);
  const double w2 = std::sqrt(2.0) * 0.2;
  const double shift = std::sqrt(2.0) * 0.22;
  EXPECT_NEAR(r.value, lead * (w2 + shift), 1e-12);
  EXPECT_NEAR(r.constants.at("example_form"), lead * (std::sqrt(2.0) * 0.44 + w2 * w2), 1e-12);

  const auto m1 = MaxStableModel::brown_resnick(s1);
  const auto m2 = MaxStableModel::brown_resnick(s2);
  EXPECT_LE(kolmogorov_exact(m1, m2).value, r.value);
  const std::vector<double> c{0.1, 0.2};
  EXPECT_NEAR(bound_brown_resnick(s1, c, s1, std::vector<double>{0.1, 0.5}).value, lead * 0.3, 1e-12);
}

TEST(BoundDifferentMargins, Composition) {
  const MarginSpec unit{{1.0, 1.0}, {1.0, 1.0}};
  EXPECT_EQ(bound_different_margins(0.1, unit, unit, false).value, 0.1);
  EXPECT_EQ(bound_different_margins(0.1, unit, unit, true).value, 0.1);
  const MarginSpec m1{{1.0, 2.0}, {1.5, 0.8}};
  const MarginSpec m2{{1.3, 2.0}, {1.5, 0.9}};
  const auto analytic = bound_different_margins(0.05, m1, m2, false);
  const double t0 = 0.3 / (kE * 1.0);
  const double t1 = 0.1 / (kE * kE * 0.8);
  EXPECT_NEAR(analytic.value, 0.05 + t0 + t1, 1e-15);
  const auto exact = bound_different_margins(0.05, m1, m2, true);
  EXPECT_NEAR(exact.value, 0.05 + kolmogorov_univariate_frechet(1.0, 1.5, 1.3, 1.5).value +
                               kolmogorov_univariate_frechet(2.0, 0.8, 2.0, 0.9).value,
              1e-15);
  // Equal indices: the exact margin terms never exceed the analytic ones.
  CounterRng rng(2);
  for (int k = 0; k < 100; ++k) {
    const double a = 0.3 + 3.0 * rng.uniform();
    const MarginSpec p{{0.5 + rng.uniform(), 0.5 + rng.uniform()}, {a, a}};
    const MarginSpec q{{0.5 + rng.uniform(), 0.5 + rng.uniform()}, {a, a}};
    EXPECT_LE(bound_different_margins(0.0, p, q, true).value,
              bound_different_margins(0.0, p, q, false).value + 1e-15);
  }
}

TEST(Archimax, KPsiAndComposition) {
  EXPECT_NEAR(k_psi(GeneratorSpec::exponential()), 1.0 / kE, 1e-14);
  EXPECT_NEAR(k_psi(GeneratorSpec::clayton(1.0)), 0.25, 1e-12);
  for (double theta : {0.3, 2.0, 5.0}) {
    EXPECT_NEAR(k_psi(GeneratorSpec::clayton(theta)), std::pow(1.0 + theta, -1.0 / theta - 1.0), 1e-12);
  }
  for (double dk : {0.0, 0.013, 0.25}) {
    EXPECT_NEAR(bound_archimax(GeneratorSpec::exponential(), dk).value, dk, 1e-12);
  }
  EXPECT_NEAR(bound_archimax(GeneratorSpec::clayton(1.0), 0.2).value, kE * 0.25 * 0.2, 1e-12);
}

TEST(Domination, RandomDiscretePairs) {
  CounterRng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 2;
    const double alpha = 0.5 + 2.0 * rng.uniform();
    const auto m1 = MaxStableModel::discrete_spectral(random_measure(rng, d, alpha, NormSpec::lp(1.0), 1 + rng() % 8));
    const auto m2 = MaxStableModel::discrete_spectral(random_measure(rng, d, alpha, NormSpec::lp(2.0), 1 + rng() % 8));
    const double lower = kolmogorov_exact(m1, m2).certified_lower;
    for (const auto& b : applicable_bounds(m1, m2)) EXPECT_GE(b.value, lower - 1e-9) << b.name;
  }
}

}  // namespace
}  // namespace maxstab
