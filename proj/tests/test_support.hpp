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

#ifndef MAXSTAB_TESTS_TEST_SUPPORT_HPP_
#define MAXSTAB_TESTS_TEST_SUPPORT_HPP_

#include <cmath>
#include <vector>

#include "maxstab/norm.hpp"
#include "maxstab/rng.hpp"
#include "maxstab/spectral.hpp"

namespace maxstab::testing {

// Random finitely supported representer with `atoms` atoms; about a third of
// the coordinates are zero, but every atom and every coordinate keeps some
// positive mass.
inline DeHaanRepresenter random_representer(CounterRng& rng, std::size_t dim,
                                            double alpha, std::size_t atoms) {
  std::vector<RepresenterAtom> out(atoms);
  for (auto& a : out) {
    a.vector.resize(dim);
    for (auto& v : a.vector) v = rng.uniform() < 0.3 ? 0.0 : 0.1 + 2.0 * rng.uniform();
    bool positive = false;
    for (double v : a.vector) positive = positive || v > 0.0;
    if (!positive) a.vector[rng() % dim] = 0.5 + rng.uniform();
    a.prob = 0.05 + rng.uniform();
  }
  for (std::size_t i = 0; i < dim; ++i) {
    bool covered = false;
    for (const auto& a : out) covered = covered || a.vector[i] > 0.0;
    if (!covered) out[rng() % atoms].vector[i] = 0.5 + rng.uniform();
  }
  return DeHaanRepresenter::standardized(alpha, std::move(out));
}

inline AngularMeasure random_measure(CounterRng& rng, std::size_t dim, double alpha,
                                     const NormSpec& norm, std::size_t atoms) {
  return angular_from_representer(random_representer(rng, dim, alpha, atoms), norm);
}

inline std::vector<double> random_point(CounterRng& rng, std::size_t dim, double lo = 0.2,
                                        double hi = 5.0) {
  std::vector<double> x(dim);
  for (auto& v : x) v = lo * std::pow(hi / lo, rng.uniform());
  return x;
}

}  // namespace maxstab::testing

#endif  // MAXSTAB_TESTS_TEST_SUPPORT_HPP_
