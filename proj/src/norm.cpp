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

#include "maxstab/norm.hpp"

#include <cmath>
#include <sstream>

#include "maxstab/error.hpp"

namespace maxstab {

NormSpec NormSpec::lp(double p) {
  require(p > 0.0, "norm exponent p must be positive");
  return NormSpec(p, {});
}

NormSpec NormSpec::weighted_lp(double p, std::vector<double> weights) {
  require(p > 0.0, "norm exponent p must be positive");
  require(!weights.empty(), "weighted norm needs at least one weight");
  for (double w : weights) {
    require(w > 0.0 && std::isfinite(w), "norm weights must be positive");
  }
  return NormSpec(p, std::move(weights));
}

void NormSpec::check_dim(std::size_t dim) const {
  require(weights_.empty() || weights_.size() == dim,
          "norm weight count does not match dimension");
}

double NormSpec::evaluate(std::span<const double> s) const {
  if (std::isinf(p_)) {
    double m = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      m = std::max(m, weight(i) * std::abs(s[i]));
    }
    return m;
  }
  // Scale by the largest entry so that large p does not overflow.
  double scale = 0.0;
  for (double v : s) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    acc += weight(i) * std::pow(std::abs(s[i]) / scale, p_);
  }
  return scale * std::pow(acc, 1.0 / p_);
}

std::string NormSpec::describe() const {
  std::ostringstream os;
  os << (is_weighted() ? "weighted_l" : "l");
  if (std::isinf(p_)) {
    os << "inf";
  } else {
    os << p_;
  }
  return os.str();
}

double power_sum(std::span<const double> s, double alpha) {
  double acc = 0.0;
  for (double v : s) {
    if (v > 0.0) acc += std::pow(v, alpha);
  }
  return acc;
}

}  // namespace maxstab
