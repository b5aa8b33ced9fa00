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

#ifndef MAXSTAB_NORM_HPP_
#define MAXSTAB_NORM_HPP_

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace maxstab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Weighted l_p map tau(s) = (sum_i w_i |s_i|^p)^(1/p), or max_i w_i |s_i| for
// p = inf. With p < 1 this is not a norm, but it is still positive and
// 1-homogeneous, which is all the angular machinery needs.
class NormSpec {
 public:
  static NormSpec lp(double p);
  static NormSpec weighted_lp(double p, std::vector<double> weights);

  double p() const { return p_; }
  bool is_weighted() const { return !weights_.empty(); }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t i) const {
    return weights_.empty() ? 1.0 : weights_[i];
  }

  // Throws if the weight vector does not match `dim`.
  void check_dim(std::size_t dim) const;

  double evaluate(std::span<const double> s) const;

  bool operator==(const NormSpec& other) const = default;

  std::string describe() const;

 private:
  NormSpec(double p, std::vector<double> weights)
      : p_(p), weights_(std::move(weights)) {}

  double p_ = 1.0;
  std::vector<double> weights_;
};

// sum_i s_i^alpha, the alpha-th power of the l_alpha "norm".
double power_sum(std::span<const double> s, double alpha);

}  // namespace maxstab

#endif  // MAXSTAB_NORM_HPP_
