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

#ifndef MAXSTAB_RNG_HPP_
#define MAXSTAB_RNG_HPP_

#include <array>
#include <cstdint>
#include <limits>

namespace maxstab {

// Counter-based generator (Philox4x32-10). A (seed, stream) pair names an
// independent sequence, so parallel chunks can each own a stream and the
// concatenated output does not depend on scheduling.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform on the open interval (0, 1).
  double uniform();
  double exponential();
  double normal();

  // Stream `index` derived from the same seed.
  CounterRng split(std::uint64_t index) const { return CounterRng(seed_, index); }

 private:
  void refill();

  std::uint64_t seed_;
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace maxstab

#endif  // MAXSTAB_RNG_HPP_
