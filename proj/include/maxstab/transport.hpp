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

#ifndef MAXSTAB_TRANSPORT_HPP_
#define MAXSTAB_TRANSPORT_HPP_

#include <span>

#include <Eigen/Dense>

namespace maxstab {

struct TransportPlan {
  Eigen::MatrixXd coupling;  // rows: source atoms, columns: target atoms
  double cost = 0.0;
  int pivots = 0;
  bool optimal = false;
};

// Exact solution of the finite transportation problem
//   min sum_jk pi_jk c_jk  s.t.  rows sum to `supply`, columns to `demand`
// by the primal transportation simplex (stepping-stone pivots on a spanning
// tree basis). Totals must agree within 1e-12.
TransportPlan solve_transport(std::span<const double> supply,
                              std::span<const double> demand,
                              const Eigen::MatrixXd& cost);

}  // namespace maxstab

#endif  // MAXSTAB_TRANSPORT_HPP_
