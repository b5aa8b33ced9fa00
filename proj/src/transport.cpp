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

#include "maxstab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "maxstab/error.hpp"

namespace maxstab {
namespace {

struct Cell {
  int row;
  int col;
};

}  // namespace

TransportPlan solve_transport(std::span<const double> supply,
                              std::span<const double> demand,
                              const Eigen::MatrixXd& cost) {
  const int m = static_cast<int>(supply.size());
  const int n = static_cast<int>(demand.size());
  require(m >= 1 && n >= 1, "transport problem needs nonempty marginals");
  require(cost.rows() == m && cost.cols() == n, "cost matrix shape mismatch");
  double total_s = 0.0;
  double total_d = 0.0;
  for (double s : supply) {
    require(s >= 0.0 && std::isfinite(s), "supplies must be nonnegative");
    total_s += s;
  }
  for (double d : demand) {
    require(d >= 0.0 && std::isfinite(d), "demands must be nonnegative");
    total_d += d;
  }
  require(std::abs(total_s - total_d) <= 1e-12, "transport marginals differ in mass");
  require(cost.allFinite(), "transport costs must be finite");

  Eigen::MatrixXd flow = Eigen::MatrixXd::Zero(m, n);
  std::vector<Cell> basis;
  basis.reserve(m + n - 1);
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> in_basis =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(m, n, false);

  // Northwest corner: the staircase path always yields m + n - 1 cells
  // forming a spanning tree, degenerate or not.
  {
    std::vector<double> s(supply.begin(), supply.end());
    std::vector<double> d(demand.begin(), demand.end());
    int i = 0;
    int j = 0;
    while (true) {
      double x = std::min(s[i], d[j]);
      if (i == m - 1 && j == n - 1) x = std::max(0.0, std::max(s[i], d[j]));
      flow(i, j) = x;
      s[i] -= x;
      d[j] -= x;
      basis.push_back({i, j});
      in_basis(i, j) = true;
      if (i == m - 1 && j == n - 1) break;
      if (i == m - 1) {
        ++j;
      } else if (j == n - 1) {
        ++i;
      } else if (s[i] <= d[j]) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  const double scale = std::max(1.0, cost.cwiseAbs().maxCoeff());
  const double eps = 1e-12 * scale;
  const int nodes = m + n;
  std::vector<std::vector<std::pair<int, int>>> adj(nodes);  // (node, basis idx)
  std::vector<double> pot(nodes);
  std::vector<int> parent(nodes), parent_cell(nodes), queue(nodes);
  std::vector<char> seen(nodes);

  auto build_tree = [&](int root) {
    for (auto& a : adj) a.clear();
    for (int b = 0; b < static_cast<int>(basis.size()); ++b) {
      adj[basis[b].row].push_back({m + basis[b].col, b});
      adj[m + basis[b].col].push_back({basis[b].row, b});
    }
    std::fill(seen.begin(), seen.end(), 0);
    int head = 0;
    int tail = 0;
    queue[tail++] = root;
    seen[root] = 1;
    parent[root] = -1;
    parent_cell[root] = -1;
    while (head < tail) {
      const int u = queue[head++];
      for (auto [v, b] : adj[u]) {
        if (seen[v]) continue;
        seen[v] = 1;
        parent[v] = u;
        parent_cell[v] = b;
        queue[tail++] = v;
      }
    }
  };

  TransportPlan plan;
  int degenerate_streak = 0;
  const int max_pivots = 200 * (m + n) + 10000;
  while (plan.pivots < max_pivots) {
    // Potentials u_i + v_j = c_ij on basic cells, rooted at row 0.
    build_tree(0);
    pot[0] = 0.0;
    for (int k = 1; k < nodes; ++k) {
      const int v = queue[k];
      const Cell& c = basis[parent_cell[v]];
      pot[v] = cost(c.row, c.col) - pot[parent[v]];
    }
    // Entering cell: most negative reduced cost (lowest index on ties);
    // Bland's first-negative rule after a run of degenerate pivots.
    const bool bland = degenerate_streak > 50;
    int ei = -1;
    int ej = -1;
    double best = -eps;
    for (int i = 0; i < m && !(bland && ei >= 0); ++i) {
      for (int j = 0; j < n; ++j) {
        if (in_basis(i, j)) continue;
        const double r = cost(i, j) - pot[i] - pot[m + j];
        if (r < best) {
          best = r;
          ei = i;
          ej = j;
          if (bland) break;
        }
      }
    }
    if (ei < 0) {
      plan.optimal = true;
      break;
    }
    // Tree path from column ej up to row ei closes the cycle.
    build_tree(ei);
    std::vector<int> path_cells;
    for (int v = m + ej; v != ei; v = parent[v]) path_cells.push_back(parent_cell[v]);
    double theta = std::numeric_limits<double>::infinity();
    int leave = -1;
    for (std::size_t k = 0; k < path_cells.size(); k += 2) {
      const Cell& c = basis[path_cells[k]];
      const double f = flow(c.row, c.col);
      const int idx = c.row * n + c.col;
      if (f < theta ||
          (f == theta && idx < basis[path_cells[leave]].row * n + basis[path_cells[leave]].col)) {
        theta = f;
        leave = static_cast<int>(k);
      }
    }
    for (std::size_t k = 0; k < path_cells.size(); ++k) {
      const Cell& c = basis[path_cells[k]];
      flow(c.row, c.col) += (k % 2 == 0) ? -theta : theta;
    }
    flow(ei, ej) = theta;
    const int leave_cell = path_cells[leave];
    flow(basis[leave_cell].row, basis[leave_cell].col) = 0.0;
    in_basis(basis[leave_cell].row, basis[leave_cell].col) = false;
    basis[leave_cell] = {ei, ej};
    in_basis(ei, ej) = true;
    degenerate_streak = theta > 0.0 ? 0 : degenerate_streak + 1;
    ++plan.pivots;
  }

  flow = flow.cwiseMax(0.0);
  plan.coupling = flow;
  plan.cost = (flow.array() * cost.array()).sum();
  return plan;
}

}  // namespace maxstab
