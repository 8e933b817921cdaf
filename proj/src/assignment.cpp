// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

#include "bmv/assignment.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

namespace bmv {

std::vector<int> hungarian(const CostMatrix& cost) {
  // Potentials formulation, 1-based with a virtual column 0.
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
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
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

std::vector<int> greedy_assignment(const CostMatrix& cost) {
  const int n = static_cast<int>(cost.size());
  std::vector<std::tuple<double, int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pairs.emplace_back(cost[i][j], i, j);
  std::sort(pairs.begin(), pairs.end());
  std::vector<int> row_to_col(n, -1);
  std::vector<char> col_used(n, 0);
  int left = n;
  for (const auto& [c, i, j] : pairs) {
    if (row_to_col[i] >= 0 || col_used[j]) continue;
    row_to_col[i] = j;
    col_used[j] = 1;
    if (--left == 0) break;
  }
  return row_to_col;
}

std::vector<int> assign_min_cost(const CostMatrix& cost) {
  return cost.size() <= 8 ? hungarian(cost) : greedy_assignment(cost);
}

}  // namespace bmv
