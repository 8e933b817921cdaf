// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace bmv {

using CostMatrix = std::vector<std::vector<double>>;

/// Minimum-cost perfect matching of rows to columns of a square cost
/// matrix; result[row] = column. Hungarian method for n <= 8, globally
/// greedy (cheapest remaining pair first) above that.
std::vector<int> assign_min_cost(const CostMatrix& cost);

/// Exact Hungarian method, any size.
std::vector<int> hungarian(const CostMatrix& cost);

/// Cheapest-pair-first greedy matching.
std::vector<int> greedy_assignment(const CostMatrix& cost);

}  // namespace bmv
