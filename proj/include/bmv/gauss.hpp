// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace bmv {

/// m-point Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int m);

/// The rule mapped affinely onto [lo, hi].
GaussRule gauss_legendre(int m, double lo, double hi);

}  // namespace bmv
