// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

#include "bmv/gauss.hpp"

#include "bmv/error.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>

namespace bmv {

GaussRule gauss_legendre(int m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "Gauss-Legendre rule needs at least one node");
  // legendre_p_zeros returns the non-negative zeros in ascending order.
  const std::vector<double> pos = boost::math::legendre_p_zeros<double>(m);
  GaussRule r;
  for (auto it = pos.rbegin(); it != pos.rend(); ++it)
    if (*it != 0.0) r.nodes.push_back(-*it);
  r.nodes.insert(r.nodes.end(), pos.begin(), pos.end());
  for (double x : r.nodes) {
    const double dp = boost::math::legendre_p_prime(m, x);
    r.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
  }
  return r;
}

GaussRule gauss_legendre(int m, double lo, double hi) {
  GaussRule r = gauss_legendre(m);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (auto& x : r.nodes) x = mid + half * x;
  for (auto& w : r.weights) w *= half;
  return r;
}

}  // namespace bmv
