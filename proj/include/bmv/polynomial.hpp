// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

// Dense univariate polynomials (coefficient j multiplies z^j) and the
// Aberth-Ehrlich simultaneous root iteration, written once for double and
// extended-precision complex scalars.

#pragma once

#include "bmv/wide.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace bmv {

inline double magnitude(std::complex<double> z) { return std::abs(z); }
inline double magnitude(const WideComplex& z) { return static_cast<double>(abs(z)); }

template <class C>
std::vector<C> poly_add(const std::vector<C>& p, const std::vector<C>& q) {
  std::vector<C> r(std::max(p.size(), q.size()), C(0));
  for (std::size_t i = 0; i < p.size(); ++i) r[i] += p[i];
  for (std::size_t i = 0; i < q.size(); ++i) r[i] += q[i];
  return r;
}

template <class C>
std::vector<C> poly_mul(const std::vector<C>& p, const std::vector<C>& q) {
  if (p.empty() || q.empty()) return {};
  std::vector<C> r(p.size() + q.size() - 1, C(0));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

template <class C>
C horner(const std::vector<C>& c, const C& z) {
  C p(0);
  for (std::size_t j = c.size(); j-- > 0;) p = p * z + c[j];
  return p;
}

template <class C>
void horner_with_derivative(const std::vector<C>& c, const C& z, C& p, C& dp) {
  p = c.back();
  dp = C(0);
  for (std::size_t j = c.size() - 1; j-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[j];
  }
}

struct AberthResult {
  bool converged = false;
  double last_correction = 0.0;  // largest |correction| of the final sweep
  int iterations = 0;
};

/// Aberth-Ehrlich iteration on the polynomial with coefficients c (degree
/// c.size()-1 == z.size()), updating z in place (Gauss-Seidel order).
/// Converged when every correction is below tol * max(1, max|z|).
template <class C>
AberthResult aberth(const std::vector<C>& c, std::vector<C>& z, double tol, int max_iter) {
  const std::size_t n = z.size();
  double ref = 1.0;
  for (const auto& zi : z) ref = std::max(ref, magnitude(zi));
  C p, dp;
  AberthResult res;
  for (int it = 0; it < max_iter; ++it) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      horner_with_derivative(c, z[i], p, dp);
      if (magnitude(p) == 0.0) continue;
      C s(0);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s += C(1) / (z[i] - z[j]);
      C w;
      if (magnitude(dp) == 0.0) {
        w = C(ref * 1e-8);
      } else {
        const C ratio = p / dp;
        w = ratio / (C(1) - ratio * s);
      }
      z[i] -= w;
      worst = std::max(worst, magnitude(w));
    }
    res.iterations = it + 1;
    res.last_correction = worst;
    if (!std::isfinite(worst)) return res;
    if (worst <= tol * ref) {
      res.converged = true;
      return res;
    }
  }
  return res;
}

/// Distinct starting points on a circle around the root centroid, radius
/// from the Fujiwara bound of the re-centred polynomial. c must be monic.
inline std::vector<std::complex<double>> aberth_initial_guesses(const std::vector<std::complex<double>>& c) {
  using Cd = std::complex<double>;
  const std::size_t n = c.size() - 1;
  const Cd center = -c[n - 1] / static_cast<double>(n);
  // Taylor shift q(w) = p(w + center) by repeated synthetic division.
  std::vector<Cd> q = c;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = n; j-- > k;) q[j] += center * q[j + 1];
  double r = 0.0;
  for (std::size_t k = 1; k <= n; ++k) r = std::max(r, std::pow(std::abs(q[n - k]), 1.0 / static_cast<double>(k)));
  r = 2.0 * r;
  if (!(r > 0.0)) r = 1e-12 * std::max(1.0, std::abs(center));
  std::vector<Cd> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.7;
    z[k] = center + r * Cd(std::cos(ang), std::sin(ang));
  }
  return z;
}

}  // namespace bmv
