// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

// Instance generators and reference values shared by the tests. Kept apart
// from the library's own generator so the two can check each other.

#pragma once

#include "bmv/hermitian.hpp"

#include <Eigen/QR>

#include <cmath>
#include <random>

namespace test_support {

using bmv::Complex;
using bmv::ComplexMatrix;

inline ComplexMatrix gaussian(int n, std::mt19937& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(d(rng), d(rng));
  return g;
}

inline ComplexMatrix hermitian(int n, std::mt19937& rng) {
  const ComplexMatrix g = gaussian(n, rng);
  return (g + g.adjoint()) / 2.0;
}

inline ComplexMatrix psd(int n, std::mt19937& rng) {
  const ComplexMatrix g = gaussian(n, rng);
  return g * g.adjoint() / static_cast<double>(n);
}

inline ComplexMatrix unitary(int n, std::mt19937& rng) {
  return gaussian(n, rng).householderQr().householderQ();
}

/// Σ_{j≥1} q^{j-1}/(j!(j-1)!) summed until the terms vanish in long double.
inline double bessel_series(double q) {
  long double term = 1.0L, sum = 0.0L;
  for (int j = 1; j < 200; ++j) {
    sum += term;
    term *= q / (static_cast<long double>(j) * (j + 1));
  }
  return static_cast<double>(sum);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace test_support
