// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

// Small dense Hermitian linear algebra: validation of (A, B) pairs, a cyclic
// Jacobi eigensolver, the canonical form in which B is diagonal with
// ascending entries and A is diagonal inside every degenerate block of B,
// and direct evaluation of f(t) = Tr exp(A - tB).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

namespace bmv {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultHermTol = 1e-10;
/// Relative threshold under which adjacent eigenvalues of B are treated as one group.
inline constexpr double kGroupTol = 1e-9;
inline constexpr double kDefaultCommuteTol = 1e-12;

/// Largest entry modulus.
double max_abs(const ComplexMatrix& m);

struct HermitianPair {
  ComplexMatrix a;
  ComplexMatrix b;
  double herm_tol = kDefaultHermTol;
  /// Largest entry removed by replacing M with (M + M*)/2, over A and B.
  double symmetrization_adjustment = 0.0;

  Eigen::Index dim() const { return a.rows(); }
};

struct SpectralDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // unitary, columns match eigenvalues
  int sweeps = 0;
};

/// (Ã, b̃) with Ã = T0* A T0 and diag(b̃) = T0* B T0 + εI.
struct CanonicalPair {
  ComplexMatrix a;
  RealVector b;
  ComplexMatrix t0;
  double epsilon = 0.0;
  /// group[j] is shared by all positions whose b̃ values were merged.
  std::vector<int> group;

  Eigen::Index dim() const { return a.rows(); }
  int group_count() const { return group.empty() ? 0 : group.back() + 1; }
};

HermitianPair validate_pair(const ComplexMatrix& a, const ComplexMatrix& b,
                            double herm_tol = kDefaultHermTol);

/// Cyclic Jacobi. Throws NoConvergence after 100 sweeps.
SpectralDecomposition eigh(const ComplexMatrix& m);

/// 1e-8 * max(1, ‖B‖_max).
double default_pd_floor(const HermitianPair& pair);

CanonicalPair canonicalize(const HermitianPair& pair, std::optional<double> pd_floor = std::nullopt);

/// Same canonical form without the positive-definiteness shift.
CanonicalPair simultaneous_form(const HermitianPair& pair);

double trace_exp(const HermitianPair& pair, double t);
/// Tr exp(Ã - t diag(b̃)); equals e^{-εt} f(t).
double trace_exp(const CanonicalPair& cp, double t);

bool is_commuting(const HermitianPair& pair, double tol = kDefaultCommuteTol);

/// Coefficients c_0..c_m of t^k in Tr (A + tB)^m, by polynomial-matrix
/// products. Requires A positive semidefinite (HypothesisViolated otherwise).
std::vector<double> lieb_seiringer_coeffs(const HermitianPair& pair, int m);

}  // namespace bmv
