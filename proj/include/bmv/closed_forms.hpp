// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

// Reference solutions: the atomic measure of a commuting pair and the
// explicit n = 2 density, both as a one-dimensional integral and as the
// Mehta-Kumar power series.

#pragma once

#include "bmv/hermitian.hpp"
#include "bmv/measure.hpp"

#include <array>

namespace bmv {

/// A = [[a11, a12], [conj a12, a22]], B = diag(b1, b2). Only |a12| enters.
struct TwoByTwoInstance {
  double a11 = 0.0;
  double a22 = 0.0;
  double a12_abs = 0.0;
  double b1 = 0.0;
  double b2 = 1.0;
};

/// Throws InvalidArgument unless b1 < b2 and every field is finite.
TwoByTwoInstance make_two_by_two(double a11, double a22, Complex a12, double b1, double b2);

/// The pair with a real non-negative off-diagonal entry.
HermitianPair to_pair(const TwoByTwoInstance& inst);

/// Throws NotCommuting unless is_commuting(pair).
RepresentingMeasure commuting_measure(const HermitianPair& pair);

/// exp((a11(b2-x) + a22(x-b1))/(b2-b1)), shared by both n = 2 formulas.
double two_by_two_prefactor(const TwoByTwoInstance& inst, double x);

/// 4/((b2-b1)π) · prefactor · ∫_0^{|a12|} cos(βu) sinh(√(|a12|²-u²)) du with
/// β = (b2+b1-2x)/(b2-b1). Throws OutOfSupport unless b1 < x < b2.
double density2(const TwoByTwoInstance& inst, double x);

/// Series Σ_{j≥1} |a12|^{2j}/(j!(j-1)!) · ((b2-x)(x-b1))^{j-1}/(b2-b1)^{2j-1}
/// times the prefactor, truncated once the next term drops below
/// tail_tol · partial sum. Throws OutOfSupport unless b1 < x < b2.
double mehta_kumar(const TwoByTwoInstance& inst, double x, double tail_tol = 1e-17);

/// Branch of the eigenvalue of A - tB that behaves like a11 - b1 t at
/// infinity. Throws OnBranchCut on the segment joining the branch points.
Complex lambda1_explicit(const TwoByTwoInstance& inst, Complex t);

/// (a22-a11)/(b2-b1) ± 2i|a12|/(b2-b1), the zeros of the discriminant.
std::array<Complex, 2> branch_points(const TwoByTwoInstance& inst);

}  // namespace bmv
