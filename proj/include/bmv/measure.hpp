// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

// The representing measure of t ↦ Tr e^{A-tB}: atoms e^{ã_jj} at b̃_j plus a
// density on [b̃_1, b̃_n] obtained from contour integrals of the eigenvalue
// branches,
//   w(t) =  Σ_{b̃_j<t} (1/2πi) ∮ e^{λ_j(ζ)+tζ} dζ
//        = -Σ_{b̃_j>t} (1/2πi) ∮ e^{λ_j(ζ)+tζ} dζ.
// All t arguments below are in the coordinates of the input pair; the
// canonical shift ε is added internally.

#pragma once

#include "bmv/branch.hpp"
#include "bmv/hermitian.hpp"

#include <optional>
#include <vector>

namespace bmv {

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr int kMaxContourNodes = 1 << 16;

struct DensityValue {
  double value = 0.0;
  double imag_residual = 0.0;
  /// |I_N - I_{N/2}| of the trapezoid rule on all vs even nodes.
  double error_estimate = 0.0;
  /// True when the sum needed extended precision.
  bool wide = false;
};

/// Throws QuadratureNotConverged when the half-rule difference exceeds
/// qtol·max(|w|, density_scale), IllConditioned when the working precision
/// cannot resolve the cancellation between contour nodes.
DensityValue density_lower(const BranchTrack& track, double t, double qtol = kDefaultQuadTol);
DensityValue density_upper(const BranchTrack& track, double t, double qtol = kDefaultQuadTol);

/// |Σ_{all j} (1/2πi) ∮ e^{λ_j(ζ)+tζ} dζ|, zero in exact arithmetic.
double representation_gap(const BranchTrack& track, double t);

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

struct DensityGrid {
  std::vector<double> points;
  std::vector<double> values;
  std::vector<double> imag_residuals;
  /// Gauss-Legendre weights belonging to each point.
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

struct CrossCheck {
  std::size_t index = 0;  // into the density grid
  double lower = 0.0;
  double upper = 0.0;
};

struct ContourInfo {
  double radius = 0.0;
  int nodes = 0;
};

struct RepresentingMeasure {
  std::vector<Atom> atoms;
  DensityGrid density;
  double support_lo = 0.0;
  double support_hi = 0.0;
  double epsilon = 0.0;
  std::optional<ContourInfo> contour;  // empty for the commuting case
  double density_scale = 0.0;
  std::vector<CrossCheck> crosscheck;
};

/// Atoms plus grid_size Gauss-Legendre points in each interval between
/// consecutive distinct b̃, skipping points within delta·(b̃_n - b̃_1) of an atom.
RepresentingMeasure assemble(const CanonicalPair& cp, const BranchTrack& track, int grid_size = 64,
                             double delta = 1e-6, double qtol = kDefaultQuadTol);

/// Atoms only, from a simultaneous diagonalization.
RepresentingMeasure atomic_measure(const CanonicalPair& cp);

double laplace_transform(const RepresentingMeasure& mu, double t);

struct MeasureOptions {
  int grid_size = 64;
  double delta = 1e-6;
  std::optional<double> pd_floor;
  ContourOptions contour;
  double qtol = kDefaultQuadTol;
};

struct MeasureComputation {
  CanonicalPair canonical;
  std::optional<BranchTrack> track;  // empty for commuting pairs
  RepresentingMeasure measure;
};

/// Canonicalizes, picks and refines the contour, and assembles the measure.
/// Commuting pairs take the atoms-only path.
MeasureComputation compute_measure(const HermitianPair& pair, const MeasureOptions& opts = {});

}  // namespace bmv
