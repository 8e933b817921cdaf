// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

// Numerical evidence that the computed measure represents f(t) = Tr e^{A-tB}:
// every check is a residual compared against a fixed tolerance.

#pragma once

#include "bmv/hermitian.hpp"
#include "bmv/measure.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace bmv {

struct CheckEntry {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double runtime = 0.0;  // seconds
};

/// passed is set to residual <= tolerance (false for NaN residuals).
CheckEntry make_check(std::string name, double residual, double tolerance, double runtime = 0.0);

struct SkippedCheck {
  std::string name;
  std::string reason;
};

struct VerificationReport {
  std::vector<CheckEntry> checks;
  std::vector<SkippedCheck> skipped;
  std::string instance_digest;
  /// Smallest density value on the grid; strict positivity is logged, not asserted.
  double min_density = 0.0;

  bool all_passed() const;
  const CheckEntry* find(const std::string& name) const;
};

/// One entry per t: |∫e^{-ts}dμ - f(t)| / f(t) against 1e-6.
std::vector<CheckEntry> verify_laplace(const HermitianPair& pair, const RepresentingMeasure& mu,
                                       const std::vector<double>& t_samples, double tolerance = 1e-6);

/// Finite-difference complete monotonicity. On the uniform grid
/// t_i = t0 + i·h, i < points, the check for order m is
///   (-1)^m Δ^m f(t_i) >= -2^m · noise   for every admissible i,
/// where noise bounds the absolute error of a single f sample. The entry's
/// residual is max_i -(-1)^m Δ^m f(t_i).
std::vector<CheckEntry> verify_cm(const std::function<double(double)>& f, double t0, double t1, int points, int m_max,
                                  double noise);

/// Same for f = trace_exp(pair, ·) on 64 points over [0, 5], with the sample
/// noise 16·eps·max(1, ‖A‖₂ + 5‖B‖₂)·max f.
std::vector<CheckEntry> verify_cm(const HermitianPair& pair, int m_max, double t0 = 0.0, double t1 = 5.0,
                                  int points = 64);

/// min density >= -1e-9 · density_scale, residual = -min density.
CheckEntry verify_positivity(const RepresentingMeasure& mu);

/// For m = 1..m_max: every coefficient of Tr(A+tB)^m >= -1e-10·max|c|, and the
/// coefficients agree to 1e-8 with those recovered by a discrete Fourier
/// transform of t ↦ Tr(A+tB)^m on a circle. Throws HypothesisViolated if A is
/// not positive semidefinite.
std::vector<CheckEntry> verify_reformulation_i(const HermitianPair& pair, int m_max);

/// Coefficients of Tr(A+tB)^m from m+1 samples on |t| = r (independent of
/// the polynomial-matrix expansion).
std::vector<double> lieb_seiringer_by_interpolation(const HermitianPair& pair, int m, double r);

struct VerifyOptions {
  MeasureOptions measure;
  std::vector<double> t_samples{0.0, 0.5, 1.0, 2.0, 5.0};
  int m_max = 8;
  int ls_m_max = 13;
  std::uint64_t seed = 0;
};

/// Branch-structure invariants of a track: loop closure, the enclosure
/// certificate, Σλ_j = Tr Ã - ζ Σ b̃_j at every node, conjugate symmetry
/// λ_j(ζ̄) = conj λ_j(ζ), and Π_j(ζ - λ_j(t)) = det(ζI - (A - t(B + εI)))
/// at `samples` seeded random points.
std::vector<CheckEntry> verify_branches(const HermitianPair& pair, const CanonicalPair& cp, const BranchTrack& track,
                                        std::uint64_t seed, int samples = 20);

/// Density checks that need the track: lower/upper equivalence on the grid,
/// the all-branch gap at 10 seeded points, the support probes 10% outside
/// [b̃_1, b̃_n], and the discarded imaginary parts.
std::vector<CheckEntry> verify_density(const BranchTrack& track, const RepresentingMeasure& mu, std::uint64_t seed,
                                       double qtol = kDefaultQuadTol);

/// SHA-256 of the pair entries and every option, hex encoded.
std::string instance_digest(const HermitianPair& pair, const VerifyOptions& opts);

/// Runs compute_measure and every applicable check. Checks whose hypothesis
/// does not hold for the pair are listed in `skipped`.
VerificationReport run_verification(const HermitianPair& pair, const VerifyOptions& opts = {});

/// A = (G + G*)/2 with complex Gaussian G (E|g_ij|² = 1), B = HH*/n; with
/// psd_a, A = GG*/n instead. Deterministic in (n, seed).
HermitianPair random_pair(int n, std::uint64_t seed, bool psd_a = false);

}  // namespace bmv
