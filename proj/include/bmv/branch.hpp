// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

// The n branches λ_j of det(λI - (Ã - t diag(b̃))) = 0 followed around a
// circle |t| = R that encloses every point where two branches meet. Branch j
// is the one behaving like ã_jj - b̃_j t for large |t|.

#pragma once

#include "bmv/charpoly.hpp"
#include "bmv/hermitian.hpp"
#include "bmv/wide.hpp"

#include <functional>
#include <vector>

namespace bmv {

inline constexpr int kMaxTrackingNodes = 1 << 20;

struct ContourOptions {
  /// First tested radius is radius_factor times radius_seed(cp).
  double radius_factor = 1.1;
  int max_doublings = 20;
};

/// Circle centred at the origin, nodes R·e^{2πik/N} with N a power of two
/// (N ≥ 64). Node N-k is the exact conjugate of node k.
struct Contour {
  double radius = 0.0;
  std::vector<Complex> nodes;
  std::vector<WideComplex> wide_nodes;

  std::size_t size() const { return nodes.size(); }
};

Contour make_circle(double radius, int n_nodes);

struct BranchLabel {
  double a;  // ã_jj
  double b;  // b̃_j
};

/// Double-precision result of following all roots once around a contour.
struct LoopTrace {
  std::vector<std::vector<Complex>> values;  // [node][branch], branch in label order
  double closure_residual = 0.0;
  double value_scale = 1.0;  // max(1, max |λ|)
  /// Winding number of Π_{i<j}(λ_i - λ_j)² along the loop.
  int winding = 0;
  /// Its t-degree, 2·#{i<j : b̃_i ≠ b̃_j}; -1 when undetermined (coincident labels).
  int expected_winding = -1;
  /// Smallest second-best / best distance ratio of the asymptotic labelling at t = R.
  double label_margin = 0.0;
  int max_depth = 0;  // deepest bisection needed between adjacent nodes

  bool closes() const { return closure_residual <= 1e-9 * value_scale; }
  bool labels_unambiguous() const { return label_margin >= 2.0; }
  bool encloses_branch_points() const { return expected_winding < 0 || winding == expected_winding; }
};

struct BranchTrack {
  Contour contour;
  std::vector<std::vector<Complex>> values;           // [node][branch]
  std::vector<std::vector<WideComplex>> wide_values;  // same, extended precision
  std::vector<BranchLabel> labels;
  double closure_residual = 0.0;
  double value_scale = 1.0;
  int winding = 0;
  int expected_winding = -1;
  double label_margin = 0.0;
  /// Shift added to every b̃_j during canonicalization.
  double epsilon = 0.0;
  /// Tr e^Ã / (b̃_n - b̃_1): natural magnitude of the density.
  double density_scale = 1.0;
  /// cumulative[m][k] = (ζ_k / N) Σ_{j<m} e^{λ_j(ζ_k)}, m = 0..n.
  std::vector<std::vector<WideComplex>> cumulative;
  /// tail[m][k] = (ζ_k / N) Σ_{j≥m} e^{λ_j(ζ_k)}, m = 0..n.
  std::vector<std::vector<WideComplex>> tail;

  std::size_t branch_count() const { return labels.size(); }
  std::size_t node_count() const { return contour.size(); }
};

/// Roots of λ ↦ det(λI - (Ã - t diag(b̃))), polished in extended precision.
std::vector<Complex> roots_at(const CharPoly& poly, Complex t);
std::vector<Complex> roots_at(const CanonicalPair& cp, Complex t);

/// max over pairs in different groups of (|ã_ii - ã_jj| + 2|ã_ij|) / |b̃_i - b̃_j|;
/// exact branch-point modulus bound when n = 2.
double radius_seed(const CanonicalPair& cp);

/// 2·#{i<j : b̃_i ≠ b̃_j}, or -1 if two branches share the same label.
int expected_discriminant_degree(const CanonicalPair& cp);

LoopTrace trace_loop(const CanonicalPair& cp, const CharPoly& poly, const Contour& contour);

/// Follows the roots along t(s), s ∈ [0, 1], sampled at `steps` equal
/// increments with bisection as needed; returns roots at each sample.
std::vector<std::vector<Complex>> follow_path(const CharPoly& poly, const std::function<Complex(double)>& path,
                                              int steps, std::vector<Complex> start);

Contour choose_radius(const CanonicalPair& cp, const ContourOptions& opts = {});

BranchTrack track(const CanonicalPair& cp, const Contour& contour);

}  // namespace bmv
