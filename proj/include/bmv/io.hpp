// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

// File formats and the command implementations behind the bmv tool.
//
// Instance file (JSON):
//   {"n": 2, "A": [[[re, im], ...], ...], "B": [...], "name": "...", "seed": 42}
// measure.json: atoms, support, epsilon, contour, density_scale.
// density.csv:  t,w,imag_residual   (shortest round-trip decimals)
// report.json:  digest, config, every check, skipped checks.

#pragma once

#include "bmv/closed_forms.hpp"
#include "bmv/hermitian.hpp"
#include "bmv/measure.hpp"
#include "bmv/verify.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace bmv {

struct InstanceFile {
  ComplexMatrix a;
  ComplexMatrix b;
  std::optional<std::string> name;
  std::optional<std::uint64_t> seed;

  Eigen::Index n() const { return a.rows(); }
};

/// Throws ParseError naming the offending location, e.g. "A[1][0]".
InstanceFile parse_instance(const std::string& text);
std::string format_instance(const InstanceFile& inst);

InstanceFile read_instance(const std::filesystem::path& path);
/// parse_instance followed by validate_pair.
HermitianPair load_pair(const std::filesystem::path& path, double herm_tol = kDefaultHermTol);

struct RunConfig {
  int grid = 64;
  double delta = 1e-6;
  std::optional<double> pd_floor;
  double radius_factor = 1.1;
  int max_doublings = 20;
  double qtol = kDefaultQuadTol;
  std::vector<double> t_samples{0.0, 0.5, 1.0, 2.0, 5.0};
  int m_max = 8;
  int ls_m_max = 13;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument for non-positive tolerances or sizes.
  void validate() const;
  MeasureOptions measure_options() const;
  VerifyOptions verify_options() const;
};

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

std::string format_measure_json(const RepresentingMeasure& mu);
/// Atoms, support, epsilon, contour and density_scale; the density grid lives in the CSV.
RepresentingMeasure parse_measure_json(const std::string& text);

std::string format_density_csv(const DensityGrid& grid);
/// Points, values and imaginary residuals (quadrature weights are not stored).
DensityGrid parse_density_csv(const std::string& text);

/// Runtimes are included only when requested, so that the default report
/// is byte-identical across runs.
std::string format_report_json(const VerificationReport& report, const RunConfig& config,
                               bool include_timings = false);

struct ClosedFormRow {
  double x = 0.0;
  double w_integral = 0.0;
  double w_series = 0.0;
  double w_contour = 0.0;
  double max_pair_diff = 0.0;
};

/// Chebyshev points of the first kind in (b1, b2), ascending; the middle one
/// is snapped to the exact midpoint when `points` is odd.
std::vector<double> interior_points(double b1, double b2, int points);

std::vector<ClosedFormRow> closed_form2_table(const TwoByTwoInstance& inst, const std::vector<double>& xs,
                                              const RunConfig& config);
std::string format_closed_form2_csv(const std::vector<ClosedFormRow>& rows);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// Writes measure.json and density.csv into out_dir.
MeasureComputation cmd_measure(const std::filesystem::path& instance, const RunConfig& config,
                               const std::filesystem::path& out_dir);
/// Writes report.json into out_dir; returns the report (exit status 0 iff all_passed()).
VerificationReport cmd_verify(const std::filesystem::path& instance, const RunConfig& config,
                              const std::filesystem::path& out_dir, bool include_timings = false);
std::vector<ClosedFormRow> cmd_closed_form2(const TwoByTwoInstance& inst, int points, const RunConfig& config,
                                            const std::filesystem::path& out_csv);
/// Throws InvalidArgument for n < 2.
InstanceFile cmd_random(int n, std::uint64_t seed, const std::filesystem::path& out_path);

}  // namespace bmv
