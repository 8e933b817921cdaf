// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bmv {

enum class ErrorKind {
  DimensionMismatch,
  NotHermitian,
  NotPSD,
  NoConvergence,
  HypothesisViolated,
  IllConditioned,
  RadiusOverflow,
  TrackingAmbiguous,
  QuadratureNotConverged,
  NotCommuting,
  OutOfSupport,
  OnBranchCut,
  ParseError,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::RadiusOverflow: return "RadiusOverflow";
    case ErrorKind::TrackingAmbiguous: return "TrackingAmbiguous";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::OutOfSupport: return "OutOfSupport";
    case ErrorKind::OnBranchCut: return "OnBranchCut";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the named kinds above;
/// what() is prefixed with the kind name so the CLI can surface it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bmv
