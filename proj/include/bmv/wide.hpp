// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

// Extended-precision scalars for the contour sums. The trapezoidal sums on a
// circle of radius R cancel terms of size up to e^{R (b̃_n - b̃_1)}, which
// exceeds what double precision can resolve for moderately coupled pairs.

#pragma once

#include <boost/multiprecision/complex_adaptor.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <complex>

namespace bmv {

inline constexpr unsigned kWideDigits = 90;

using Wide = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<kWideDigits>,
                                           boost::multiprecision::et_off>;
using WideComplex = boost::multiprecision::number<
    boost::multiprecision::complex_adaptor<boost::multiprecision::mpfr_float_backend<kWideDigits>>,
    boost::multiprecision::et_off>;

/// Relative rounding unit of Wide.
inline double wide_epsilon() { return std::pow(10.0, -static_cast<double>(kWideDigits) + 1.0); }

inline WideComplex widen(std::complex<double> z) { return WideComplex(z.real(), z.imag()); }

inline std::complex<double> narrow(const WideComplex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace bmv
