// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bmv/hermitian.hpp"
#include "bmv/wide.hpp"

#include <vector>

namespace bmv {

/// g(λ, t) = det(λI - (A - tB)) = Σ_j p_j(t) λ^j with deg p_j ≤ n - j and
/// p_n ≡ 1. Coefficients are held in extended precision.
class CharPoly {
 public:
  CharPoly() = default;
  CharPoly(int n, std::vector<std::vector<WideComplex>> coeffs);

  int degree() const { return n_; }

  /// Coefficients of p_j in ascending powers of t.
  const std::vector<WideComplex>& p(int j) const { return coeffs_[static_cast<std::size_t>(j)]; }
  std::vector<Complex> p_double(int j) const;

  /// λ-polynomial coefficients at a fixed t (index j multiplies λ^j).
  std::vector<WideComplex> lambda_coeffs(const WideComplex& t) const;
  std::vector<Complex> lambda_coeffs(Complex t) const;

  WideComplex evaluate(const WideComplex& lambda, const WideComplex& t) const;
  Complex evaluate(Complex lambda, Complex t) const;

 private:
  int n_ = 0;
  std::vector<std::vector<WideComplex>> coeffs_;
};

/// Division-free Berkowitz expansion over polynomials in t. Throws
/// IllConditioned if the determinant check at probe points exceeds 1e-8.
CharPoly charpoly(const CanonicalPair& cp);
CharPoly charpoly(const ComplexMatrix& a, const ComplexMatrix& b);

/// det(λI - (A - tB)) by partial-pivot LU in double; independent of CharPoly.
Complex det_shifted(const ComplexMatrix& a, const ComplexMatrix& b, Complex lambda, Complex t);

}  // namespace bmv
