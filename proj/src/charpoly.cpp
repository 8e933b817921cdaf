// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

#include "bmv/charpoly.hpp"

#include "bmv/error.hpp"
#include "bmv/polynomial.hpp"

#include <Eigen/LU>

#include <cmath>
#include <sstream>

namespace bmv {

namespace {

using TPoly = std::vector<WideComplex>;

TPoly negated(const TPoly& p) {
  TPoly r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = -p[i];
  return r;
}

// Characteristic polynomial det(λI - M) of a matrix with entries in C[t];
// returns coefficients highest λ-power first.
std::vector<TPoly> berkowitz(const std::vector<std::vector<TPoly>>& m) {
  const std::size_t n = m.size();
  std::vector<TPoly> q{TPoly{WideComplex(1)}, negated(m[n - 1][n - 1])};
  for (std::size_t r = n - 1; r-- > 0;) {
    const std::size_t s = n - r;
    std::vector<TPoly> c(s + 1);
    c[0] = TPoly{WideComplex(1)};
    c[1] = negated(m[r][r]);
    std::vector<TPoly> v(s - 1);
    for (std::size_t i = 0; i + 1 < s; ++i) v[i] = m[r + 1 + i][r];
    for (std::size_t k = 2; k <= s; ++k) {
      TPoly dot;
      for (std::size_t i = 0; i + 1 < s; ++i) dot = poly_add(dot, poly_mul(m[r][r + 1 + i], v[i]));
      c[k] = negated(dot);
      if (k < s) {
        std::vector<TPoly> w(s - 1);
        for (std::size_t i = 0; i + 1 < s; ++i)
          for (std::size_t j = 0; j + 1 < s; ++j) w[i] = poly_add(w[i], poly_mul(m[r + 1 + i][r + 1 + j], v[j]));
        v = std::move(w);
      }
    }
    std::vector<TPoly> next(s + 1);
    for (std::size_t i = 0; i <= s; ++i)
      for (std::size_t j = 0; j <= std::min(i, s - 1); ++j) next[i] = poly_add(next[i], poly_mul(c[i - j], q[j]));
    q = std::move(next);
  }
  return q;
}

CharPoly build(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto n = static_cast<std::size_t>(a.rows());
  std::vector<std::vector<TPoly>> m(n, std::vector<TPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      m[i][j] = TPoly{widen(a(ii, jj)), -widen(b(ii, jj))};
    }
  const std::vector<TPoly> q = berkowitz(m);

  std::vector<std::vector<WideComplex>> coeffs(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    TPoly pj = q[n - j];
    pj.resize(n - j + 1, WideComplex(0));
    coeffs[j] = std::move(pj);
  }
  CharPoly cp(static_cast<int>(n), std::move(coeffs));

  // Determinant cross-check at a few fixed probes.
  const double sa = std::max(1.0, max_abs(a)), sb = std::max(1.0, max_abs(b));
  const Complex probes_t[] = {{0.37, 0.61}, {-1.3, 0.2}, {0.9, -2.1}};
  const Complex probes_l[] = {{0.5, -0.25}, {-0.8, 1.1}, {1.7, 0.3}};
  for (int k = 0; k < 3; ++k) {
    const Complex t = probes_t[k];
    const Complex lambda = probes_l[k] * (sa + std::abs(t) * sb);
    const Complex direct = det_shifted(a, b, lambda, t);
    const Complex viapoly = cp.evaluate(lambda, t);
    double bound = 1.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      bound *= std::abs(lambda) + (a.row(i) - t * b.row(i)).cwiseAbs().sum();
    const double resid = std::abs(direct - viapoly) / bound;
    if (!(resid <= 1e-8)) {
      std::ostringstream os;
      os << "characteristic polynomial disagrees with the determinant, relative residual " << resid;
      throw Error(ErrorKind::IllConditioned, os.str());
    }
  }
  return cp;
}

}  // namespace

CharPoly::CharPoly(int n, std::vector<std::vector<WideComplex>> coeffs) : n_(n), coeffs_(std::move(coeffs)) {}

std::vector<Complex> CharPoly::p_double(int j) const {
  std::vector<Complex> out;
  for (const auto& c : p(j)) out.push_back(narrow(c));
  return out;
}

std::vector<WideComplex> CharPoly::lambda_coeffs(const WideComplex& t) const {
  std::vector<WideComplex> c(coeffs_.size());
  for (std::size_t j = 0; j < coeffs_.size(); ++j) c[j] = horner(coeffs_[j], t);
  return c;
}

std::vector<Complex> CharPoly::lambda_coeffs(Complex t) const {
  const std::vector<WideComplex> w = lambda_coeffs(widen(t));
  std::vector<Complex> c(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) c[j] = narrow(w[j]);
  return c;
}

WideComplex CharPoly::evaluate(const WideComplex& lambda, const WideComplex& t) const {
  return horner(lambda_coeffs(t), lambda);
}

Complex CharPoly::evaluate(Complex lambda, Complex t) const { return narrow(evaluate(widen(lambda), widen(t))); }

CharPoly charpoly(const CanonicalPair& cp) {
  return build(cp.a, ComplexMatrix(cp.b.cast<Complex>().asDiagonal()));
}

CharPoly charpoly(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() || a.rows() == 0)
    throw Error(ErrorKind::DimensionMismatch, "charpoly needs two square matrices of equal size");
  return build(a, b);
}

Complex det_shifted(const ComplexMatrix& a, const ComplexMatrix& b, Complex lambda, Complex t) {
  const ComplexMatrix m = lambda * ComplexMatrix::Identity(a.rows(), a.cols()) - (a - t * b);
  return m.partialPivLu().determinant();
}

}  // namespace bmv
