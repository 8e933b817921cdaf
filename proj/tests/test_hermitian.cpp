// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "bmv/error.hpp"
#include "bmv/hermitian.hpp"
#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

using namespace bmv;
using test_support::rel;

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ComplexMatrix diag(std::initializer_list<double> v) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("validate_pair_examples") {
  const ComplexMatrix x = mat2(0, 1, 1, 0);
  const HermitianPair p = validate_pair(x, diag({1, 2}));
  CHECK(p.dim() == 2);
  CHECK(p.symmetrization_adjustment == 0.0);

  CHECK(kind_of([&] { validate_pair(x, diag({-1, 1})); }) == ErrorKind::NotPSD);
  CHECK(kind_of([&] { validate_pair(mat2(0, 1, 2, 0), diag({1, 2})); }) == ErrorKind::NotHermitian);
  CHECK(kind_of([&] { validate_pair(x, diag({1, 2, 3})); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([&] { validate_pair(ComplexMatrix::Zero(2, 3), diag({1, 2})); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("validate_pair_symmetrizes_small_asymmetry") {
  ComplexMatrix a = mat2(0, Complex(1, 0.5), Complex(1 + 1e-12, -0.5), 0);
  const HermitianPair p = validate_pair(a, diag({1, 2}));
  CHECK(p.a(0, 1) == std::conj(p.a(1, 0)));
  CHECK(p.symmetrization_adjustment == Catch::Approx(5e-13).epsilon(1e-3));
}

TEST_CASE("eigh_diagonal_and_pauli") {
  const SpectralDecomposition d = eigh(diag({3, 1, 2}));
  CHECK(d.eigenvalues(0) == 1.0);
  CHECK(d.eigenvalues(1) == 2.0);
  CHECK(d.eigenvalues(2) == 3.0);
  // Permutation eigenvectors: each column is a unit basis vector.
  for (int j = 0; j < 3; ++j) CHECK(d.eigenvectors.col(j).cwiseAbs().maxCoeff() == Catch::Approx(1.0));
  CHECK(std::abs(d.eigenvectors(1, 0)) == Catch::Approx(1.0));
  CHECK(std::abs(d.eigenvectors(0, 2)) == Catch::Approx(1.0));

  const SpectralDecomposition x = eigh(mat2(0, 1, 1, 0));
  CHECK(x.eigenvalues(0) == Catch::Approx(-1.0).margin(1e-15));
  CHECK(x.eigenvalues(1) == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("eigh_random_reconstruction") {
  std::mt19937 rng(11);
  for (int n : {1, 2, 4, 7, 12}) {
    const ComplexMatrix m = test_support::hermitian(n, rng);
    const SpectralDecomposition d = eigh(m);
    const ComplexMatrix& u = d.eigenvectors;
    const ComplexMatrix recon = u * d.eigenvalues.cast<Complex>().asDiagonal() * u.adjoint();
    CHECK(max_abs(recon - m) <= 1e-12 * std::max(1.0, max_abs(m)));
    CHECK(max_abs(u.adjoint() * u - ComplexMatrix::Identity(n, n)) <= 1e-13);
    for (int i = 1; i < n; ++i) CHECK(d.eigenvalues(i - 1) <= d.eigenvalues(i));
    // Independent oracle for the spectrum.
    const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(m).eigenvalues();
    CHECK((ref - d.eigenvalues).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, max_abs(m)));
    // Phase convention: first entry above 1e-10 is real positive.
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        if (std::abs(u(i, j)) > 1e-10) {
          CHECK(u(i, j).imag() == 0.0);
          CHECK(u(i, j).real() > 0.0);
          break;
        }
      }
    }
  }
}

TEST_CASE("canonicalize_already_canonical") {
  const ComplexMatrix a = mat2(0.3, Complex(1, 2), Complex(1, -2), -0.7);
  const CanonicalPair cp = canonicalize(validate_pair(a, diag({1, 2})));
  CHECK(cp.epsilon == 0.0);
  CHECK(cp.b(0) == Catch::Approx(1.0));
  CHECK(cp.b(1) == Catch::Approx(2.0));
  CHECK(max_abs(cp.t0 - ComplexMatrix::Identity(2, 2)) <= 1e-14);
  CHECK(max_abs(cp.a - a) <= 1e-14);
  CHECK(cp.group_count() == 2);
}

TEST_CASE("canonicalize_sorts") {
  const ComplexMatrix a = mat2(0.3, Complex(1, 2), Complex(1, -2), -0.7);
  const CanonicalPair cp = canonicalize(validate_pair(a, diag({2, 1})));
  CHECK(cp.b(0) == Catch::Approx(1.0));
  CHECK(cp.b(1) == Catch::Approx(2.0));
  CHECK(cp.a(0, 0).real() == Catch::Approx(-0.7));
  CHECK(cp.a(1, 1).real() == Catch::Approx(0.3));
  CHECK(std::abs(cp.a(0, 1)) == Catch::Approx(std::sqrt(5.0)));
}

TEST_CASE("canonicalize_degenerate_block") {
  const ComplexMatrix a = mat2(0, 1, 1, 0);
  const CanonicalPair cp = canonicalize(validate_pair(a, diag({1, 1})));
  CHECK(cp.epsilon == 0.0);
  CHECK(cp.group_count() == 1);
  const Eigen::VectorXd ref = eigh(a).eigenvalues;
  CHECK(cp.a(0, 0).real() == Catch::Approx(ref(0)));
  CHECK(cp.a(1, 1).real() == Catch::Approx(ref(1)));
  CHECK(std::abs(cp.a(0, 1)) <= 1e-14);
}

TEST_CASE("canonicalize_shift_for_singular_b") {
  const ComplexMatrix a = mat2(0, 1, 1, 0);
  const HermitianPair p = validate_pair(a, diag({0, 1}));
  const CanonicalPair cp = canonicalize(p);
  const double floor = default_pd_floor(p);
  CHECK(floor == 1e-8);
  CHECK(cp.epsilon == Catch::Approx(2 * floor));
  CHECK(cp.b(0) > 0.0);
  for (double t : {0.0, 0.5, 3.0}) CHECK(rel(trace_exp(p, t), trace_exp(cp, t) * std::exp(cp.epsilon * t)) <= 1e-10);
}

TEST_CASE("canonicalize_random_invariants") {
  std::mt19937 rng(5);
  for (int n : {2, 3, 5, 8}) {
    // Force a degenerate pair of eigenvalues in B to exercise grouping.
    const ComplexMatrix u = test_support::unitary(n, rng);
    Eigen::VectorXd bvals(n);
    for (int i = 0; i < n; ++i) bvals(i) = 0.5 + i;
    bvals(1) = bvals(0);
    const ComplexMatrix b = u * bvals.cast<Complex>().asDiagonal() * u.adjoint();
    const ComplexMatrix a = test_support::hermitian(n, rng);
    const HermitianPair p = validate_pair(a, b);
    const CanonicalPair cp = canonicalize(p);

    CHECK(max_abs(cp.t0.adjoint() * cp.t0 - ComplexMatrix::Identity(n, n)) <= 1e-12);
    const ComplexMatrix d = cp.t0.adjoint() * p.b * cp.t0 + cp.epsilon * ComplexMatrix::Identity(n, n);
    CHECK(max_abs(d - ComplexMatrix(cp.b.cast<Complex>().asDiagonal())) <= 1e-12 * max_abs(b));
    for (int i = 1; i < n; ++i) CHECK(cp.b(i - 1) <= cp.b(i));
    CHECK(cp.b(0) == cp.b(1));
    CHECK(std::abs(cp.a(0, 1)) <= 1e-12);
    CHECK(max_abs(cp.a - cp.a.adjoint()) == 0.0);
    CHECK(std::abs(cp.a.trace() - p.a.trace()) <= 1e-12 * std::max(1.0, std::abs(p.a.trace())));
    const Eigen::VectorXd ea = eigh(p.a).eigenvalues, eb = eigh(cp.a).eigenvalues;
    CHECK((ea - eb).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("trace_exp_examples") {
  const HermitianPair scalar = validate_pair(ComplexMatrix::Zero(3, 3), diag({1, 1, 1}));
  for (double t : {-1.0, 0.0, 0.7, 4.0}) CHECK(rel(trace_exp(scalar, t), 3 * std::exp(-t)) <= 1e-14);

  const HermitianPair two = validate_pair(mat2(0, 1, 1, 0), diag({0, 1}));
  const double t = 1.0;
  const double l1 = (-t + std::sqrt(t * t + 4)) / 2, l2 = (-t - std::sqrt(t * t + 4)) / 2;
  CHECK(rel(trace_exp(two, t), std::exp(l1) + std::exp(l2)) <= 1e-14);
  CHECK(trace_exp(two, t) == Catch::Approx(2.0537).epsilon(1e-4));

  const HermitianPair d = validate_pair(diag({0.5, -1, 2}), diag({1, 3, 0.25}));
  for (double s : {0.0, 1.5})
    CHECK(rel(trace_exp(d, s), std::exp(0.5 - s) + std::exp(-1 - 3 * s) + std::exp(2 - 0.25 * s)) <= 1e-14);
}

TEST_CASE("trace_exp_decreasing_for_positive_definite_b") {
  std::mt19937 rng(9);
  const HermitianPair p = validate_pair(test_support::hermitian(4, rng),
                                        test_support::psd(4, rng) + 0.1 * ComplexMatrix::Identity(4, 4));
  double prev = trace_exp(p, -2.0);
  for (int i = 1; i <= 80; ++i) {
    const double cur = trace_exp(p, -2.0 + 0.1 * i);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("is_commuting_examples") {
  CHECK(is_commuting(validate_pair(diag({1, 2}), diag({3, 4}))));
  CHECK_FALSE(is_commuting(validate_pair(mat2(0, 1, 1, 0), diag({1, 2}))));
  std::mt19937 rng(2);
  const ComplexMatrix m = test_support::psd(3, rng);
  CHECK(is_commuting(validate_pair(m, m)));
}

TEST_CASE("lieb_seiringer_small_cases") {
  const int n = 3;
  const HermitianPair id = validate_pair(diag({1, 1, 1}), diag({1, 1, 1}));
  const std::vector<double> c2 = lieb_seiringer_coeffs(id, 2);
  REQUIRE(c2.size() == 3);
  CHECK(c2[0] == Catch::Approx(n));
  CHECK(c2[1] == Catch::Approx(2 * n));
  CHECK(c2[2] == Catch::Approx(n));

  std::mt19937 rng(4);
  const HermitianPair p = validate_pair(test_support::psd(3, rng), test_support::psd(3, rng));
  const std::vector<double> c1 = lieb_seiringer_coeffs(p, 1);
  CHECK(c1[0] == Catch::Approx(p.a.trace().real()));
  CHECK(c1[1] == Catch::Approx(p.b.trace().real()));

  CHECK(kind_of([&] { lieb_seiringer_coeffs(validate_pair(diag({-1, 1}), diag({1, 1})), 2); }) ==
        ErrorKind::HypothesisViolated);
}

TEST_CASE("lieb_seiringer_matches_interpolation") {
  // Oracle: fit the degree-m polynomial t ↦ Tr(A+tB)^m through m+1 real
  // samples by a long double Vandermonde solve.
  std::mt19937 rng(21);
  const HermitianPair p = validate_pair(test_support::psd(3, rng), test_support::psd(3, rng));
  const int m = 6;
  const std::vector<double> c = lieb_seiringer_coeffs(p, m);
  REQUIRE(c.size() == m + 1);
  using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using LVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  LMat v(m + 1, m + 1);
  LVec y(m + 1);
  for (int i = 0; i <= m; ++i) {
    const double t = -1.0 + 2.0 * i / m;
    ComplexMatrix pw = ComplexMatrix::Identity(3, 3);
    for (int k = 0; k < m; ++k) pw = pw * (p.a + t * p.b);
    y(i) = pw.trace().real();
    for (int j = 0; j <= m; ++j) v(i, j) = std::pow(static_cast<long double>(t), j);
  }
  const LVec sol = v.fullPivLu().solve(y);
  double scale = 0.0;
  for (double x : c) scale = std::max(scale, std::abs(x));
  for (int j = 0; j <= m; ++j) {
    CHECK(c[static_cast<std::size_t>(j)] >= -1e-10 * scale);
    CHECK(std::abs(c[static_cast<std::size_t>(j)] - static_cast<double>(sol(j))) <= 1e-8 * scale);
  }
}
