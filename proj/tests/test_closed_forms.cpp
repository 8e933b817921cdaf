// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "bmv/closed_forms.hpp"
#include "bmv/error.hpp"
#include "support.hpp"

#include <functional>
#include <numbers>
#include <random>

using namespace bmv;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::InvalidArgument;
}

std::vector<TwoByTwoInstance> random_instances(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ua(-1.5, 1.5), uc(0.05, 2.0), ub(0.0, 2.0), ud(0.2, 2.0);
  std::vector<TwoByTwoInstance> out;
  for (int i = 0; i < count; ++i) {
    const double b1 = ub(rng);
    out.push_back(make_two_by_two(ua(rng), ua(rng), std::polar(uc(rng), ua(rng)), b1, b1 + ud(rng)));
  }
  return out;
}

}  // namespace

TEST_CASE("make_two_by_two_validates") {
  const TwoByTwoInstance inst = make_two_by_two(0.5, -0.5, Complex(0.0, -2.0), 1.0, 3.0);
  CHECK(inst.a12_abs == 2.0);
  CHECK(kind_of([] { make_two_by_two(0, 0, 1.0, 2.0, 2.0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { make_two_by_two(0, 0, 1.0, 3.0, 2.0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { make_two_by_two(std::nan(""), 0, 1.0, 0.0, 2.0); }) == ErrorKind::InvalidArgument);
  const HermitianPair p = to_pair(inst);
  CHECK(p.a(0, 1) == Complex(2.0, 0.0));
  CHECK(p.b(1, 1) == Complex(3.0, 0.0));
}

TEST_CASE("commuting_measure_of_diagonal_pair") {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2), b = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = -2.0;
  b(0, 0) = 2.0;
  b(1, 1) = 0.5;
  const RepresentingMeasure mu = commuting_measure(validate_pair(a, b));
  REQUIRE(mu.atoms.size() == 2);
  CHECK(mu.atoms[0].location == Catch::Approx(0.5).margin(1e-15));
  CHECK(mu.atoms[0].weight == Catch::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(mu.atoms[1].location == Catch::Approx(2.0).margin(1e-15));
  CHECK(mu.atoms[1].weight == Catch::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(mu.density.size() == 0);
}

TEST_CASE("commuting_measure_of_equal_rank_one_matrices") {
  // A = B = [[1,1],[1,1]]: eigenvalues 0 and 2, so f(t) = 1 + e^{2-2t}.
  ComplexMatrix m(2, 2);
  m << 1, 1, 1, 1;
  const HermitianPair p = validate_pair(m, m);
  const RepresentingMeasure mu = commuting_measure(p);
  REQUIRE(mu.atoms.size() == 2);
  CHECK(std::abs(mu.atoms[0].location) <= 1e-12);
  CHECK(std::abs(mu.atoms[0].weight - 1.0) <= 1e-12);
  CHECK(std::abs(mu.atoms[1].location - 2.0) <= 1e-12);
  CHECK(std::abs(mu.atoms[1].weight - std::exp(2.0)) <= 1e-12 * std::exp(2.0));
  for (double t : {0.0, 0.7, 3.0}) CHECK(test_support::rel(laplace_transform(mu, t), 1.0 + std::exp(2.0 - 2.0 * t)) <= 1e-13);
}

TEST_CASE("commuting_measure_rejects_noncommuting") {
  ComplexMatrix a(2, 2);
  a << 0, 1, 1, 0;
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(1, 1) = 1.0;
  CHECK(kind_of([&] { commuting_measure(validate_pair(a, b)); }) == ErrorKind::NotCommuting);
}

TEST_CASE("density2_reference_values") {
  const TwoByTwoInstance pauli{0, 0, 1, 0, 1};
  CHECK(std::abs(density2(pauli, 0.5) - test_support::bessel_series(0.25)) <= 1e-13);
  // No coupling, no density.
  const TwoByTwoInstance decoupled{0.3, -0.2, 0, 0, 1};
  CHECK(density2(decoupled, 0.4) == 0.0);
  // Equal diagonals: symmetric about the midpoint.
  const TwoByTwoInstance sym{0.7, 0.7, 1.3, -1.0, 2.0};
  for (double x : {-0.9, -0.2, 0.3}) CHECK(std::abs(density2(sym, x) - density2(sym, 1.0 - x)) <= 1e-14 * density2(sym, x));
  CHECK(kind_of([&] { density2(pauli, 0.0); }) == ErrorKind::OutOfSupport);
  CHECK(kind_of([&] { density2(pauli, 1.2); }) == ErrorKind::OutOfSupport);
  CHECK(kind_of([&] { mehta_kumar(pauli, -0.1); }) == ErrorKind::OutOfSupport);
}

TEST_CASE("density2_matches_series") {
  for (const auto& inst : random_instances(10, 41)) {
    for (int i = 0; i < 20; ++i) {
      const double c = std::cos(std::numbers::pi * (2 * i + 1) / 40.0);
      const double x = 0.5 * (inst.b1 + inst.b2) + 0.5 * (inst.b2 - inst.b1) * c;
      const double v = density2(inst, x);
      CHECK(std::abs(v - mehta_kumar(inst, x)) <= 1e-10 * (1.0 + v));
    }
  }
}

TEST_CASE("density2_integrates_to_trace_identity") {
  // Total mass: f(0) = Tr e^A = e^{a11} + e^{a22} + ∫ w.
  const TwoByTwoInstance inst{0.2, -0.4, 0.9, 0.5, 1.5};
  const HermitianPair p = to_pair(inst);
  const auto rule = [&] {
    std::vector<double> xs;
    for (int i = 0; i < 400; ++i) xs.push_back(inst.b1 + (inst.b2 - inst.b1) * (i + 0.5) / 400.0);
    return xs;
  }();
  double mass = 0.0;
  for (double x : rule) mass += density2(inst, x) * (inst.b2 - inst.b1) / 400.0;
  const double atoms = std::exp(inst.a11) + std::exp(inst.a22);
  CHECK(std::abs(atoms + mass - trace_exp(p, 0.0)) <= 1e-5 * trace_exp(p, 0.0));
}

TEST_CASE("lambda1_explicit_solves_characteristic_equation") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (const auto& inst : random_instances(5, 43)) {
    for (int k = 0; k < 20; ++k) {
      const Complex t(u(rng), u(rng));
      const Complex l1 = lambda1_explicit(inst, t);
      const Complex d1 = inst.a11 - inst.b1 * t, d2 = inst.a22 - inst.b2 * t;
      const Complex l2 = d1 + d2 - l1;
      const double a2 = inst.a12_abs * inst.a12_abs;
      const Complex residual = (l1 - d1) * (l1 - d2) - a2;
      CHECK(std::abs(residual) <= 1e-12 * (1.0 + std::norm(l1) + a2));
      CHECK(std::abs(l1 * l2 - (d1 * d2 - a2)) <= 1e-12 * (1.0 + std::norm(l1) + std::norm(l2)));
    }
    // λ₁ ~ a11 - b1 t far out.
    const Complex far(1e6, 3e5);
    CHECK(std::abs(lambda1_explicit(inst, far) - (inst.a11 - inst.b1 * far)) <= 1e-4);
  }
}

TEST_CASE("branch_points_zero_the_discriminant") {
  for (const auto& inst : random_instances(5, 44)) {
    for (const Complex z : branch_points(inst)) {
      const Complex d = (inst.a11 - inst.a22) + (inst.b2 - inst.b1) * z;
      CHECK(std::abs(d * d + 4.0 * inst.a12_abs * inst.a12_abs) <= 1e-12 * (1.0 + std::norm(d)));
    }
    const auto bp = branch_points(inst);
    CHECK(bp[0] == std::conj(bp[1]));
  }
}

TEST_CASE("lambda1_explicit_refuses_the_cut") {
  const TwoByTwoInstance inst{0, 0, 1, 1, 2};
  CHECK(kind_of([&] { lambda1_explicit(inst, Complex(0.0, 1.0)); }) == ErrorKind::OnBranchCut);
  CHECK_NOTHROW(lambda1_explicit(inst, Complex(0.0, 2.5)));
  CHECK_NOTHROW(lambda1_explicit(inst, Complex(0.3, 1.0)));
}

TEST_CASE("contour_density_matches_closed_form") {
  for (const auto& inst : random_instances(4, 45)) {
    const MeasureComputation mc = compute_measure(to_pair(inst));
    REQUIRE(mc.track);
    for (int i = 1; i < 10; ++i) {
      const double x = inst.b1 + (inst.b2 - inst.b1) * i / 10.0;
      const double v = density2(inst, x);
      CHECK(std::abs(density_lower(*mc.track, x).value - v) <= 1e-8 * (1.0 + v));
    }
  }
}
