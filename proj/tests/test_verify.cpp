// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "bmv/closed_forms.hpp"
#include "bmv/error.hpp"
#include "bmv/verify.hpp"
#include "support.hpp"

#include <algorithm>
#include <limits>

using namespace bmv;

namespace {

bool all_pass(const std::vector<CheckEntry>& v) {
  return std::all_of(v.begin(), v.end(), [](const CheckEntry& c) { return c.passed; });
}

// Coefficients of Tr(A + tB)^m by expanding every word in A and B.
std::vector<double> brute_force_coeffs(const HermitianPair& p, int m) {
  std::vector<double> c(static_cast<std::size_t>(m) + 1, 0.0);
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    ComplexMatrix prod = ComplexMatrix::Identity(p.a.rows(), p.a.cols());
    int k = 0;
    for (int i = 0; i < m; ++i) {
      const bool use_b = (mask >> i) & 1u;
      prod = prod * (use_b ? p.b : p.a);
      k += use_b;
    }
    c[static_cast<std::size_t>(k)] += prod.trace().real();
  }
  return c;
}

}  // namespace

TEST_CASE("make_check_handles_nan") {
  CHECK(make_check("x", 0.5, 1.0).passed);
  CHECK_FALSE(make_check("x", 1.5, 1.0).passed);
  CHECK_FALSE(make_check("x", std::numeric_limits<double>::quiet_NaN(), 1.0).passed);
}

TEST_CASE("cm_accepts_completely_monotone_functions") {
  const auto e = verify_cm([](double t) { return std::exp(-t); }, 0.0, 5.0, 64, 10, 1e-16);
  REQUIRE(e.size() == 10);
  CHECK(all_pass(e));
  CHECK(e[0].name == "cm[m=1]");
  const auto mix = verify_cm([](double t) { return 2.0 * std::exp(-3.0 * t) + 1.0 / (1.0 + t); }, 0.0, 4.0, 64, 8, 4e-16);
  CHECK(all_pass(mix));
}

TEST_CASE("cm_rejects_damped_oscillation") {
  const auto e = verify_cm([](double t) { return std::exp(-t) * std::cos(t); }, 0.0, 3.0, 64, 4, 1e-16);
  const bool some_failure = std::any_of(e.begin(), e.end(), [](const CheckEntry& c) { return !c.passed; });
  CHECK(some_failure);
  CHECK_FALSE(e[0].passed);  // e^{-t}cos t stops decreasing at t = 3π/4
}

TEST_CASE("cm_of_random_pairs") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const HermitianPair p = random_pair(3, seed);
    const auto e = verify_cm(p, 8);
    REQUIRE(e.size() == 8);
    CHECK(all_pass(e));
  }
}

TEST_CASE("laplace_checks_for_commuting_and_two_by_two") {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2), b = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 0.4;
  a(1, 1) = 1.1;
  b(0, 0) = 0.3;
  b(1, 1) = 2.0;
  const HermitianPair comm = validate_pair(a, b);
  for (const auto& c : verify_laplace(comm, commuting_measure(comm), {0.0, 1.0, 3.0})) CHECK(c.residual <= 1e-12);

  const TwoByTwoInstance inst{0.2, -0.3, 0.8, 0.5, 1.7};
  const HermitianPair p = to_pair(inst);
  const auto entries = verify_laplace(p, compute_measure(p).measure, {0.0, 0.5, 1.0, 2.0, 5.0});
  REQUIRE(entries.size() == 5);
  for (const auto& c : entries) {
    CHECK(c.residual <= 1e-8);
    CHECK(c.tolerance == 1e-6);
  }
  CHECK(entries[1].name == "laplace[t=0.5]");
}

TEST_CASE("lieb_seiringer_interpolation_matches_word_expansion") {
  const HermitianPair p = random_pair(3, 5, true);
  for (int m : {1, 2, 5, 8}) {
    const auto ref = brute_force_coeffs(p, m);
    const auto interp = lieb_seiringer_by_interpolation(p, m, 1.0);
    const auto direct = lieb_seiringer_coeffs(p, m);
    REQUIRE(interp.size() == ref.size());
    REQUIRE(direct.size() == ref.size());
    const double scale = *std::max_element(ref.begin(), ref.end());
    for (std::size_t j = 0; j < ref.size(); ++j) {
      CHECK(std::abs(interp[j] - ref[j]) <= 1e-11 * scale);
      CHECK(std::abs(direct[j] - ref[j]) <= 1e-11 * scale);
    }
  }
}

TEST_CASE("reformulation_on_psd_pairs") {
  for (std::uint64_t seed = 10; seed < 13; ++seed) {
    const auto e = verify_reformulation_i(random_pair(3, seed, true), 13);
    CHECK(e.size() == 26);
    CHECK(all_pass(e));
  }
}

TEST_CASE("reformulation_requires_psd_a") {
  ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  a(1, 1) = -1.0;
  try {
    verify_reformulation_i(validate_pair(a, ComplexMatrix::Identity(2, 2)), 4);
    FAIL("expected HypothesisViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::HypothesisViolated);
  }
}

TEST_CASE("positivity_check_uses_density_scale") {
  RepresentingMeasure mu;
  mu.density_scale = 2.0;
  mu.density.values = {1.0, -1e-10, 0.5};
  CHECK(verify_positivity(mu).passed);
  mu.density.values[1] = -1e-6;
  CHECK_FALSE(verify_positivity(mu).passed);
}

TEST_CASE("run_verification_passes_on_random_pairs") {
  for (int n : {2, 3}) {
    VerifyOptions opts;
    opts.seed = 7;
    const HermitianPair p = random_pair(n, 100 + n, true);
    const VerificationReport r = run_verification(p, opts);
    for (const auto& c : r.checks) {
      INFO(c.name << " residual " << c.residual << " tol " << c.tolerance);
      CHECK(c.passed);
    }
    CHECK(r.all_passed());
    CHECK(r.skipped.empty());
    CHECK(r.find("branch_closure") != nullptr);
    CHECK(r.find("density_equivalence") != nullptr);
    CHECK(r.find("ls_interp[m=13]") != nullptr);
    CHECK(r.find("no_such_check") == nullptr);
  }
}

TEST_CASE("run_verification_records_skipped_checks") {
  // A is indefinite and the pair commutes.
  ComplexMatrix a = ComplexMatrix::Zero(2, 2), b = ComplexMatrix::Zero(2, 2);
  a(0, 0) = -1.0;
  a(1, 1) = 0.5;
  b(0, 0) = 1.0;
  b(1, 1) = 2.0;
  const VerificationReport r = run_verification(validate_pair(a, b));
  CHECK(r.all_passed());
  const auto skipped = [&](const std::string& name) {
    return std::any_of(r.skipped.begin(), r.skipped.end(), [&](const SkippedCheck& s) { return s.name == name; });
  };
  CHECK(skipped("reformulation_i"));
  CHECK(skipped("branch_closure"));
  CHECK(skipped("density_equivalence"));
  CHECK(r.find("laplace[t=0]") != nullptr);
}

TEST_CASE("instance_digest_is_deterministic") {
  const HermitianPair p = random_pair(3, 9);
  VerifyOptions opts;
  const std::string d = instance_digest(p, opts);
  CHECK(d.size() == 64);
  CHECK(d == instance_digest(p, opts));
  opts.seed = 1;
  CHECK(d != instance_digest(p, opts));
  CHECK(d != instance_digest(random_pair(3, 10), VerifyOptions{}));
}

TEST_CASE("random_pair_is_deterministic_and_valid") {
  const HermitianPair p = random_pair(4, 123), q = random_pair(4, 123);
  CHECK(p.a == q.a);
  CHECK(p.b == q.b);
  CHECK(random_pair(4, 124).a != p.a);
  CHECK(eigh(p.b).eigenvalues.minCoeff() >= -1e-12);
  CHECK(eigh(random_pair(4, 5, true).a).eigenvalues.minCoeff() >= -1e-12);
  CHECK((p.a - p.a.adjoint()).norm() == 0.0);
}
