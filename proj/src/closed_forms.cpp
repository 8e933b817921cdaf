// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

#include "bmv/closed_forms.hpp"

#include "bmv/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace bmv {

namespace {

void require_interior(const TwoByTwoInstance& inst, double x) {
  if (!(inst.b1 < x && x < inst.b2)) {
    std::ostringstream os;
    os << "x = " << x << " is outside the open interval (" << inst.b1 << ", " << inst.b2 << ")";
    throw Error(ErrorKind::OutOfSupport, os.str());
  }
}

}  // namespace

TwoByTwoInstance make_two_by_two(double a11, double a22, Complex a12, double b1, double b2) {
  if (!std::isfinite(a11) || !std::isfinite(a22) || !std::isfinite(std::abs(a12)) || !std::isfinite(b1) ||
      !std::isfinite(b2))
    throw Error(ErrorKind::InvalidArgument, "2x2 parameters must be finite");
  if (!(b1 < b2)) throw Error(ErrorKind::InvalidArgument, "2x2 instance needs b1 < b2");
  return {a11, a22, std::abs(a12), b1, b2};
}

HermitianPair to_pair(const TwoByTwoInstance& inst) {
  ComplexMatrix a(2, 2), b = ComplexMatrix::Zero(2, 2);
  a << inst.a11, inst.a12_abs, inst.a12_abs, inst.a22;
  b(0, 0) = inst.b1;
  b(1, 1) = inst.b2;
  return validate_pair(a, b);
}

RepresentingMeasure commuting_measure(const HermitianPair& pair) {
  if (!is_commuting(pair)) throw Error(ErrorKind::NotCommuting, "A and B do not commute");
  return atomic_measure(simultaneous_form(pair));
}

double two_by_two_prefactor(const TwoByTwoInstance& inst, double x) {
  return std::exp((inst.a11 * (inst.b2 - x) + inst.a22 * (x - inst.b1)) / (inst.b2 - inst.b1));
}

double density2(const TwoByTwoInstance& inst, double x) {
  require_interior(inst, x);
  const double a = inst.a12_abs;
  if (a == 0.0) return 0.0;
  const double width = inst.b2 - inst.b1;
  const double beta = (inst.b2 + inst.b1 - 2.0 * x) / width;
  // u = a sin θ turns the √(a² - u²) endpoint into a smooth integrand.
  const auto f = [a, beta](double th) {
    const double c = std::cos(th);
    return std::cos(beta * a * std::sin(th)) * std::sinh(a * c) * a * c;
  };
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi / 2, 15, 1e-15);
  return 4.0 / (width * std::numbers::pi) * two_by_two_prefactor(inst, x) * integral;
}

double mehta_kumar(const TwoByTwoInstance& inst, double x, double tail_tol) {
  require_interior(inst, x);
  const double a2 = inst.a12_abs * inst.a12_abs;
  if (a2 == 0.0) return 0.0;
  const double width = inst.b2 - inst.b1;
  const double q = (inst.b2 - x) * (x - inst.b1) / (width * width);
  double term = a2 / width, sum = 0.0;
  for (int j = 1; j < 10000; ++j) {
    sum += term;
    term *= a2 * q / (static_cast<double>(j) * static_cast<double>(j + 1));
    if (term < tail_tol * sum) break;
  }
  return two_by_two_prefactor(inst, x) * sum;
}

Complex lambda1_explicit(const TwoByTwoInstance& inst, Complex t) {
  const double width = inst.b2 - inst.b1;
  const double a = inst.a12_abs;
  const Complex w = (inst.a11 - inst.a22) + width * t;
  const double scale = std::abs(inst.a11 - inst.a22) + width * std::abs(t) + a;
  const bool on_segment = std::abs(w.real()) <= 1e-15 * scale && std::abs(w.imag()) <= 2.0 * a;
  if (a > 0.0 && on_segment) {
    std::ostringstream os;
    os << "t = " << t << " lies on the cut joining the branch points";
    throw Error(ErrorKind::OnBranchCut, os.str());
  }
  // w·√(1 + (2a/w)²) with the principal root has its cut exactly on the
  // segment and equals +w near infinity.
  const Complex s = a == 0.0 ? w : w * std::sqrt(1.0 + (2.0 * a / w) * (2.0 * a / w));
  return 0.5 * ((inst.a22 + inst.a11) - (inst.b2 + inst.b1) * t + s);
}

std::array<Complex, 2> branch_points(const TwoByTwoInstance& inst) {
  const double width = inst.b2 - inst.b1;
  const double re = (inst.a22 - inst.a11) / width, im = 2.0 * inst.a12_abs / width;
  return {Complex(re, im), Complex(re, -im)};
}

}  // namespace bmv
