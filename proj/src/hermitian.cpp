// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

#include "bmv/hermitian.hpp"

#include "bmv/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bmv {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kJacobiTol = 1e-14;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (Eigen::Index q = 1; q < a.cols(); ++q)
    for (Eigen::Index p = 0; p < q; ++p) s += std::norm(a(p, q));
  return std::sqrt(2.0 * s);
}

// First entry of non-negligible modulus made real positive.
void fix_column_phases(ComplexMatrix& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      const double mag = std::abs(v(r, c));
      if (mag > 1e-10) {
        v.col(c) *= std::conj(v(r, c)) / mag;
        v(r, c) = mag;
        break;
      }
    }
  }
}

void require_square(const ComplexMatrix& m, const char* name) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << name << " is " << m.rows() << "x" << m.cols() << ", expected a non-empty square matrix";
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
  if (!m.allFinite()) throw Error(ErrorKind::InvalidArgument, std::string(name) + " has non-finite entries");
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

// Shared by canonicalize and simultaneous_form: diagonalize B, then A inside
// each group of (numerically) equal eigenvalues of B.
CanonicalPair block_canonical(const HermitianPair& pair) {
  const Eigen::Index n = pair.dim();
  const SpectralDecomposition bd = eigh(pair.b);
  CanonicalPair cp;
  cp.t0 = bd.eigenvectors;
  cp.b = bd.eigenvalues;
  cp.group.assign(static_cast<std::size_t>(n), 0);

  const double thr = kGroupTol * std::max(1.0, std::abs(cp.b(n - 1)));
  int g = 0;
  for (Eigen::Index j = 1; j < n; ++j) {
    if (cp.b(j) - cp.b(j - 1) > thr) ++g;
    cp.group[static_cast<std::size_t>(j)] = g;
  }

  ComplexMatrix at = cp.t0.adjoint() * pair.a * cp.t0;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && cp.group[static_cast<std::size_t>(stop)] == cp.group[static_cast<std::size_t>(start)])
      ++stop;
    const Eigen::Index m = stop - start;
    if (m > 1) {
      const SpectralDecomposition sub = eigh(hermitian_part(at.block(start, start, m, m)));
      cp.t0.middleCols(start, m) = (cp.t0.middleCols(start, m) * sub.eigenvectors).eval();
      const double mean = cp.b.segment(start, m).mean();
      cp.b.segment(start, m).setConstant(mean);
    }
    start = stop;
  }

  fix_column_phases(cp.t0);
  cp.a = hermitian_part(cp.t0.adjoint() * pair.a * cp.t0);
  for (Eigen::Index i = 0; i < n; ++i) {
    cp.a(i, i) = cp.a(i, i).real();
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j && cp.group[static_cast<std::size_t>(i)] == cp.group[static_cast<std::size_t>(j)])
        cp.a(i, j) = 0.0;
  }
  return cp;
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
  double r = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) r = std::max(r, std::abs(m(i, j)));
  return r;
}

HermitianPair validate_pair(const ComplexMatrix& a, const ComplexMatrix& b, double herm_tol) {
  require_square(a, "A");
  require_square(b, "B");
  if (a.rows() != b.rows()) {
    std::ostringstream os;
    os << "A is " << a.rows() << "x" << a.cols() << " but B is " << b.rows() << "x" << b.cols();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
  if (!(herm_tol >= 0.0)) throw Error(ErrorKind::InvalidArgument, "herm_tol must be non-negative");

  auto check = [&](const ComplexMatrix& m, const char* name) {
    const double resid = max_abs(m - m.adjoint());
    if (resid > herm_tol * std::max(1.0, max_abs(m))) {
      std::ostringstream os;
      os << name << " is not Hermitian: max |M - M*| = " << resid;
      throw Error(ErrorKind::NotHermitian, os.str());
    }
    return 0.5 * resid;
  };

  HermitianPair pair;
  pair.herm_tol = herm_tol;
  pair.symmetrization_adjustment = std::max(check(a, "A"), check(b, "B"));
  pair.a = hermitian_part(a);
  pair.b = hermitian_part(b);

  const double bmin = eigh(pair.b).eigenvalues(0);
  if (bmin < -herm_tol * std::max(1.0, max_abs(pair.b))) {
    std::ostringstream os;
    os << "B is not positive semidefinite: smallest eigenvalue " << bmin;
    throw Error(ErrorKind::NotPSD, os.str());
  }
  return pair;
}

SpectralDecomposition eigh(const ComplexMatrix& m) {
  const Eigen::Index n = m.rows();
  ComplexMatrix a = hermitian_part(m);
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double fro = a.norm();

  int sweep = 0;
  for (;; ++sweep) {
    if (off_diagonal_norm(a) <= kJacobiTol * fro) break;
    if (sweep == kMaxSweeps)
      throw Error(ErrorKind::NoConvergence, "Jacobi eigensolver exceeded 100 sweeps");
    for (Eigen::Index q = 1; q < n; ++q) {
      for (Eigen::Index p = 0; p < q; ++p) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = I except J_pp = J_qq = c, J_pq = s·phase, J_qp = -s·conj(phase).
        const Complex jpq = s * phase;
        const Complex jqp = -s * std::conj(phase);
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + jqp * akq;
          a(k, q) = jpq * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + jqp * vkq;
          v(k, q) = jpq * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });

  SpectralDecomposition out;
  out.sweeps = sweep;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
    out.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  fix_column_phases(out.eigenvectors);
  return out;
}

double default_pd_floor(const HermitianPair& pair) { return 1e-8 * std::max(1.0, max_abs(pair.b)); }

CanonicalPair simultaneous_form(const HermitianPair& pair) { return block_canonical(pair); }

CanonicalPair canonicalize(const HermitianPair& pair, std::optional<double> pd_floor) {
  CanonicalPair cp = block_canonical(pair);
  const double floor = pd_floor.value_or(default_pd_floor(pair));
  if (!(floor > 0.0)) throw Error(ErrorKind::InvalidArgument, "pd_floor must be positive");
  if (cp.b(0) <= floor) {
    cp.epsilon = 2.0 * floor - cp.b(0);
    cp.b.array() += cp.epsilon;
  }
  return cp;
}

double trace_exp(const HermitianPair& pair, double t) {
  const RealVector ev = eigh(pair.a - t * pair.b).eigenvalues;
  return ev.array().exp().sum();
}

double trace_exp(const CanonicalPair& cp, double t) {
  ComplexMatrix m = cp.a;
  for (Eigen::Index j = 0; j < m.rows(); ++j) m(j, j) -= t * cp.b(j);
  return eigh(m).eigenvalues.array().exp().sum();
}

bool is_commuting(const HermitianPair& pair, double tol) {
  const ComplexMatrix comm = pair.a * pair.b - pair.b * pair.a;
  return max_abs(comm) <= tol * std::max(1.0, max_abs(pair.a) * max_abs(pair.b));
}

std::vector<double> lieb_seiringer_coeffs(const HermitianPair& pair, int m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "power m must be at least 1");
  const double amin = eigh(pair.a).eigenvalues(0);
  if (amin < -pair.herm_tol * std::max(1.0, max_abs(pair.a))) {
    std::ostringstream os;
    os << "A must be positive semidefinite for Tr(A+tB)^m, smallest eigenvalue " << amin;
    throw Error(ErrorKind::HypothesisViolated, os.str());
  }
  // power[i] holds the t^i coefficient matrix of (A + tB)^k.
  std::vector<ComplexMatrix> power{pair.a, pair.b};
  for (int k = 2; k <= m; ++k) {
    std::vector<ComplexMatrix> next(static_cast<std::size_t>(k + 1),
                                    ComplexMatrix::Zero(pair.dim(), pair.dim()));
    for (int i = 0; i < k; ++i) {
      next[static_cast<std::size_t>(i)] += power[static_cast<std::size_t>(i)] * pair.a;
      next[static_cast<std::size_t>(i + 1)] += power[static_cast<std::size_t>(i)] * pair.b;
    }
    power = std::move(next);
  }
  std::vector<double> coeffs;
  coeffs.reserve(power.size());
  for (const auto& c : power) coeffs.push_back(c.trace().real());
  return coeffs;
}

}  // namespace bmv
