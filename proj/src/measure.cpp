// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

#include "bmv/measure.hpp"

#include "bmv/error.hpp"
#include "bmv/gauss.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace bmv {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// e^{xz} for real x.
WideComplex exp_scaled(const Wide& x, const WideComplex& z) {
  const Wide re = x * z.real();
  const Wide im = x * z.imag();
  Wide c, s;
  mpfr_sin_cos(s.backend().data(), c.backend().data(), im.backend().data(), MPFR_RNDN);
  const Wide m = exp(re);
  return WideComplex(m * c, m * s);
}

enum class Branches { Lower, Upper, All };

// Index range [lo, hi) of the branches taking part at shifted abscissa x.
std::pair<std::size_t, std::size_t> branch_range(const BranchTrack& tr, double x, Branches which) {
  const std::size_t n = tr.branch_count();
  std::size_t below = 0, above = n;
  while (below < n && tr.labels[below].b < x) ++below;
  while (above > 0 && tr.labels[above - 1].b > x) --above;
  switch (which) {
    case Branches::Lower:
      return {0, below};
    case Branches::Upper:
      return {above, n};
    case Branches::All:
      break;
  }
  return {0, n};
}

struct RawSum {
  Complex full;
  Complex half;
  bool wide = false;
};

// (1/N) Σ_k ζ_k Σ_{j∈[lo,hi)} e^{λ_j(ζ_k) + xζ_k} and the same rule on the
// even nodes. Uses double precision when its rounding error estimate is
// far below the tolerance, extended precision otherwise.
RawSum contour_sum(const BranchTrack& tr, double x, std::size_t lo, std::size_t hi, double target) {
  const std::size_t nodes = tr.node_count();
  const auto& z = tr.contour.nodes;
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < nodes; ++k)
    for (std::size_t j = lo; j < hi; ++j) m = std::max(m, (tr.values[k][j] + x * z[k]).real());

  const double inv_n = 1.0 / static_cast<double>(nodes);
  Complex full = 0.0, half = 0.0;
  double weighted = 0.0;
  for (std::size_t k = 0; k < nodes; ++k) {
    Complex s = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
      const Complex e = std::exp(tr.values[k][j] + x * z[k] - m);
      s += e;
      const double mag = std::abs(e) * std::abs(z[k]) * inv_n;
      weighted += mag * (std::abs(tr.values[k][j]) + std::abs(x * z[k]) + 4.0);
    }
    const Complex term = s * z[k] * inv_n;
    full += term;
    if (k % 2 == 0) half += 2.0 * term;
  }
  const double log_target = std::log(1e-3 * target);
  if (m + std::log(kEps * weighted) <= log_target) {
    const double scale = std::exp(m);
    return {full * scale, half * scale, false};
  }

  // Extended precision. The node roots carry relative error ~1e-(digits-12)
  // from their refinement, which bounds what the sum can resolve.
  const double wide_unit = std::pow(10.0, -static_cast<double>(kWideDigits) + 12.0);
  if (m + std::log(wide_unit * weighted) > log_target) {
    std::ostringstream os;
    os << "contour sum at t = " << x << " cancels terms of size e^" << m
       << ", beyond the working precision; the pair is too ill-conditioned for this contour";
    throw Error(ErrorKind::IllConditioned, os.str());
  }
  const std::vector<WideComplex>& c = lo == 0 ? tr.cumulative[hi] : tr.tail[lo];
  const Wide wx(x);
  WideComplex wfull(0), whalf(0);
  for (std::size_t k = 0; k <= nodes / 2; ++k) {
    const WideComplex e = exp_scaled(wx, tr.contour.wide_nodes[k]);
    const WideComplex t1 = c[k] * e;
    wfull += t1;
    if (k % 2 == 0) whalf += t1;
    if (k > 0 && k < nodes / 2) {
      const WideComplex t2 = c[nodes - k] * conj(e);
      wfull += t2;
      if (k % 2 == 0) whalf += t2;
    }
  }
  return {narrow(wfull), 2.0 * narrow(whalf), true};
}

DensityValue evaluate(const BranchTrack& tr, double t, Branches which, double qtol) {
  const double x = t + tr.epsilon;
  const auto [lo, hi] = branch_range(tr, x, which);
  DensityValue out;
  if (lo == hi) return out;
  const RawSum s = contour_sum(tr, x, lo, hi, qtol * tr.density_scale);
  const double sign = which == Branches::Upper ? -1.0 : 1.0;
  out.value = sign * s.full.real();
  out.imag_residual = std::abs(s.full.imag());
  out.error_estimate = std::abs(s.full - s.half);
  out.wide = s.wide;
  if (!(out.error_estimate <= qtol * std::max(std::abs(out.value), tr.density_scale))) {
    std::ostringstream os;
    os << "trapezoid rule with " << tr.node_count() << " nodes not converged at t = " << t
       << " (half-rule difference " << out.error_estimate << ")";
    throw Error(ErrorKind::QuadratureNotConverged, os.str());
  }
  return out;
}

void require_track(const BranchTrack& tr) {
  if (tr.node_count() == 0 || tr.cumulative.size() != tr.branch_count() + 1)
    throw Error(ErrorKind::InvalidArgument, "branch track is empty or incomplete");
}

}  // namespace

DensityValue density_lower(const BranchTrack& track, double t, double qtol) {
  require_track(track);
  return evaluate(track, t, Branches::Lower, qtol);
}

DensityValue density_upper(const BranchTrack& track, double t, double qtol) {
  require_track(track);
  return evaluate(track, t, Branches::Upper, qtol);
}

double representation_gap(const BranchTrack& track, double t) {
  require_track(track);
  const double x = t + track.epsilon;
  const RawSum s = contour_sum(track, x, 0, track.branch_count(), kDefaultQuadTol * track.density_scale);
  return std::abs(s.full);
}

RepresentingMeasure atomic_measure(const CanonicalPair& cp) {
  RepresentingMeasure mu;
  for (Eigen::Index j = 0; j < cp.dim(); ++j) mu.atoms.push_back({cp.b(j) - cp.epsilon, std::exp(cp.a(j, j).real())});
  mu.support_lo = mu.atoms.front().location;
  mu.support_hi = mu.atoms.back().location;
  mu.epsilon = cp.epsilon;
  const double spread = cp.b(cp.dim() - 1) - cp.b(0);
  mu.density_scale = trace_exp(cp, 0.0) / (spread > 0.0 ? spread : 1.0);
  return mu;
}

RepresentingMeasure assemble(const CanonicalPair& cp, const BranchTrack& track, int grid_size, double delta,
                             double qtol) {
  if (grid_size < 16) throw Error(ErrorKind::InvalidArgument, "grid size must be at least 16 per interval");
  if (!(delta > 0.0) || !(qtol > 0.0)) throw Error(ErrorKind::InvalidArgument, "delta and qtol must be positive");
  if (static_cast<Eigen::Index>(track.branch_count()) != cp.dim())
    throw Error(ErrorKind::DimensionMismatch, "branch track does not belong to this pair");

  RepresentingMeasure mu = atomic_measure(cp);
  mu.contour = ContourInfo{track.contour.radius, static_cast<int>(track.node_count())};
  mu.density_scale = track.density_scale;

  std::vector<double> breaks;
  for (Eigen::Index j = 0; j < cp.dim(); ++j)
    if (breaks.empty() || cp.b(j) > breaks.back()) breaks.push_back(cp.b(j));
  const double exclusion = delta * (breaks.back() - breaks.front());
  const GaussRule rule = gauss_legendre(grid_size);

  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double mid = 0.5 * (breaks[s] + breaks[s + 1]), half = 0.5 * (breaks[s + 1] - breaks[s]);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = mid + half * rule.nodes[i];
      if (x - breaks[s] <= exclusion || breaks[s + 1] - x <= exclusion) continue;
      const double t = x - cp.epsilon;
      const DensityValue v = density_lower(track, t, qtol);
      auto& g = mu.density;
      if (g.size() % 10 == 0) mu.crosscheck.push_back({g.size(), v.value, density_upper(track, t, qtol).value});
      g.points.push_back(t);
      g.values.push_back(v.value);
      g.imag_residuals.push_back(v.imag_residual);
      g.weights.push_back(half * rule.weights[i]);
    }
  }
  return mu;
}

double laplace_transform(const RepresentingMeasure& mu, double t) {
  double sum = 0.0;
  for (const auto& a : mu.atoms) sum += a.weight * std::exp(-t * a.location);
  const auto& g = mu.density;
  for (std::size_t i = 0; i < g.size(); ++i) sum += g.weights[i] * g.values[i] * std::exp(-t * g.points[i]);
  return sum;
}

MeasureComputation compute_measure(const HermitianPair& pair, const MeasureOptions& opts) {
  if (is_commuting(pair)) {
    CanonicalPair sf = simultaneous_form(pair);
    RepresentingMeasure mu = atomic_measure(sf);
    return {std::move(sf), std::nullopt, std::move(mu)};
  }
  CanonicalPair cp = canonicalize(pair, opts.pd_floor);
  if (cp.group_count() < 2) {
    RepresentingMeasure mu = atomic_measure(cp);
    return {std::move(cp), std::nullopt, std::move(mu)};
  }

  const Contour start = choose_radius(cp, opts.contour);
  const double spread = cp.b(cp.dim() - 1) - cp.b(0);
  // e^{xζ} on |ζ| = R needs about e·|x|·R Fourier modes; x ranges over 1.1·spread.
  const double modes = std::numbers::e * 1.1 * spread * start.radius + 64.0;
  auto nodes = static_cast<int>(start.size());
  if (modes < kMaxContourNodes) nodes = std::max(nodes, static_cast<int>(std::bit_ceil(static_cast<unsigned>(modes))));
  else nodes = kMaxContourNodes;

  for (;;) {
    try {
      BranchTrack tr = track(cp, make_circle(start.radius, nodes));
      // Probe the points with the strongest cancellation before filling the grid.
      const double lo = cp.b(0) - cp.epsilon, hi = cp.b(cp.dim() - 1) - cp.epsilon;
      density_lower(tr, hi - 1e-3 * spread, opts.qtol);
      density_upper(tr, lo + 1e-3 * spread, opts.qtol);
      density_lower(tr, hi + 0.1 * spread, opts.qtol);
      density_upper(tr, lo - 0.1 * spread, opts.qtol);
      RepresentingMeasure mu = assemble(cp, tr, opts.grid_size, opts.delta, opts.qtol);
      return {std::move(cp), std::move(tr), std::move(mu)};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::QuadratureNotConverged || nodes >= kMaxContourNodes) throw;
      nodes *= 2;
    }
  }
}

}  // namespace bmv
