// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

#include "bmv/branch.hpp"

#include "bmv/assignment.hpp"
#include "bmv/error.hpp"
#include "bmv/polynomial.hpp"

#include <boost/math/constants/constants.hpp>

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace bmv {

namespace {

double min_gap(const std::vector<Complex>& z) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) g = std::min(g, std::abs(z[i] - z[j]));
  return g;
}

double coincidence_tol(const CanonicalPair& cp) {
  double s = 1.0;
  for (Eigen::Index j = 0; j < cp.dim(); ++j) s = std::max(s, std::abs(cp.a(j, j).real()));
  return 1e-12 * s;
}

bool same_label(const CanonicalPair& cp, Eigen::Index i, Eigen::Index j, double tol) {
  return cp.group[static_cast<std::size_t>(i)] == cp.group[static_cast<std::size_t>(j)] &&
         std::abs(cp.a(i, i).real() - cp.a(j, j).real()) <= tol;
}

// Continuation of the full root set between two parameter values of a path,
// bisecting whenever a root would move by more than half the smallest gap.
class Follower {
 public:
  Follower(const CharPoly& poly, int max_depth) : max_depth_(max_depth) {
    for (int j = 0; j <= poly.degree(); ++j) coeffs_.push_back(poly.p_double(j));
  }

  double phase() const { return phase_; }
  int deepest() const { return deepest_; }

  void advance(std::vector<Complex>& cur, double s0, double s1, Complex z1,
               const std::function<Complex(double)>& pos, int depth) {
    std::vector<Complex> next = cur;
    const AberthResult res = aberth(coeffs_at(z1), next, 1e-13, 80);
    const double gap = min_gap(cur);
    bool ok = std::isfinite(res.last_correction) && (res.converged || res.last_correction <= 1e-3 * gap);
    std::vector<Complex> ordered(cur.size());
    if (ok) {
      CostMatrix cost(cur.size(), std::vector<double>(cur.size()));
      for (std::size_t i = 0; i < cur.size(); ++i)
        for (std::size_t j = 0; j < cur.size(); ++j) cost[i][j] = std::abs(cur[i] - next[j]);
      const std::vector<int> perm = assign_min_cost(cost);
      double move = 0.0;
      for (std::size_t i = 0; i < cur.size(); ++i) {
        ordered[i] = next[static_cast<std::size_t>(perm[i])];
        move = std::max(move, std::abs(ordered[i] - cur[i]));
      }
      ok = move <= 0.5 * gap;
    }
    if (!ok) {
      if (depth >= max_depth_) {
        std::ostringstream os;
        os << "root continuation failed near t = " << z1 << " (gap " << gap << ") at the maximal node density";
        throw Error(ErrorKind::TrackingAmbiguous, os.str());
      }
      const double smid = 0.5 * (s0 + s1);
      advance(cur, s0, smid, pos(smid), pos, depth + 1);
      advance(cur, smid, s1, z1, pos, depth + 1);
      return;
    }
    deepest_ = std::max(deepest_, depth);
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j)
        phase_ += 2.0 * std::arg((ordered[i] - ordered[j]) / (cur[i] - cur[j]));
    cur = std::move(ordered);
  }

 private:
  std::vector<Complex> coeffs_at(Complex t) const {
    std::vector<Complex> c(coeffs_.size());
    for (std::size_t j = 0; j < coeffs_.size(); ++j) c[j] = horner(coeffs_[j], t);
    return c;
  }

  std::vector<std::vector<Complex>> coeffs_;
  int max_depth_;
  double phase_ = 0.0;
  int deepest_ = 0;
};

int depth_budget(std::size_t nodes) {
  const int have = std::bit_width(nodes) - 1;
  const int cap = std::bit_width(static_cast<unsigned>(kMaxTrackingNodes)) - 1;
  return std::max(0, cap - have);
}

int initial_node_count(const CanonicalPair& cp) {
  return static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::max<Eigen::Index>(1, 64 * cp.dim()))));
}

}  // namespace

Contour make_circle(double radius, int n_nodes) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw Error(ErrorKind::InvalidArgument, "contour radius must be positive and finite");
  if (n_nodes < 64 || !std::has_single_bit(static_cast<unsigned>(n_nodes)))
    throw Error(ErrorKind::InvalidArgument, "contour node count must be a power of two >= 64");
  const auto n = static_cast<std::size_t>(n_nodes);
  Contour c;
  c.radius = radius;
  c.nodes.resize(n);
  c.wide_nodes.resize(n);
  const Wide r(radius);
  const Wide two_pi = 2 * boost::math::constants::pi<Wide>();
  for (std::size_t k = 0; k <= n / 2; ++k) {
    WideComplex w;
    if (k == 0) {
      w = WideComplex(r, Wide(0));
    } else if (k == n / 4) {
      w = WideComplex(Wide(0), r);
    } else if (k == n / 2) {
      w = WideComplex(-r, Wide(0));
    } else {
      const Wide th = two_pi * Wide(static_cast<double>(k)) / Wide(static_cast<double>(n));
      w = WideComplex(r * cos(th), r * sin(th));
    }
    c.wide_nodes[k] = w;
    c.nodes[k] = narrow(w);
    if (k > 0 && k < n / 2) {
      c.wide_nodes[n - k] = conj(w);
      c.nodes[n - k] = std::conj(c.nodes[k]);
    }
  }
  return c;
}

std::vector<Complex> roots_at(const CharPoly& poly, Complex t) {
  const std::vector<Complex> c = poly.lambda_coeffs(t);
  std::vector<Complex> z = aberth_initial_guesses(c);
  const AberthResult res = aberth(c, z, 1e-14, 500);
  double ref = 1.0;
  for (const auto& zi : z) ref = std::max(ref, std::abs(zi));
  if (!std::isfinite(res.last_correction) || (!res.converged && res.last_correction > 1e-6 * ref)) {
    std::ostringstream os;
    os << "root iteration did not converge at t = " << t;
    throw Error(ErrorKind::NoConvergence, os.str());
  }
  const std::vector<WideComplex> wc = poly.lambda_coeffs(widen(t));
  std::vector<WideComplex> wz;
  for (const auto& zi : z) wz.push_back(widen(zi));
  aberth(wc, wz, 1e-30, 50);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = narrow(wz[i]);
  return z;
}

std::vector<Complex> roots_at(const CanonicalPair& cp, Complex t) { return roots_at(charpoly(cp), t); }

double radius_seed(const CanonicalPair& cp) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < cp.dim(); ++i)
    for (Eigen::Index j = i + 1; j < cp.dim(); ++j) {
      if (cp.group[static_cast<std::size_t>(i)] == cp.group[static_cast<std::size_t>(j)]) continue;
      const double num = std::abs(cp.a(i, i).real() - cp.a(j, j).real()) + 2.0 * std::abs(cp.a(i, j));
      s = std::max(s, num / std::abs(cp.b(j) - cp.b(i)));
    }
  return s > 0.0 ? s : 1.0;
}

int expected_discriminant_degree(const CanonicalPair& cp) {
  const double tol = coincidence_tol(cp);
  int deg = 0;
  for (Eigen::Index i = 0; i < cp.dim(); ++i)
    for (Eigen::Index j = i + 1; j < cp.dim(); ++j) {
      if (cp.group[static_cast<std::size_t>(i)] != cp.group[static_cast<std::size_t>(j)])
        deg += 2;
      else if (same_label(cp, i, j, tol))
        return -1;
    }
  return deg;
}

LoopTrace trace_loop(const CanonicalPair& cp, const CharPoly& poly, const Contour& contour) {
  const auto n = static_cast<std::size_t>(cp.dim());
  const std::size_t nodes = contour.size();
  const double radius = contour.radius;

  // Asymptotic labelling at t = R.
  const std::vector<Complex> start = roots_at(poly, contour.nodes[0]);
  CostMatrix cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      cost[i][j] = std::abs(start[i] - (cp.a(jj, jj).real() - cp.b(jj) * radius));
    }
  const std::vector<int> label_of = assign_min_cost(cost);
  const double tol = coincidence_tol(cp);

  LoopTrace out;
  out.label_margin = std::numeric_limits<double>::infinity();
  std::vector<Complex> ordered(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto li = static_cast<std::size_t>(label_of[i]);
    ordered[li] = start[i];
    const double best = cost[i][li];
    double second = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == li || same_label(cp, static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(li), tol)) continue;
      second = std::min(second, cost[i][j]);
    }
    const double ratio = best > 0.0 ? second / best : std::numeric_limits<double>::infinity();
    out.label_margin = std::min(out.label_margin, ratio);
  }

  Follower follower(poly, depth_budget(nodes));
  const auto pos = [radius](double s) {
    const double th = 2.0 * std::numbers::pi * s;
    return Complex(radius * std::cos(th), radius * std::sin(th));
  };
  out.values.resize(nodes);
  out.values[0] = ordered;
  std::vector<Complex> cur = ordered;
  const double dn = static_cast<double>(nodes);
  for (std::size_t k = 1; k <= nodes; ++k) {
    const Complex z = contour.nodes[k % nodes];
    follower.advance(cur, static_cast<double>(k - 1) / dn, static_cast<double>(k) / dn, z, pos, 0);
    if (k < nodes) out.values[k] = cur;
  }

  for (std::size_t j = 0; j < n; ++j) out.closure_residual = std::max(out.closure_residual, std::abs(cur[j] - ordered[j]));
  for (const auto& row : out.values)
    for (const auto& v : row) out.value_scale = std::max(out.value_scale, std::abs(v));
  out.winding = static_cast<int>(std::lround(follower.phase() / (2.0 * std::numbers::pi)));
  out.expected_winding = expected_discriminant_degree(cp);
  out.max_depth = follower.deepest();
  return out;
}

std::vector<std::vector<Complex>> follow_path(const CharPoly& poly, const std::function<Complex(double)>& path,
                                              int steps, std::vector<Complex> start) {
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "follow_path needs at least one step");
  Follower follower(poly, depth_budget(static_cast<std::size_t>(steps)));
  std::vector<std::vector<Complex>> out{start};
  for (int k = 1; k <= steps; ++k) {
    const double s0 = static_cast<double>(k - 1) / steps, s1 = static_cast<double>(k) / steps;
    follower.advance(start, s0, s1, path(s1), path, 0);
    out.push_back(start);
  }
  return out;
}

Contour choose_radius(const CanonicalPair& cp, const ContourOptions& opts) {
  if (cp.group_count() < 2)
    throw Error(ErrorKind::InvalidArgument, "choose_radius needs at least two distinct b values");
  if (!(opts.radius_factor > 0.0) || opts.max_doublings < 0)
    throw Error(ErrorKind::InvalidArgument, "radius factor must be positive and max doublings non-negative");
  const CharPoly poly = charpoly(cp);
  const double r0 = opts.radius_factor * radius_seed(cp);
  const int nodes = initial_node_count(cp);
  double last_margin = 0.0;
  for (int k = 0; k <= opts.max_doublings; ++k) {
    const double r = std::ldexp(r0, k);
    Contour contour = make_circle(r, nodes);
    try {
      const LoopTrace lt = trace_loop(cp, poly, contour);
      last_margin = lt.label_margin;
      if (lt.closes() && lt.labels_unambiguous() && lt.encloses_branch_points()) return contour;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TrackingAmbiguous) throw;
    }
  }
  std::ostringstream os;
  os << "no radius up to " << std::ldexp(r0, opts.max_doublings) << " certified branch-point enclosure"
     << " (last label margin " << last_margin << "); either two asymptotic labels (ã_jj, b̃_j) nearly coincide,"
     << " which is harmless for the density, or the pair is too ill-conditioned to separate them";
  throw Error(ErrorKind::RadiusOverflow, os.str());
}

BranchTrack track(const CanonicalPair& cp, const Contour& contour) {
  const CharPoly poly = charpoly(cp);
  const LoopTrace lt = trace_loop(cp, poly, contour);
  if (!lt.closes()) {
    std::ostringstream os;
    os << "branches do not return to their start around |t| = " << contour.radius << " (residual "
       << lt.closure_residual << "); the circle does not enclose every branch point";
    throw Error(ErrorKind::TrackingAmbiguous, os.str());
  }
  const auto n = static_cast<std::size_t>(cp.dim());
  const std::size_t nodes = contour.size();

  BranchTrack tr;
  tr.contour = contour;
  tr.values = lt.values;
  tr.closure_residual = lt.closure_residual;
  tr.value_scale = lt.value_scale;
  tr.winding = lt.winding;
  tr.expected_winding = lt.expected_winding;
  tr.label_margin = lt.label_margin;
  tr.epsilon = cp.epsilon;
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    tr.labels.push_back({cp.a(jj, jj).real(), cp.b(jj)});
  }
  const double spread = cp.b(cp.dim() - 1) - cp.b(0);
  tr.density_scale = trace_exp(cp, 0.0) / (spread > 0.0 ? spread : 1.0);

  const double wide_tol = std::pow(10.0, -static_cast<double>(kWideDigits) + 12.0);
  tr.wide_values.resize(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    const std::vector<WideComplex> wc = poly.lambda_coeffs(contour.wide_nodes[k]);
    std::vector<WideComplex> wz;
    wz.reserve(n);
    for (const auto& v : lt.values[k]) wz.push_back(widen(v));
    const AberthResult res = aberth(wc, wz, wide_tol, 100);
    if (!res.converged) {
      std::ostringstream os;
      os << "extended-precision refinement did not converge at node " << k;
      throw Error(ErrorKind::NoConvergence, os.str());
    }
    const double gap = min_gap(lt.values[k]);
    for (std::size_t j = 0; j < n; ++j) {
      const Complex refined = narrow(wz[j]);
      if (std::abs(refined - lt.values[k][j]) > 0.25 * gap) {
        std::ostringstream os;
        os << "refined root " << j << " at node " << k << " left its branch";
        throw Error(ErrorKind::TrackingAmbiguous, os.str());
      }
      tr.values[k][j] = refined;
    }
    tr.wide_values[k] = std::move(wz);
  }

  const Wide inv_nodes = Wide(1) / Wide(static_cast<double>(nodes));
  tr.cumulative.assign(n + 1, std::vector<WideComplex>(nodes, WideComplex(0)));
  tr.tail = tr.cumulative;
  for (std::size_t k = 0; k < nodes; ++k) {
    const WideComplex w = contour.wide_nodes[k] * inv_nodes;
    std::vector<WideComplex> e(n);
    for (std::size_t j = 0; j < n; ++j) e[j] = exp(tr.wide_values[k][j]) * w;
    for (std::size_t j = 0; j < n; ++j) tr.cumulative[j + 1][k] = tr.cumulative[j][k] + e[j];
    for (std::size_t j = n; j-- > 0;) tr.tail[j][k] = tr.tail[j + 1][k] + e[j];
  }
  return tr;
}

}  // namespace bmv
