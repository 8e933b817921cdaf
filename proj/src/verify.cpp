// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

#include "bmv/verify.hpp"

#include "bmv/charpoly.hpp"
#include "bmv/error.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace bmv {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string indexed(const std::string& base, const std::string& key, double v) {
  return base + "[" + key + "=" + fmt(v) + "]";
}

double spectral_norm(const ComplexMatrix& m) {
  const RealVector ev = eigh(m).eigenvalues;
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

bool is_psd(const ComplexMatrix& m, double tol) {
  return eigh(m).eigenvalues(0) >= -tol * std::max(1.0, max_abs(m));
}

}  // namespace

CheckEntry make_check(std::string name, double residual, double tolerance, double runtime) {
  return {std::move(name), residual, tolerance, residual <= tolerance, runtime};
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.passed; });
}

const CheckEntry* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<CheckEntry> verify_laplace(const HermitianPair& pair, const RepresentingMeasure& mu,
                                       const std::vector<double>& t_samples, double tolerance) {
  std::vector<CheckEntry> out;
  for (double t : t_samples) {
    Stopwatch sw;
    const double f = trace_exp(pair, t);
    const double resid = std::abs(laplace_transform(mu, t) - f) / f;
    out.push_back(make_check(indexed("laplace", "t", t), resid, tolerance, sw.seconds()));
  }
  return out;
}

std::vector<CheckEntry> verify_cm(const std::function<double(double)>& f, double t0, double t1, int points, int m_max,
                                  double noise) {
  if (points < 2 || !(t1 > t0) || m_max < 1 || m_max >= points)
    throw Error(ErrorKind::InvalidArgument, "complete-monotonicity grid needs t1 > t0 and 1 <= m_max < points");
  const double h = (t1 - t0) / (points - 1);
  std::vector<double> d(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) d[static_cast<std::size_t>(i)] = f(t0 + i * h);
  std::vector<CheckEntry> out;
  double bound = noise, sign = 1.0;
  for (int m = 1; m <= m_max; ++m) {
    Stopwatch sw;
    // In-place forward difference: d now holds Δ^m f on the first points - m nodes.
    for (std::size_t i = 0; i + m < static_cast<std::size_t>(points); ++i) d[i] = d[i + 1] - d[i];
    bound *= 2.0;
    sign = -sign;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + m < static_cast<std::size_t>(points); ++i) worst = std::max(worst, -sign * d[i]);
    out.push_back(make_check("cm[m=" + std::to_string(m) + "]", worst, bound, sw.seconds()));
  }
  return out;
}

std::vector<CheckEntry> verify_cm(const HermitianPair& pair, int m_max, double t0, double t1, int points) {
  const double cond = std::max(1.0, spectral_norm(pair.a) + std::max(std::abs(t0), std::abs(t1)) * spectral_norm(pair.b));
  double fmax = 0.0;
  const double h = (t1 - t0) / (points - 1);
  for (int i = 0; i < points; ++i) fmax = std::max(fmax, trace_exp(pair, t0 + i * h));
  const double noise = 16.0 * kEps * cond * fmax;
  return verify_cm([&pair](double t) { return trace_exp(pair, t); }, t0, t1, points, m_max, noise);
}

CheckEntry verify_positivity(const RepresentingMeasure& mu) {
  Stopwatch sw;
  double lowest = 0.0;
  if (!mu.density.values.empty()) lowest = *std::min_element(mu.density.values.begin(), mu.density.values.end());
  const double scale = mu.density_scale > 0.0 ? mu.density_scale : 1.0;
  return make_check("positivity", -lowest / scale, 1e-9, sw.seconds());
}

std::vector<double> lieb_seiringer_by_interpolation(const HermitianPair& pair, int m, double r) {
  if (m < 1 || !(r > 0.0)) throw Error(ErrorKind::InvalidArgument, "interpolation needs m >= 1 and r > 0");
  const std::size_t count = static_cast<std::size_t>(m) + 1;
  std::vector<Complex> samples(count);
  for (std::size_t k = 0; k < count; ++k) {
    const Complex t = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count));
    const ComplexMatrix base = pair.a + t * pair.b;
    ComplexMatrix p = base;
    for (int i = 1; i < m; ++i) p = p * base;
    samples[k] = p.trace();
  }
  std::vector<double> c(count);
  for (std::size_t j = 0; j < count; ++j) {
    Complex s = 0.0;
    for (std::size_t k = 0; k < count; ++k)
      s += samples[k] *
           std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j * k % count) / static_cast<double>(count));
    c[j] = s.real() / static_cast<double>(count) / std::pow(r, static_cast<double>(j));
  }
  return c;
}

std::vector<CheckEntry> verify_reformulation_i(const HermitianPair& pair, int m_max) {
  if (m_max < 1) throw Error(ErrorKind::InvalidArgument, "m_max must be at least 1");
  const double na = pair.a.norm(), nb = pair.b.norm();
  const double r = (na > 0.0 && nb > 0.0) ? na / nb : 1.0;
  std::vector<CheckEntry> out;
  for (int m = 1; m <= m_max; ++m) {
    Stopwatch sw;
    const std::vector<double> c = lieb_seiringer_coeffs(pair, m);
    double scale = 0.0, lowest = std::numeric_limits<double>::infinity();
    for (double v : c) {
      scale = std::max(scale, std::abs(v));
      lowest = std::min(lowest, v);
    }
    if (scale == 0.0) scale = 1.0;
    out.push_back(make_check("ls_nonneg[m=" + std::to_string(m) + "]", -lowest / scale, 1e-10, sw.seconds()));

    Stopwatch sw2;
    const std::vector<double> ci = lieb_seiringer_by_interpolation(pair, m, r);
    double worst = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j)
      worst = std::max(worst, std::abs(ci[j] - c[j]) / std::max(std::abs(c[j]), 1e-6 * scale));
    out.push_back(make_check("ls_interp[m=" + std::to_string(m) + "]", worst, 1e-8, sw2.seconds()));
  }
  return out;
}

std::vector<CheckEntry> verify_branches(const HermitianPair& pair, const CanonicalPair& cp, const BranchTrack& track,
                                        std::uint64_t seed, int samples) {
  std::vector<CheckEntry> out;
  const std::size_t nodes = track.node_count(), n = track.branch_count();
  const auto& z = track.contour.nodes;

  Stopwatch sw;
  out.push_back(make_check("branch_closure", track.closure_residual / track.value_scale, 1e-9, sw.seconds()));
  if (track.expected_winding >= 0)
    out.push_back(make_check("branch_enclosure", std::abs(track.winding - track.expected_winding), 0.0));

  Stopwatch sw_trace;
  const Complex tr_a = cp.a.trace();
  const double sum_b = cp.b.sum();
  double worst = 0.0;
  for (std::size_t k = 0; k < nodes; ++k) {
    Complex s = 0.0;
    double mag = 1.0;
    for (const auto& v : track.values[k]) {
      s += v;
      mag += std::abs(v);
    }
    worst = std::max(worst, std::abs(s - (tr_a - z[k] * sum_b)) / mag);
  }
  out.push_back(make_check("branch_trace", worst, 1e-9, sw_trace.seconds()));

  Stopwatch sw_conj;
  worst = 0.0;
  for (std::size_t k = 0; k < nodes; ++k)
    for (std::size_t j = 0; j < n; ++j)
      worst = std::max(worst, std::abs(track.values[(nodes - k) % nodes][j] - std::conj(track.values[k][j])));
  out.push_back(make_check("branch_conjugate", worst / track.value_scale, 1e-10, sw_conj.seconds()));

  Stopwatch sw_prod;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const CharPoly poly = charpoly(cp);
  const ComplexMatrix shifted_b = pair.b + cp.epsilon * ComplexMatrix::Identity(pair.dim(), pair.dim());
  const double na = spectral_norm(pair.a), bmax = cp.b.cwiseAbs().maxCoeff();
  worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Complex t = std::polar(track.contour.radius * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
    const double rho = na + std::abs(t) * bmax + 1.0;
    const Complex zeta = std::polar(rho * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
    const std::vector<Complex> lambda = roots_at(poly, t);
    Complex prod = 1.0;
    double bound = 1.0;
    for (const auto& l : lambda) {
      prod *= zeta - l;
      bound *= std::abs(zeta) + std::abs(l);
    }
    worst = std::max(worst, std::abs(prod - det_shifted(pair.a, shifted_b, zeta, t)) / bound);
  }
  out.push_back(make_check("branch_product", worst, 1e-8, sw_prod.seconds()));
  return out;
}

std::vector<CheckEntry> verify_density(const BranchTrack& track, const RepresentingMeasure& mu, std::uint64_t seed,
                                       double qtol) {
  std::vector<CheckEntry> out;
  const double scale = track.density_scale;
  const auto& g = mu.density;

  Stopwatch sw;
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    worst = std::max(worst, std::abs(g.values[i] - density_upper(track, g.points[i], qtol).value) / scale);
  out.push_back(make_check("density_equivalence", worst, 1e-9, sw.seconds()));

  Stopwatch sw_gap;
  const double spread = mu.support_hi - mu.support_lo;
  std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dULL);
  std::uniform_real_distribution<double> pick(mu.support_lo - 0.1 * spread, mu.support_hi + 0.1 * spread);
  worst = 0.0;
  for (int s = 0; s < 10; ++s) worst = std::max(worst, representation_gap(track, pick(rng)) / scale);
  out.push_back(make_check("representation_gap", worst, 1e-9, sw_gap.seconds()));

  Stopwatch sw_sup;
  worst = 0.0;
  for (double t : {mu.support_lo - 0.1 * spread, mu.support_hi + 0.1 * spread}) {
    worst = std::max(worst, std::abs(density_lower(track, t, qtol).value) / scale);
    worst = std::max(worst, std::abs(density_upper(track, t, qtol).value) / scale);
  }
  out.push_back(make_check("support", worst, 1e-10, sw_sup.seconds()));

  Stopwatch sw_im;
  worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, g.imag_residuals[i] / (1.0 + std::abs(g.values[i])));
  out.push_back(make_check("imag_residual", worst, 1e-9, sw_im.seconds()));
  return out;
}

std::string instance_digest(const HermitianPair& pair, const VerifyOptions& opts) {
  std::ostringstream os;
  os << "bmv-instance/1\n" << pair.dim() << '\n';
  for (const ComplexMatrix* m : {&pair.a, &pair.b}) {
    for (Eigen::Index i = 0; i < m->rows(); ++i)
      for (Eigen::Index j = 0; j < m->cols(); ++j) os << fmt((*m)(i, j).real()) << ',' << fmt((*m)(i, j).imag()) << ';';
    os << '\n';
  }
  const MeasureOptions& mo = opts.measure;
  os << "grid=" << mo.grid_size << " delta=" << fmt(mo.delta) << " pd_floor="
     << (mo.pd_floor ? fmt(*mo.pd_floor) : std::string("default")) << " radius_factor=" << fmt(mo.contour.radius_factor)
     << " max_doublings=" << mo.contour.max_doublings << " qtol=" << fmt(mo.qtol) << " m_max=" << opts.m_max
     << " ls_m_max=" << opts.ls_m_max << " seed=" << opts.seed << " t=";
  for (double t : opts.t_samples) os << fmt(t) << ',';
  const std::string text = os.str();

  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::InvalidArgument, "SHA-256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

VerificationReport run_verification(const HermitianPair& pair, const VerifyOptions& opts) {
  VerificationReport report;
  report.instance_digest = instance_digest(pair, opts);
  const MeasureComputation mc = compute_measure(pair, opts.measure);
  const auto append = [&report](std::vector<CheckEntry> entries) {
    for (auto& e : entries) report.checks.push_back(std::move(e));
  };

  append(verify_laplace(pair, mc.measure, opts.t_samples));
  report.checks.push_back(verify_positivity(mc.measure));
  if (mc.track) {
    append(verify_density(*mc.track, mc.measure, opts.seed, opts.measure.qtol));
    append(verify_branches(pair, mc.canonical, *mc.track, opts.seed));
  } else {
    for (const char* name : {"density_equivalence", "representation_gap", "support", "imag_residual", "branch_closure",
                             "branch_enclosure", "branch_trace", "branch_conjugate", "branch_product"})
      report.skipped.push_back({name, "commuting pair: the measure is purely atomic and no contour is traced"});
  }
  append(verify_cm(pair, opts.m_max));
  if (is_psd(pair.a, pair.herm_tol))
    append(verify_reformulation_i(pair, opts.ls_m_max));
  else
    report.skipped.push_back({"reformulation_i", "A is not positive semidefinite"});

  const auto& v = mc.measure.density.values;
  report.min_density = v.empty() ? 0.0 : *std::min_element(v.begin(), v.end());
  return report;
}

HermitianPair random_pair(int n, std::uint64_t seed, bool psd_a) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const auto ginibre = [&] {
    ComplexMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        const double re = normal(rng);
        g(i, j) = Complex(re, normal(rng));
      }
    return g;
  };
  const ComplexMatrix g = ginibre();
  const ComplexMatrix h = ginibre();
  const ComplexMatrix a = psd_a ? ComplexMatrix(g * g.adjoint() / static_cast<double>(n))
                                : ComplexMatrix((g + g.adjoint()) / 2.0);
  const ComplexMatrix b = h * h.adjoint() / static_cast<double>(n);
  return validate_pair(a, b);
}

}  // namespace bmv
