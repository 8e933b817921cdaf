// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

#include "bmv/io.hpp"

#include "bmv/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace bmv {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

double number_at(const Json& v, const std::string& where) {
  if (!v.is_number()) parse_fail(where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) parse_fail(where, "number is not finite");
  return d;
}

ComplexMatrix matrix_at(const Json& root, const char* key, std::size_t n) {
  const std::string name(key);
  if (!root.contains(key)) parse_fail(name, "missing matrix");
  const Json& rows = root.at(key);
  if (!rows.is_array() || rows.size() != n) parse_fail(name, "expected an array of " + std::to_string(n) + " rows");
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_at = name + "[" + std::to_string(i) + "]";
    const Json& row = rows[i];
    if (!row.is_array() || row.size() != n) parse_fail(row_at, "expected " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) {
      const std::string at = row_at + "[" + std::to_string(j) + "]";
      const Json& e = row[j];
      if (!e.is_array() || e.size() != 2) parse_fail(at, "expected a [re, im] pair");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          Complex(number_at(e[0], at + "[0]"), number_at(e[1], at + "[1]"));
    }
  }
  return m;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail("byte " + std::to_string(e.byte), "malformed JSON");
  }
}

Json double_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

void append_matrix(std::ostringstream& os, const ComplexMatrix& m) {
  os << "[\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << "    [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ", ";
      os << '[' << format_double(m(i, j).real()) << ", " << format_double(m(i, j).imag()) << ']';
    }
    os << (i + 1 < m.rows() ? "],\n" : "]\n");
  }
  os << "  ]";
}

double parse_field(std::string_view s, std::size_t line, const char* column) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    parse_fail("line " + std::to_string(line) + ", column " + column, "not a number: '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

InstanceFile parse_instance(const std::string& text) {
  const Json root = parse_json(text);
  if (!root.is_object()) parse_fail("instance", "expected a JSON object");
  if (!root.contains("n") || !root.at("n").is_number_integer()) parse_fail("n", "expected an integer");
  const auto n = root.at("n").get<long long>();
  if (n < 1) parse_fail("n", "must be at least 1");
  InstanceFile inst;
  inst.a = matrix_at(root, "A", static_cast<std::size_t>(n));
  inst.b = matrix_at(root, "B", static_cast<std::size_t>(n));
  if (root.contains("name")) {
    if (!root.at("name").is_string()) parse_fail("name", "expected a string");
    inst.name = root.at("name").get<std::string>();
  }
  if (root.contains("seed")) {
    if (!root.at("seed").is_number_unsigned()) parse_fail("seed", "expected a non-negative integer");
    inst.seed = root.at("seed").get<std::uint64_t>();
  }
  return inst;
}

std::string format_instance(const InstanceFile& inst) {
  std::ostringstream os;
  os << "{\n  \"n\": " << inst.n() << ",\n";
  if (inst.name) os << "  \"name\": " << Json(*inst.name).dump() << ",\n";
  if (inst.seed) os << "  \"seed\": " << *inst.seed << ",\n";
  os << "  \"A\": ";
  append_matrix(os, inst.a);
  os << ",\n  \"B\": ";
  append_matrix(os, inst.b);
  os << "\n}\n";
  return os.str();
}

InstanceFile read_instance(const std::filesystem::path& path) { return parse_instance(read_file(path)); }

HermitianPair load_pair(const std::filesystem::path& path, double herm_tol) {
  const InstanceFile inst = read_instance(path);
  return validate_pair(inst.a, inst.b, herm_tol);
}

void RunConfig::validate() const {
  const auto need = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::InvalidArgument, what);
  };
  need(grid >= 16, "--grid must be at least 16");
  need(delta > 0.0 && delta < 0.5, "--delta must lie in (0, 0.5)");
  need(!pd_floor || *pd_floor > 0.0, "--pd-floor must be positive");
  need(radius_factor > 0.0 && std::isfinite(radius_factor), "--radius-factor must be positive");
  need(max_doublings >= 0, "--max-doublings must be non-negative");
  need(qtol > 0.0 && qtol < 1.0, "--qtol must lie in (0, 1)");
  need(!t_samples.empty(), "--t-samples must not be empty");
  for (double t : t_samples) need(t >= 0.0 && std::isfinite(t), "--t-samples must be finite and non-negative");
  need(m_max >= 1 && m_max < 64, "--m-max must lie in [1, 63]");
  need(ls_m_max >= 1, "--ls-m-max must be at least 1");
}

MeasureOptions RunConfig::measure_options() const {
  MeasureOptions mo;
  mo.grid_size = grid;
  mo.delta = delta;
  mo.pd_floor = pd_floor;
  mo.contour.radius_factor = radius_factor;
  mo.contour.max_doublings = max_doublings;
  mo.qtol = qtol;
  return mo;
}

VerifyOptions RunConfig::verify_options() const {
  VerifyOptions vo;
  vo.measure = measure_options();
  vo.t_samples = t_samples;
  vo.m_max = m_max;
  vo.ls_m_max = ls_m_max;
  vo.seed = seed;
  return vo;
}

std::string format_measure_json(const RepresentingMeasure& mu) {
  Json j;
  j["atoms"] = Json::array();
  for (const auto& a : mu.atoms) j["atoms"].push_back({{"location", a.location}, {"weight", a.weight}});
  j["support"] = {mu.support_lo, mu.support_hi};
  j["epsilon"] = mu.epsilon;
  if (mu.contour)
    j["contour"] = {{"radius", mu.contour->radius}, {"nodes", mu.contour->nodes}};
  else
    j["contour"] = nullptr;
  j["density_scale"] = mu.density_scale;
  j["density_points"] = mu.density.size();
  return j.dump(2) + "\n";
}

RepresentingMeasure parse_measure_json(const std::string& text) {
  const Json j = parse_json(text);
  RepresentingMeasure mu;
  if (!j.is_object() || !j.contains("atoms") || !j.at("atoms").is_array()) parse_fail("atoms", "expected an array");
  for (std::size_t i = 0; i < j.at("atoms").size(); ++i) {
    const Json& a = j.at("atoms")[i];
    const std::string at = "atoms[" + std::to_string(i) + "]";
    if (!a.is_object() || !a.contains("location") || !a.contains("weight"))
      parse_fail(at, "expected {location, weight}");
    mu.atoms.push_back({number_at(a.at("location"), at + ".location"), number_at(a.at("weight"), at + ".weight")});
  }
  if (!j.contains("support") || !j.at("support").is_array() || j.at("support").size() != 2)
    parse_fail("support", "expected [lo, hi]");
  mu.support_lo = number_at(j.at("support")[0], "support[0]");
  mu.support_hi = number_at(j.at("support")[1], "support[1]");
  if (!j.contains("epsilon")) parse_fail("epsilon", "missing");
  mu.epsilon = number_at(j.at("epsilon"), "epsilon");
  if (j.contains("contour") && !j.at("contour").is_null()) {
    const Json& c = j.at("contour");
    if (!c.is_object() || !c.contains("radius") || !c.contains("nodes") || !c.at("nodes").is_number_integer())
      parse_fail("contour", "expected {radius, nodes}");
    mu.contour = ContourInfo{number_at(c.at("radius"), "contour.radius"), c.at("nodes").get<int>()};
  }
  if (!j.contains("density_scale")) parse_fail("density_scale", "missing");
  mu.density_scale = number_at(j.at("density_scale"), "density_scale");
  return mu;
}

std::string format_density_csv(const DensityGrid& grid) {
  std::string out = "t,w,imag_residual\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    out += format_double(grid.points[i]) + ',' + format_double(grid.values[i]) + ',' +
           format_double(grid.imag_residuals[i]) + '\n';
  return out;
}

DensityGrid parse_density_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "t,w,imag_residual") parse_fail("line 1", "expected header t,w,imag_residual");
  DensityGrid g;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos)
      parse_fail("line " + std::to_string(lineno), "expected three fields");
    const std::string_view sv(line);
    g.points.push_back(parse_field(sv.substr(0, c1), lineno, "t"));
    g.values.push_back(parse_field(sv.substr(c1 + 1, c2 - c1 - 1), lineno, "w"));
    g.imag_residuals.push_back(parse_field(sv.substr(c2 + 1), lineno, "imag_residual"));
  }
  return g;
}

std::string format_report_json(const VerificationReport& report, const RunConfig& config, bool include_timings) {
  Json j;
  j["instance_digest"] = report.instance_digest;
  j["all_passed"] = report.all_passed();
  Json cfg;
  cfg["grid"] = config.grid;
  cfg["delta"] = config.delta;
  cfg["pd_floor"] = config.pd_floor ? Json(*config.pd_floor) : Json(nullptr);
  cfg["radius_factor"] = config.radius_factor;
  cfg["max_doublings"] = config.max_doublings;
  cfg["qtol"] = config.qtol;
  cfg["t_samples"] = config.t_samples;
  cfg["m_max"] = config.m_max;
  cfg["ls_m_max"] = config.ls_m_max;
  cfg["seed"] = config.seed;
  j["config"] = cfg;
  j["checks"] = Json::array();
  for (const auto& c : report.checks) {
    Json e;
    e["name"] = c.name;
    e["residual"] = double_or_null(c.residual);
    e["tolerance"] = c.tolerance;
    e["passed"] = c.passed;
    if (include_timings) e["runtime"] = c.runtime;
    j["checks"].push_back(e);
  }
  j["skipped"] = Json::array();
  for (const auto& s : report.skipped) j["skipped"].push_back({{"name", s.name}, {"reason", s.reason}});
  j["min_density"] = report.min_density;
  return j.dump(2) + "\n";
}

std::vector<double> interior_points(double b1, double b2, int points) {
  if (points < 1 || !(b1 < b2)) throw Error(ErrorKind::InvalidArgument, "need b1 < b2 and at least one point");
  const double mid = 0.5 * (b1 + b2), half = 0.5 * (b2 - b1);
  std::vector<double> xs;
  for (int i = 0; i < points; ++i)
    xs.push_back(mid - half * std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * points)));
  if (points % 2 == 1) xs[static_cast<std::size_t>(points / 2)] = mid;
  return xs;
}

std::vector<ClosedFormRow> closed_form2_table(const TwoByTwoInstance& inst, const std::vector<double>& xs,
                                              const RunConfig& config) {
  if (!(inst.b1 >= 0.0)) throw Error(ErrorKind::InvalidArgument, "closed-form2 needs 0 <= b1 < b2");
  const MeasureComputation mc = compute_measure(to_pair(inst), config.measure_options());
  std::vector<ClosedFormRow> rows;
  for (double x : xs) {
    ClosedFormRow r;
    r.x = x;
    r.w_integral = density2(inst, x);
    r.w_series = mehta_kumar(inst, x);
    r.w_contour = mc.track ? density_lower(*mc.track, x, config.qtol).value : 0.0;
    r.max_pair_diff = std::max({std::abs(r.w_integral - r.w_series), std::abs(r.w_integral - r.w_contour),
                                std::abs(r.w_series - r.w_contour)});
    rows.push_back(r);
  }
  return rows;
}

std::string format_closed_form2_csv(const std::vector<ClosedFormRow>& rows) {
  std::string out = "x,w_integral,w_series,w_contour,max_pair_diff\n";
  for (const auto& r : rows)
    out += format_double(r.x) + ',' + format_double(r.w_integral) + ',' + format_double(r.w_series) + ',' +
           format_double(r.w_contour) + ',' + format_double(r.max_pair_diff) + '\n';
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MeasureComputation cmd_measure(const std::filesystem::path& instance, const RunConfig& config,
                               const std::filesystem::path& out_dir) {
  config.validate();
  const HermitianPair pair = load_pair(instance);
  MeasureComputation mc = compute_measure(pair, config.measure_options());
  write_file(out_dir / "measure.json", format_measure_json(mc.measure));
  write_file(out_dir / "density.csv", format_density_csv(mc.measure.density));
  return mc;
}

VerificationReport cmd_verify(const std::filesystem::path& instance, const RunConfig& config,
                              const std::filesystem::path& out_dir, bool include_timings) {
  config.validate();
  const HermitianPair pair = load_pair(instance);
  VerificationReport report = run_verification(pair, config.verify_options());
  write_file(out_dir / "report.json", format_report_json(report, config, include_timings));
  return report;
}

std::vector<ClosedFormRow> cmd_closed_form2(const TwoByTwoInstance& inst, int points, const RunConfig& config,
                                            const std::filesystem::path& out_csv) {
  config.validate();
  const std::vector<ClosedFormRow> rows = closed_form2_table(inst, interior_points(inst.b1, inst.b2, points), config);
  write_file(out_csv, format_closed_form2_csv(rows));
  return rows;
}

InstanceFile cmd_random(int n, std::uint64_t seed, const std::filesystem::path& out_path) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "random instances need n >= 2");
  const HermitianPair pair = random_pair(n, seed);
  InstanceFile inst{pair.a, pair.b, "random-n" + std::to_string(n) + "-seed" + std::to_string(seed), seed};
  write_file(out_path, format_instance(inst));
  return inst;
}

}  // namespace bmv
