// Copyright 2026 The bmv Authors
// SPDX-License-Identifier: Apache-2.0

// bmv measure|verify|closed-form2|random

#include "bmv/error.hpp"
#include "bmv/io.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_config_flags(CLI::App* cmd, bmv::RunConfig& cfg, double& pd_floor) {
  cmd->add_option("--grid", cfg.grid, "Gauss-Legendre points per interval between atoms");
  cmd->add_option("--delta", cfg.delta, "atom exclusion radius relative to the support width");
  cmd->add_option("--pd-floor", pd_floor, "shift B when its smallest eigenvalue is below this");
  cmd->add_option("--radius-factor", cfg.radius_factor, "first contour radius over the branch-point estimate");
  cmd->add_option("--max-doublings", cfg.max_doublings, "contour radius doublings before giving up");
  cmd->add_option("--qtol", cfg.qtol, "relative tolerance of the contour quadrature");
  cmd->add_option("--t-samples", cfg.t_samples, "t values for the Laplace check")->delimiter(',');
  cmd->add_option("--m-max", cfg.m_max, "highest finite-difference order in the monotonicity check");
  cmd->add_option("--ls-m-max", cfg.ls_m_max, "highest power m for the Tr(A+tB)^m coefficient check");
  cmd->add_option("--seed", cfg.seed, "seed for randomized probe points");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representing measures of t -> Tr exp(A - tB)"};
  app.require_subcommand(1);

  bmv::RunConfig cfg;
  double pd_floor = 0.0;
  std::string instance;
  std::string out = ".";
  bool timings = false;

  auto* measure = app.add_subcommand("measure", "write measure.json and density.csv");
  measure->add_option("instance", instance, "instance JSON file")->required();
  measure->add_option("--out", out, "output directory");
  add_config_flags(measure, cfg, pd_floor);

  auto* verify = app.add_subcommand("verify", "write report.json; exit status 0 iff every check passes");
  verify->add_option("instance", instance, "instance JSON file")->required();
  verify->add_option("--out", out, "output directory");
  verify->add_flag("--timings", timings, "include per-check runtimes (makes the report non-deterministic)");
  add_config_flags(verify, cfg, pd_floor);

  double a11 = 0.0, a22 = 0.0, a12 = 1.0, b1 = 0.0, b2 = 1.0;
  int points = 51;
  std::string csv = "density.csv";
  auto* cf2 = app.add_subcommand("closed-form2", "compare the n = 2 closed forms with the contour density");
  cf2->add_option("--a11", a11);
  cf2->add_option("--a22", a22);
  cf2->add_option("--a12", a12, "modulus of the off-diagonal entry");
  cf2->add_option("--b1", b1);
  cf2->add_option("--b2", b2);
  cf2->add_option("--points", points, "number of interior sample points")->check(CLI::PositiveNumber);
  cf2->add_option("--out", csv, "output CSV file");
  add_config_flags(cf2, cfg, pd_floor);

  int n = 3;
  std::uint64_t seed = 0;
  std::string instance_out = "instance.json";
  auto* random = app.add_subcommand("random", "write a seeded random instance");
  random->add_option("--n", n, "dimension (at least 2)");
  random->add_option("--seed", seed);
  random->add_option("--out", instance_out, "output instance file");

  CLI11_PARSE(app, argc, argv);

  for (auto* cmd : {measure, verify, cf2})
    if (cmd->parsed() && cmd->count("--pd-floor") > 0) cfg.pd_floor = pd_floor;

  try {
    if (measure->parsed()) {
      const auto mc = bmv::cmd_measure(instance, cfg, out);
      std::cout << mc.measure.atoms.size() << " atoms, " << mc.measure.density.size() << " density points\n";
      return 0;
    }
    if (verify->parsed()) {
      const auto report = bmv::cmd_verify(instance, cfg, out, timings);
      for (const auto& c : report.checks)
        if (!c.passed) std::cout << "FAIL " << c.name << " residual " << c.residual << " > " << c.tolerance << '\n';
      std::cout << report.checks.size() << " checks, " << (report.all_passed() ? "all passed" : "failures") << '\n';
      return report.all_passed() ? 0 : 1;
    }
    if (cf2->parsed()) {
      const auto inst = bmv::make_two_by_two(a11, a22, a12, b1, b2);
      const auto rows = bmv::cmd_closed_form2(inst, points, cfg, csv);
      double worst = 0.0;
      for (const auto& r : rows) worst = std::max(worst, r.max_pair_diff);
      std::cout << rows.size() << " rows, largest pairwise difference " << worst << '\n';
      return 0;
    }
    if (random->parsed()) {
      bmv::cmd_random(n, seed, instance_out);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "bmv: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
