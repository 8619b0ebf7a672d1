#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lwr/archive.hpp"
#include "lwr/parallel.hpp"
#include "lwr/riemann.hpp"

namespace {

// Exit codes: 0 ok, 2 validation failure, 3 runtime scheme error,
// 4 diagnostics-check failure (simulate --strict / check).
constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kRuntime = 3;
constexpr int kDiagnostics = 4;

std::vector<double> parse_times(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t next = csv.find(',', pos);
    if (next == std::string::npos) next = csv.size();
    out.push_back(std::stod(csv.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

int cmd_simulate(const std::string& scenario_path, std::string out_dir,
                 int refine, bool strict, const std::string& snapshots_csv,
                 char delimiter) {
  lwr::ScenarioFile sc;
  try {
    sc = lwr::parse_scenario(scenario_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }

  if (out_dir.empty())
    out_dir = "runs/" +
              std::filesystem::path(scenario_path).stem().string();

  lwr::RunOptions opt;
  if (!snapshots_csv.empty()) opt.snapshots = parse_times(snapshots_csv);

  std::vector<lwr::ScenarioFile> levels(refine, sc);
  for (int k = 1; k < refine; ++k) levels[k].dx = levels[k - 1].dx / 2.0;

  std::vector<lwr::RunOutputs> outs(refine);
  std::vector<std::string> errors(refine);
  std::vector<int> codes(refine, kOk);
  lwr::parallel_for(refine, [&](int k) {
    try {
      outs[k] = lwr::run_scenario(levels[k], opt);
    } catch (const lwr::ValidationError& e) {
      errors[k] = e.what();
      codes[k] = kValidation;
    } catch (const lwr::ParseError& e) {
      errors[k] = e.what();
      codes[k] = kValidation;
    } catch (const std::exception& e) {
      errors[k] = e.what();
      codes[k] = kRuntime;
    }
  });
  for (int k = 0; k < refine; ++k) {
    if (codes[k] != kOk) {
      std::cerr << "error: " << errors[k] << "\n";
      return codes[k];
    }
  }

  int worst = kOk;
  for (int k = 0; k < refine; ++k) {
    const std::string dir =
        refine == 1 ? out_dir : out_dir + "/refine" + std::to_string(k);
    lwr::write_archive(dir, levels[k], outs[k], delimiter);
    std::printf("run %d: dx=%g steps=%d cells=%d mass_drift=%.3e -> %s\n", k,
                levels[k].dx, outs[k].steps,
                outs[k].final_field.mesh.cell_count(),
                outs[k].max_mass_drift, dir.c_str());
    if (!outs[k].boundary_quiet)
      std::printf("warning: waves reached the domain boundary (run %d)\n", k);
    const int fails = outs[k].report.failures();
    if (fails > 0) {
      std::printf("diagnostics: %d failed record(s) in run %d\n", fails, k);
      if (strict) worst = kDiagnostics;
    }
  }
  for (int k = 0; k + 1 < refine; ++k) {
    const double d = lwr::l1_distance(
        outs[k].final_field.mesh, outs[k].final_field.values,
        outs[k + 1].final_field.mesh, outs[k + 1].final_field.values);
    std::printf("l1 difference dx=%g vs dx=%g at horizon: %.6e\n",
                levels[k].dx, levels[k + 1].dx, d);
  }
  return worst;
}

int cmd_check(const std::string& archive_dir) {
  lwr::CheckResult res;
  try {
    res = lwr::check_archive(archive_dir);
  } catch (const lwr::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const lwr::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  std::printf("snapshots: %d file(s), %s\n", res.snapshot_files,
              res.snapshots_match ? "bit-identical" : "MISMATCH");
  std::printf("diagnostics: %zu record(s), %d failure(s)\n",
              res.report.records.size(), res.report.failures());
  if (!res.snapshots_match || !res.report.all_pass()) return kDiagnostics;
  return kOk;
}

int cmd_riemann(double s, double q, double left, double right, double t,
                double x_min, double x_max, int samples) {
  try {
    const lwr::FluxModel m = lwr::FluxModel::quadratic();
    std::vector<double> values(samples + 1);
    for (int k = 0; k <= samples; ++k) {
      const double x = x_min + (x_max - x_min) * k / samples;
      values[k] = lwr::exact_constrained_riemann(m, s, q, left, right, x / t);
    }
    std::printf("# x rho (s=%.17g q=%.17g left=%.17g right=%.17g t=%.17g)\n",
                s, q, left, right, t);
    for (int k = 0; k <= samples; ++k)
      std::printf("%.17g %.17g\n", x_min + (x_max - x_min) * k / samples,
                  values[k]);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite volume solver for the LWR model with flux "
               "constraints along moving interfaces"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir, snapshots_csv;
  int refine = 1;
  bool strict = false;
  bool csv = false;
  auto* sim = app.add_subcommand("simulate", "run a scenario file");
  sim->add_option("scenario", scenario_path, "scenario file")->required();
  sim->add_option("--out", out_dir, "output directory");
  sim->add_option("--refine", refine, "number of mesh levels (dx halving)")
      ->check(CLI::Range(1, 8));
  sim->add_flag("--strict", strict, "exit 4 on diagnostics failures");
  sim->add_option("--snapshots", snapshots_csv,
                  "comma separated snapshot times (overrides the scenario)");
  sim->add_flag("--csv", csv, "comma-delimited output files");

  std::string archive_dir;
  auto* chk = app.add_subcommand("check", "re-run diagnostics on an archive");
  chk->add_option("archive", archive_dir, "archive directory")->required();

  double r_s = 0.0, r_q = 0.1, r_left = 0.5, r_right = 0.5, r_t = 1.0;
  double r_xmin = -1.0, r_xmax = 1.0;
  int r_samples = 200;
  auto* rie = app.add_subcommand("riemann",
                                 "print the exact constrained Riemann "
                                 "profile at time t");
  rie->add_option("--s", r_s, "interface speed");
  rie->add_option("--q", r_q, "constraint level");
  rie->add_option("--left", r_left, "left state")->required();
  rie->add_option("--right", r_right, "right state")->required();
  rie->add_option("--t", r_t, "evaluation time");
  rie->add_option("--x-min", r_xmin, "profile window start");
  rie->add_option("--x-max", r_xmax, "profile window end");
  rie->add_option("--samples", r_samples, "number of sample points");

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed())
    return cmd_simulate(scenario_path, out_dir, refine, strict, snapshots_csv,
                        csv ? ',' : ' ');
  if (chk->parsed()) return cmd_check(archive_dir);
  if (rie->parsed())
    return cmd_riemann(r_s, r_q, r_left, r_right, r_t, r_xmin, r_xmax,
                       r_samples);
  return kOk;
}
