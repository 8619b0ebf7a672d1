#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lwr/diagnostics.hpp"
#include "lwr/scenario.hpp"

namespace lwr {

struct Snapshot {
  int step = 0;
  double t = 0.0;
  LevelMesh mesh;
  std::vector<double> values;
};

struct RunOutputs {
  std::vector<Snapshot> snapshots;
  std::vector<TraceRecord> traces;
  DiagnosticsReport report;
  double max_mass_drift = 0.0;
  double max_transition_drift = 0.0;
  bool boundary_quiet = true;
  SolutionField final_field;
  double dt = 0.0;
  int steps = 0;
};

struct RunOptions {
  std::optional<std::vector<double>> snapshots;  // override scenario times
  bool force_diagnostics = false;
  bool force_dei = false;
};

/// Execute a scenario to its horizon with the requested instrumentation.
/// Deterministic: identical inputs produce identical outputs.
RunOutputs run_scenario(const ScenarioFile& sc, const RunOptions& opt = {});

/// Plot-ready delimited text: one snapshot file per requested time
/// (columns x_center, rho) plus the interface overlay (t, y, q, flux,
/// traces, germ class).
void export_plot_data(const std::string& dir, const RunOutputs& out,
                      char delimiter = ' ');

/// Write a run archive: canonical scenario echo, metadata, the plot data
/// from export_plot_data and the diagnostics report. `delimiter` switches
/// between space and comma separated output.
void write_archive(const std::string& dir, const ScenarioFile& sc,
                   const RunOutputs& out, char delimiter = ' ');

/// Re-run the archived scenario, verify the stored snapshots byte for
/// byte and re-evaluate the diagnostics. Returns the fresh report plus a
/// determinism flag.
struct CheckResult {
  DiagnosticsReport report;
  bool snapshots_match = true;
  int snapshot_files = 0;
};
CheckResult check_archive(const std::string& dir);

}  // namespace lwr
