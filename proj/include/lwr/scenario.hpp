#pragma once

#include <string>
#include <vector>

#include "lwr/simulator.hpp"

namespace lwr {

struct OutputSpec {
  std::vector<double> snapshots;
  bool diagnostics = true;  // OSL/BV/mass/trace checks during the run
  bool dei = false;         // discrete entropy inequality sweep (heavy)
};

/// In-memory form of a scenario file. The grammar is line oriented:
/// `[section]` headers and `key = value` pairs; see docs/formats.md.
struct ScenarioFile {
  std::string flux_kind = "quadratic";
  double x_min = 0.0;
  double x_max = 1.0;
  double dx = 0.01;
  double lambda = 0.4;
  double horizon = 1.0;
  InitialDatum initial;
  std::vector<InterfaceSpec> interfaces;
  std::vector<CrossingPoint> crossings;
  OutputSpec output;

  RunConfig to_run_config() const;
};

ScenarioFile parse_scenario_text(const std::string& text);
ScenarioFile parse_scenario(const std::string& path);

/// Canonical serialization; parse(serialize(s)) reproduces s exactly
/// (numbers are printed with 17 significant digits).
std::string serialize_scenario(const ScenarioFile& sc);

bool scenario_equal(const ScenarioFile& a, const ScenarioFile& b);

}  // namespace lwr
