#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lwr/flux.hpp"
#include "lwr/mesh.hpp"

namespace lwr {

struct SchemeConfig {
  double dx = 1e-2;
  double lambda = 0.4;  // dt/dx, fixed
  double horizon = 1.0;

  double dt() const { return lambda * dx; }
  int total_steps() const;

  /// CFL: 2 * (|f'| + |y'|) * lambda <= 1 - 1e-12, else CflViolation.
  void validate(double wave_speed_bound) const;
};

/// Initial datum presets plus an arbitrary callable.
struct InitialDatum {
  enum class Kind { Constant, Indicator, Piecewise, Callable };
  Kind kind = Kind::Constant;
  double value = 0.0;            // Constant level / Indicator level
  double from = 0.0, to = 0.0;   // Indicator support [from, to]
  std::vector<double> breaks;    // Piecewise: ascending breakpoints
  std::vector<double> values;    // size breaks.size() + 1
  std::function<double(double)> fn;

  static InitialDatum constant(double c);
  static InitialDatum indicator(double from, double to, double value);
  static InitialDatum piecewise(std::vector<double> breaks,
                                std::vector<double> values);
  static InitialDatum callable(std::function<double(double)> fn);

  double eval(double x) const;
  /// Mean over [a, b]: exact for the piecewise-constant presets,
  /// 16-point Gauss-Legendre for a callable.
  double mean(double a, double b) const;
  void validate() const;
};

struct SolutionField {
  int step = 0;
  LevelMesh mesh;
  std::vector<double> values;  // one per mesh cell, in [0,1]

  double mass() const;
  /// Piecewise-constant point evaluation (cell value at x).
  double at(double x) const;
};

/// Cell means of the datum on the given mesh.
SolutionField project_initial(const InitialDatum& rho0, LevelMesh mesh);

/// Standard 3-point Engquist-Osher update away from the interface.
double step_away_from_interface(const FluxModel& m, double lambda, double um,
                                double u, double up);

/// Geometry of the two interface control volumes for one step.
struct InterfaceGeometry {
  double dx = 0.0;
  double dt = 0.0;
  double s = 0.0;  // effective slope, (y_hi - y_lo)/dt
  double q = 0.0;
  double wl_lo = 0.0, wl_hi = 0.0;  // left CV width at t^n / t^{n+1}
  double wr_lo = 0.0, wr_hi = 0.0;  // right CV width
  bool shift = false;               // j_{n+1} = j_n + 1
};

/// Updated left interface cell value; nondecreasing in u, v, w under CFL.
double step_interface_left(const FluxModel& m, double u, double v, double w,
                           const InterfaceGeometry& g);

/// Updated right interface cell value for the shift case (the control
/// volume absorbs the next uniform cell, value w, on its inflow side).
double step_interface_right(const FluxModel& m, double u, double v, double w,
                            double z, const InterfaceGeometry& g);

/// Right interface cell update when the interface stays in its cell.
double step_interface_right_stay(const FluxModel& m, double u, double v,
                                 double w, const InterfaceGeometry& g);

/// Per-step description of one active interface (positions pre-nudged,
/// y_hi >= y_lo, |y_hi - y_lo| <= dx/2).
struct ActiveInterface {
  int src_id = 0;
  double y_lo = 0.0;
  double y_hi = 0.0;
  double s = 0.0;
  double q = 0.0;
};

/// What the step did at one interface, for observers and diagnostics.
struct InterfaceStepInfo {
  int src_id = 0;
  int node_lo = 0;  // interface node index in the t^n mesh
  int node_hi = 0;
  double f_int = 0.0;
  double trace_left = 0.0;   // interface-adjacent cell values at t^n
  double trace_right = 0.0;
  InterfaceGeometry geom;
};

struct StepResult {
  LevelMesh mesh;
  std::vector<double> values;
  std::vector<InterfaceStepInfo> ifaces;
  std::vector<double> node_flux;  // numerical flux per t^n mesh node
};

/// One marching step t^n -> t^{n+1} over the whole mesh: mf1 on every
/// uniform cell, the interface updates on the adapted cells, duplicated
/// value convention after a shift.
StepResult advance(const FluxModel& m, const SchemeConfig& cfg,
                   const LevelMesh& mesh_lo, std::span<const double> vals,
                   std::span<const ActiveInterface> ifaces);

/// Conservative piecewise-constant re-projection between two meshes of the
/// same span (exact geometric overlap integration).
std::vector<double> project_between_meshes(const LevelMesh& from,
                                           std::span<const double> vals,
                                           const LevelMesh& to);

}  // namespace lwr
