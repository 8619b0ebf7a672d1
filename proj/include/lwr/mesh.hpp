#pragma once

#include <span>
#include <vector>

#include "lwr/errors.hpp"

namespace lwr {

struct GridSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  double dx = 0.1;
  int n_cells = 10;

  double node(int j) const { return x_min + j * dx; }
  double length() const { return x_max - x_min; }

  /// Builds a grid from an extent; the extent must be an integer multiple
  /// of dx (within rounding).
  static GridSpec from_extent(double x_min, double x_max, double dx);
};

struct LocateResult {
  int j;     // y in ]x_j, x_{j+1}[
  double y;  // nudged position, strictly inside the open cell
};

/// Unique cell index containing y, with the node-coincidence nudge
/// (+1e-9*dx off a node). Requires a 2*dx margin from the domain ends.
LocateResult locate_interface(const GridSpec& grid, double y);

/// Mesh nodes at one time level: the uniform grid with, per interface, the
/// two nodes x_{j}, x_{j+1} replaced by the interface position.
struct LevelMesh {
  GridSpec grid;
  std::vector<double> nodes;
  std::vector<int> iface_nodes;  // node index of each interface, ascending

  int cell_count() const { return static_cast<int>(nodes.size()) - 1; }
  double cell_width(int c) const { return nodes[c + 1] - nodes[c]; }
  double cell_center(int c) const { return 0.5 * (nodes[c] + nodes[c + 1]); }
};

/// Assemble the level mesh for (already nudged) interface positions.
/// Positions must be ascending, separated by more than 4*dx, and away from
/// the domain ends; violations raise PhaseInvariantViolation/OutOfDomain.
LevelMesh build_level_mesh(const GridSpec& grid,
                           std::span<const double> iface_y);

enum class StepCase { Stay, ShiftRight };

enum class CellKind {
  Rectangle,
  LeftInterfaceParallelogram,
  RightInterfaceParallelogram
};

/// Control-volume geometry between two consecutive time levels.
struct CellGeometry {
  CellKind kind = CellKind::Rectangle;
  double left_lo = 0.0;   // edges at t^n
  double right_lo = 0.0;
  double left_hi = 0.0;   // edges at t^{n+1}
  double right_hi = 0.0;

  double width_lo() const { return right_lo - left_lo; }
  double width_hi() const { return right_hi - left_hi; }
};

/// One-interface space-time slab between t^n and t^{n+1}.
struct StepMesh {
  StepCase step_case = StepCase::Stay;
  int j_lo = 0;  // j_n
  int j_hi = 0;  // j_{n+1}
  double y_lo = 0.0;
  double y_hi = 0.0;
  LevelMesh lo;
  LevelMesh hi;
  std::vector<CellGeometry> cells;  // one control volume per hi-level cell
};

/// Builds the slab for a single interface moving from y_n to y_np1.
/// Requires |y_np1 - y_n| <= dx/2 (CFL); a move of more than one cell or a
/// leftward cell change raises InvalidStepError.
StepMesh build_step_mesh(const GridSpec& grid, double y_n, double y_np1);

}  // namespace lwr
