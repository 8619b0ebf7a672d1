#include "lwr/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lwr {

GridSpec GridSpec::from_extent(double x_min, double x_max, double dx) {
  if (!(dx > 0.0)) throw ValidationError("domain.dx", "must be positive");
  if (!(x_max > x_min))
    throw ValidationError("domain", "x_max must exceed x_min");
  const double n_real = (x_max - x_min) / dx;
  const int n = static_cast<int>(std::llround(n_real));
  if (n < 8 || std::abs(n_real - n) > 1e-6)
    throw ValidationError("domain",
                          "extent must be an integer multiple of dx (>= 8 cells)");
  GridSpec g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.dx = dx;
  g.n_cells = n;
  return g;
}

LocateResult locate_interface(const GridSpec& grid, double y) {
  const double margin = 2.0 * grid.dx;
  if (y < grid.x_min + margin - 1e-12 || y > grid.x_max - margin + 1e-12) {
    std::ostringstream os;
    os << "interface position " << y << " closer than 2*dx to the domain end";
    throw OutOfDomainError(os.str());
  }
  const double nudge = 1e-9 * grid.dx;
  const double rel = (y - grid.x_min) / grid.dx;
  const int nearest = static_cast<int>(std::llround(rel));
  LocateResult r;
  if (std::abs(y - grid.node(nearest)) <= nudge) {
    r.j = nearest;
    r.y = grid.node(nearest) + nudge;
  } else {
    r.j = static_cast<int>(std::floor(rel));
    r.y = y;
  }
  return r;
}

LevelMesh build_level_mesh(const GridSpec& grid,
                           std::span<const double> iface_y) {
  LevelMesh mesh;
  mesh.grid = grid;
  mesh.nodes.reserve(grid.n_cells + 1);
  mesh.iface_nodes.reserve(iface_y.size());

  // Cell index of each interface; positions are assumed nudged already.
  std::vector<int> cell(iface_y.size());
  int prev_j = -10;
  for (std::size_t i = 0; i < iface_y.size(); ++i) {
    const double rel = (iface_y[i] - grid.x_min) / grid.dx;
    const int j = static_cast<int>(std::floor(rel));
    if (j < 2 || j > grid.n_cells - 3)
      throw OutOfDomainError("interface too close to the domain end");
    if (i > 0 && j <= prev_j + 3)
      throw PhaseInvariantViolation(
          "interfaces closer than the 4*dx locality margin");
    cell[i] = j;
    prev_j = j;
  }

  // Nodes x_{j_i} and x_{j_i+1} are dropped, y_i takes their place.
  std::size_t next = 0;
  for (int j = 0; j <= grid.n_cells; ++j) {
    if (next < cell.size() && j == cell[next]) {
      mesh.iface_nodes.push_back(static_cast<int>(mesh.nodes.size()));
      mesh.nodes.push_back(iface_y[next]);
      ++next;
      ++j;  // also skip x_{j+1}
      continue;
    }
    mesh.nodes.push_back(grid.node(j));
  }
  return mesh;
}

StepMesh build_step_mesh(const GridSpec& grid, double y_n, double y_np1) {
  if (std::abs(y_np1 - y_n) > (0.5 + 1e-6) * grid.dx)
    throw InvalidStepError("interface moved more than dx/2 in one step");
  StepMesh sm;
  const LocateResult lo = locate_interface(grid, y_n);
  LocateResult hi = locate_interface(grid, y_np1);
  if (hi.y < lo.y) {
    hi.y = lo.y;  // monotone guard after nudging
    hi.j = lo.j;
  }
  sm.j_lo = lo.j;
  sm.j_hi = hi.j;
  sm.y_lo = lo.y;
  sm.y_hi = hi.y;
  if (sm.j_hi == sm.j_lo)
    sm.step_case = StepCase::Stay;
  else if (sm.j_hi == sm.j_lo + 1)
    sm.step_case = StepCase::ShiftRight;
  else
    throw InvalidStepError("interface crossed more than one node");

  const double y_arr_lo[1] = {sm.y_lo};
  const double y_arr_hi[1] = {sm.y_hi};
  sm.lo = build_level_mesh(grid, y_arr_lo);
  sm.hi = build_level_mesh(grid, y_arr_hi);

  const int m_hi = sm.hi.iface_nodes[0];
  sm.cells.resize(sm.hi.cell_count());
  for (int c = 0; c < sm.hi.cell_count(); ++c) {
    CellGeometry& g = sm.cells[c];
    g.left_hi = sm.hi.nodes[c];
    g.right_hi = sm.hi.nodes[c + 1];
    if (c == m_hi - 1 || (sm.step_case == StepCase::ShiftRight && c == m_hi - 2)) {
      // Left interface control volume (the two duplicated cells share it
      // after a shift).
      g.kind = CellKind::LeftInterfaceParallelogram;
      g.left_lo = sm.lo.nodes[sm.lo.iface_nodes[0] - 1];
      g.right_lo = sm.y_lo;
      g.left_hi = g.left_lo;
      g.right_hi = sm.y_hi;
    } else if (c == m_hi) {
      g.kind = CellKind::RightInterfaceParallelogram;
      g.left_lo = sm.y_lo;
      g.right_lo = sm.step_case == StepCase::ShiftRight
                       ? sm.lo.nodes[sm.lo.iface_nodes[0] + 2]
                       : sm.lo.nodes[sm.lo.iface_nodes[0] + 1];
      g.left_hi = sm.y_hi;
    } else {
      g.kind = CellKind::Rectangle;
      g.left_lo = g.left_hi;
      g.right_lo = g.right_hi;
    }
  }
  return sm;
}

}  // namespace lwr
