#include "lwr/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lwr {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr int kGaussN = 16;
constexpr double kGaussX[kGaussN] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kGaussW[kGaussN] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

// Rounding guard: interface-cell arithmetic may overshoot [0,1] by a few
// ulp; anything larger is a genuine stability failure.
constexpr double kClampGuard = 1e-13;

double clamp_value(double v, int cell) {
  if (v < -kClampGuard || v > 1.0 + kClampGuard) {
    std::ostringstream os;
    os << "scheme left [0,1] at cell " << cell << " (value " << v << ")";
    throw CflViolation(os.str());
  }
  return std::min(1.0, std::max(0.0, v));
}

}  // namespace

int SchemeConfig::total_steps() const {
  return static_cast<int>(std::ceil(horizon / dt() - 1e-9));
}

void SchemeConfig::validate(double wave_speed_bound) const {
  if (!(dx > 0.0) || !(lambda > 0.0) || !(horizon > 0.0))
    throw ValidationError("scheme", "dx, lambda and horizon must be positive");
  if (2.0 * wave_speed_bound * lambda > 1.0 - 1e-12) {
    std::ostringstream os;
    os << "CFL violated: 2*L*lambda = " << 2.0 * wave_speed_bound * lambda
       << " > 1";
    throw CflViolation(os.str());
  }
}

InitialDatum InitialDatum::constant(double c) {
  InitialDatum d;
  d.kind = Kind::Constant;
  d.value = c;
  return d;
}

InitialDatum InitialDatum::indicator(double from, double to, double value) {
  InitialDatum d;
  d.kind = Kind::Indicator;
  d.from = from;
  d.to = to;
  d.value = value;
  return d;
}

InitialDatum InitialDatum::piecewise(std::vector<double> breaks,
                                     std::vector<double> values) {
  InitialDatum d;
  d.kind = Kind::Piecewise;
  d.breaks = std::move(breaks);
  d.values = std::move(values);
  return d;
}

InitialDatum InitialDatum::callable(std::function<double(double)> fn) {
  InitialDatum d;
  d.kind = Kind::Callable;
  d.fn = std::move(fn);
  return d;
}

void InitialDatum::validate() const {
  switch (kind) {
    case Kind::Constant:
      if (value < 0.0 || value > 1.0)
        throw ValidationError("initial", "constant outside [0,1]");
      break;
    case Kind::Indicator:
      if (value < 0.0 || value > 1.0)
        throw ValidationError("initial", "indicator level outside [0,1]");
      if (!(to > from))
        throw ValidationError("initial", "indicator support is empty");
      break;
    case Kind::Piecewise: {
      if (values.size() != breaks.size() + 1)
        throw ValidationError("initial",
                              "piecewise needs one more value than breaks");
      for (std::size_t i = 1; i < breaks.size(); ++i)
        if (!(breaks[i] > breaks[i - 1]))
          throw ValidationError("initial", "breaks must be ascending");
      for (double v : values)
        if (v < 0.0 || v > 1.0)
          throw ValidationError("initial", "piecewise value outside [0,1]");
      break;
    }
    case Kind::Callable:
      if (!fn) throw ValidationError("initial", "callable datum is empty");
      break;
  }
}

double InitialDatum::eval(double x) const {
  switch (kind) {
    case Kind::Constant:
      return value;
    case Kind::Indicator:
      return (x >= from && x <= to) ? value : 0.0;
    case Kind::Piecewise: {
      std::size_t i = 0;
      while (i < breaks.size() && x >= breaks[i]) ++i;
      return values[i];
    }
    case Kind::Callable:
      return fn(x);
  }
  return 0.0;
}

double InitialDatum::mean(double a, double b) const {
  const double w = b - a;
  switch (kind) {
    case Kind::Constant:
      return value;
    case Kind::Indicator: {
      const double overlap =
          std::max(0.0, std::min(b, to) - std::max(a, from));
      return value * overlap / w;
    }
    case Kind::Piecewise: {
      double acc = 0.0;
      double lo = a;
      for (std::size_t i = 0; i < breaks.size() && lo < b; ++i) {
        const double hi = std::min(b, breaks[i]);
        if (hi > lo) acc += values[i] * (hi - lo);
        lo = std::max(lo, breaks[i]);
      }
      if (lo < b) acc += values.back() * (b - lo);
      return acc / w;
    }
    case Kind::Callable: {
      double acc = 0.0;
      for (int k = 0; k < kGaussN; ++k)
        acc += kGaussW[k] * fn(a + 0.5 * w * (1.0 + kGaussX[k]));
      return 0.5 * acc;
    }
  }
  return 0.0;
}

double SolutionField::mass() const {
  double acc = 0.0;
  for (std::size_t c = 0; c < values.size(); ++c)
    acc += values[c] * mesh.cell_width(static_cast<int>(c));
  return acc;
}

double SolutionField::at(double x) const {
  const auto it =
      std::upper_bound(mesh.nodes.begin(), mesh.nodes.end(), x);
  if (it == mesh.nodes.begin()) return values.front();
  const std::size_t c = static_cast<std::size_t>(it - mesh.nodes.begin()) - 1;
  return values[std::min(c, values.size() - 1)];
}

SolutionField project_initial(const InitialDatum& rho0, LevelMesh mesh) {
  SolutionField field;
  field.step = 0;
  field.values.resize(mesh.cell_count());
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const double v = rho0.mean(mesh.nodes[c], mesh.nodes[c + 1]);
    field.values[c] = std::min(1.0, std::max(0.0, v));
  }
  field.mesh = std::move(mesh);
  return field;
}

double step_away_from_interface(const FluxModel& m, double lambda, double um,
                                double u, double up) {
  return u - lambda * (engquist_osher(m, u, up) - engquist_osher(m, um, u));
}

double step_interface_left(const FluxModel& m, double u, double v, double w,
                           const InterfaceGeometry& g) {
  const double f_int = interface_flux(m, g.s, g.q, v, w);
  return (v * g.wl_lo - (f_int - engquist_osher(m, u, v)) * g.dt) / g.wl_hi;
}

double step_interface_right(const FluxModel& m, double u, double v, double w,
                            double z, const InterfaceGeometry& g) {
  const double f_int = interface_flux(m, g.s, g.q, u, v);
  return (v * g.wr_lo + w * g.dx -
          (engquist_osher(m, w, z) - f_int) * g.dt) /
         g.wr_hi;
}

double step_interface_right_stay(const FluxModel& m, double u, double v,
                                 double w, const InterfaceGeometry& g) {
  const double f_int = interface_flux(m, g.s, g.q, u, v);
  return (v * g.wr_lo - (engquist_osher(m, v, w) - f_int) * g.dt) / g.wr_hi;
}

StepResult advance(const FluxModel& m, const SchemeConfig& cfg,
                   const LevelMesh& mesh_lo, std::span<const double> vals,
                   std::span<const ActiveInterface> ifaces) {
  const double dt = cfg.dt();
  const int n_cells = mesh_lo.cell_count();
  if (static_cast<int>(vals.size()) != n_cells)
    throw PreconditionError("advance: field size does not match the mesh");
  if (ifaces.size() != mesh_lo.iface_nodes.size())
    throw PreconditionError("advance: interface count does not match mesh");

  StepResult out;

  // New-level mesh from the moved interface positions.
  std::vector<double> y_hi(ifaces.size());
  for (std::size_t i = 0; i < ifaces.size(); ++i) {
    const ActiveInterface& a = ifaces[i];
    if (a.y_hi < a.y_lo || a.y_hi - a.y_lo > (0.5 + 1e-6) * cfg.dx)
      throw InvalidStepError("interface displacement outside [0, dx/2]");
    y_hi[i] = a.y_hi;
  }
  out.mesh = build_level_mesh(mesh_lo.grid, y_hi);

  // Numerical flux at every t^n node; ghost cells copy the boundary value.
  const int n_nodes = n_cells + 1;
  out.node_flux.resize(n_nodes);
  {
    std::size_t next_if = 0;
    for (int k = 0; k < n_nodes; ++k) {
      const double vl = vals[std::max(0, k - 1)];
      const double vr = vals[std::min(n_cells - 1, k)];
      if (next_if < ifaces.size() &&
          k == mesh_lo.iface_nodes[next_if]) {
        const ActiveInterface& a = ifaces[next_if];
        out.node_flux[k] = interface_flux(m, a.s, a.q, vl, vr);
        ++next_if;
      } else {
        out.node_flux[k] = engquist_osher(m, vl, vr);
      }
    }
  }

  out.values.assign(out.mesh.cell_count(), 0.0);
  // Uniform cells: the t^{n+1} cell c coincides with the t^n cell c away
  // from every interface window, so mf1 applies index-wise.
  std::vector<char> written(out.values.size(), 0);

  out.ifaces.resize(ifaces.size());
  for (std::size_t i = 0; i < ifaces.size(); ++i) {
    const ActiveInterface& a = ifaces[i];
    const int m_lo = mesh_lo.iface_nodes[i];
    const int m_hi = out.mesh.iface_nodes[i];
    const bool shift = m_hi == m_lo + 1;
    if (!shift && m_hi != m_lo)
      throw InvalidStepError("interface crossed more than one node");

    InterfaceGeometry g;
    g.dx = cfg.dx;
    g.dt = dt;
    g.s = (a.y_hi - a.y_lo) / dt;
    g.q = a.q;
    g.shift = shift;
    g.wl_lo = a.y_lo - mesh_lo.nodes[m_lo - 1];
    g.wl_hi = a.y_hi - mesh_lo.nodes[m_lo - 1];
    g.wr_lo = mesh_lo.nodes[m_lo + 1] - a.y_lo;
    g.wr_hi = shift ? mesh_lo.nodes[m_lo + 2] - a.y_hi
                    : mesh_lo.nodes[m_lo + 1] - a.y_hi;

    const double u2 = vals[std::max(0, m_lo - 2)];
    const double u1 = vals[m_lo - 1];
    const double v1 = vals[m_lo];
    const double v2 = vals[std::min(n_cells - 1, m_lo + 1)];
    const double v3 = vals[std::min(n_cells - 1, m_lo + 2)];

    const double left = step_interface_left(m, u2, u1, v1, g);
    double right;
    if (shift) {
      right = step_interface_right(m, u1, v1, v2, v3, g);
      out.values[m_hi - 2] = left;  // duplicated value convention
      out.values[m_hi - 1] = left;
      out.values[m_hi] = right;
      written[m_hi - 2] = written[m_hi - 1] = written[m_hi] = 1;
    } else {
      right = step_interface_right_stay(m, u1, v1, v2, g);
      out.values[m_hi - 1] = left;
      out.values[m_hi] = right;
      written[m_hi - 1] = written[m_hi] = 1;
    }

    InterfaceStepInfo& info = out.ifaces[i];
    info.src_id = a.src_id;
    info.node_lo = m_lo;
    info.node_hi = m_hi;
    info.f_int = out.node_flux[m_lo];
    info.trace_left = u1;
    info.trace_right = v1;
    info.geom = g;
  }

  const double lambda = cfg.lambda;
  for (int c = 0; c < static_cast<int>(out.values.size()); ++c) {
    if (!written[c])
      out.values[c] =
          vals[c] - lambda * (out.node_flux[c + 1] - out.node_flux[c]);
    out.values[c] = clamp_value(out.values[c], c);
  }
  return out;
}

std::vector<double> project_between_meshes(const LevelMesh& from,
                                           std::span<const double> vals,
                                           const LevelMesh& to) {
  std::vector<double> out(to.cell_count(), 0.0);
  std::size_t src = 0;
  for (int c = 0; c < to.cell_count(); ++c) {
    const double lo = to.nodes[c];
    const double hi = to.nodes[c + 1];
    while (src + 1 < vals.size() && from.nodes[src + 1] <= lo) ++src;
    double acc = 0.0;
    for (std::size_t s = src; s < vals.size(); ++s) {
      const double a = std::max(lo, from.nodes[s]);
      const double b = std::min(hi, from.nodes[s + 1]);
      if (b > a) acc += vals[s] * (b - a);
      if (from.nodes[s + 1] >= hi) break;
    }
    out[c] = acc / (hi - lo);
    out[c] = std::min(1.0, std::max(0.0, out[c]));
  }
  return out;
}

}  // namespace lwr
