#include "lwr/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace lwr {

namespace {

// Nudge off grid nodes (+1e-9*dx) and enforce monotone positions so the
// per-step geometry stays well posed. Applied per contiguous stream.
void nudge_positions(const GridSpec& grid, std::vector<double>& y) {
  const double eps = 1e-9 * grid.dx;
  for (double& v : y) {
    const double rel = (v - grid.x_min) / grid.dx;
    const double nearest = grid.node(static_cast<int>(std::llround(rel)));
    if (std::abs(v - nearest) <= eps) v = nearest + eps;
  }
  for (std::size_t k = 1; k < y.size(); ++k) y[k] = std::max(y[k], y[k - 1]);
}

}  // namespace

SolutionField endpoint_transition(const SolutionField& field, double y,
                                  EndpointKind kind) {
  std::vector<double> positions;
  for (int m : field.mesh.iface_nodes)
    positions.push_back(field.mesh.nodes[m]);

  if (kind == EndpointKind::Activate) {
    const LocateResult loc = locate_interface(field.mesh.grid, y);
    positions.push_back(loc.y);
    std::sort(positions.begin(), positions.end());
  } else {
    bool found = false;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (std::abs(positions[i] - y) <= field.mesh.grid.dx) {
        positions.erase(positions.begin() + static_cast<long>(i));
        found = true;
        break;
      }
    }
    if (!found)
      throw PreconditionError("endpoint_transition: no interface near y");
  }

  SolutionField out;
  out.step = field.step;
  out.mesh = build_level_mesh(field.mesh.grid, positions);
  out.values = project_between_meshes(field.mesh, field.values, out.mesh);
  return out;
}

Simulator::Simulator(RunConfig cfg) : cfg_(std::move(cfg)) {
  validate_config();
  total_steps_ = cfg_.scheme.total_steps();

  const double dt = cfg_.scheme.dt();
  discrete_.reserve(cfg_.interfaces.size());
  for (const InterfaceSpec& spec : cfg_.interfaces)
    discrete_.push_back(
        discretize_checked(spec, dt, cfg_.scheme.horizon, cfg_.flux));

  build_streams();
  prepare_structure_ids();

  // Initial mesh and datum projection.
  std::vector<ActiveInterface> act = active_at(0);
  std::vector<double> ys(act.size());
  for (std::size_t i = 0; i < act.size(); ++i) ys[i] = act[i].y_lo;
  field_.step = 0;
  field_.mesh = build_level_mesh(cfg_.grid, ys);
  field_ = project_initial(cfg_.initial, std::move(field_.mesh));
}

void Simulator::validate_config() {
  cfg_.flux.validate();
  cfg_.initial.validate();

  double max_speed = 0.0;
  for (const InterfaceSpec& spec : cfg_.interfaces) {
    spec.validate(cfg_.flux);
    max_speed = std::max(max_speed, spec.max_slope());
    // Keep the adapted window and its stencils inside the grid.
    const double lo_limit = cfg_.grid.x_min + 3.0 * cfg_.grid.dx;
    const double hi_limit = cfg_.grid.x_max - 4.0 * cfg_.grid.dx;
    for (const PathPoint& p : spec.path) {
      if (p.t < spec.start_time - 1e-9 || p.t > spec.end_time + 1e-9) continue;
      if (p.y < lo_limit || p.y > hi_limit)
        throw ValidationError("interface " + std::to_string(spec.id),
                              "trajectory too close to the domain boundary");
    }
  }
  wave_speed_bound_ = cfg_.flux.lipschitz() + max_speed;
  cfg_.scheme.validate(wave_speed_bound_);

  // Declared crossings must sit at matching endpoints.
  for (const CrossingPoint& c : cfg_.crossings) {
    if (c.ending.empty() && c.starting.empty())
      throw ValidationError("crossing", "no member interfaces");
    auto find = [&](int id) -> const InterfaceSpec& {
      for (const InterfaceSpec& s : cfg_.interfaces)
        if (s.id == id) return s;
      throw ValidationError("crossing",
                            "unknown interface id " + std::to_string(id));
    };
    for (int id : c.ending) {
      const InterfaceSpec& s = find(id);
      if (std::abs(s.end_time - c.t) > 1e-6 ||
          std::abs(s.position(s.end_time) - c.x) > 1e-6)
        throw ValidationError("crossing",
                              "interface " + std::to_string(id) +
                                  " does not end at the declared point");
    }
    for (int id : c.starting) {
      const InterfaceSpec& s = find(id);
      if (std::abs(s.start_time - c.t) > 1e-6 ||
          std::abs(s.position(s.start_time) - c.x) > 1e-6)
        throw ValidationError("crossing",
                              "interface " + std::to_string(id) +
                                  " does not start at the declared point");
    }
  }

  // Undeclared transversal intersections are rejected: crossings must be
  // declared as endpoints.
  for (std::size_t i = 0; i < cfg_.interfaces.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg_.interfaces.size(); ++j) {
      const InterfaceSpec& a = cfg_.interfaces[i];
      const InterfaceSpec& b = cfg_.interfaces[j];
      const double lo = std::max(a.start_time, b.start_time);
      const double hi = std::min(a.end_time, b.end_time);
      if (hi - lo < 1e-12) continue;
      std::vector<double> ts{lo, hi};
      for (const PathPoint& p : a.path)
        if (p.t > lo && p.t < hi) ts.push_back(p.t);
      for (const PathPoint& p : b.path)
        if (p.t > lo && p.t < hi) ts.push_back(p.t);
      std::sort(ts.begin(), ts.end());
      int sign = 0;
      for (double t : ts) {
        const double g = a.position(t) - b.position(t);
        if (std::abs(g) <= 1e-9) continue;
        const int s = g > 0 ? 1 : -1;
        if (sign != 0 && s != sign)
          throw ValidationError(
              "interfaces " + std::to_string(a.id) + "/" +
                  std::to_string(b.id),
              "undeclared transversal crossing; split them at the "
              "crossing point");
        sign = s;
      }
    }
  }
}

void Simulator::build_streams() {
  const double dt = cfg_.scheme.dt();
  const double near = 4.0 * cfg_.grid.dx + 1e-12;

  // Per-step grouping of active interfaces by the 4*dx proximity rule.
  // A group of size >= 2 is handled as one merged synthetic interface.
  struct UnitKey {
    std::vector<int> ids;  // ascending
    bool operator<(const UnitKey& o) const { return ids < o.ids; }
  };
  std::map<UnitKey, std::pair<int, int>> open;  // key -> [begin, last seen]
  std::vector<std::pair<UnitKey, std::pair<int, int>>> intervals;

  auto flush_stale = [&](int n, const std::set<UnitKey>& current) {
    for (auto it = open.begin(); it != open.end();) {
      if (!current.count(it->first)) {
        intervals.push_back({it->first, {it->second.first, n}});
        it = open.erase(it);
      } else {
        ++it;
      }
    }
  };

  for (int n = 0; n < total_steps_; ++n) {
    std::vector<int> act;
    for (std::size_t i = 0; i < discrete_.size(); ++i)
      if (discrete_[i].active(n)) act.push_back(static_cast<int>(i));
    std::sort(act.begin(), act.end(), [&](int a, int b) {
      return discrete_[a].y_at(n) < discrete_[b].y_at(n);
    });

    std::set<UnitKey> current;
    std::size_t g0 = 0;
    for (std::size_t k = 0; k < act.size(); ++k) {
      const bool last = k + 1 == act.size();
      const bool close =
          !last && discrete_[act[k + 1]].y_at(n) -
                           discrete_[act[k]].y_at(n) <=
                       near;
      if (!close) {
        UnitKey key;
        for (std::size_t g = g0; g <= k; ++g)
          key.ids.push_back(discrete_[act[g]].id);
        std::sort(key.ids.begin(), key.ids.end());
        current.insert(key);
        g0 = k + 1;
      }
    }
    flush_stale(n, current);
    for (const UnitKey& key : current)
      if (!open.count(key)) open[key] = {n, n};
  }
  flush_stale(total_steps_, {});

  for (auto& [key, range] : intervals) {
    Stream st;
    st.n_begin = range.first;
    st.n_end = range.second;
    st.merged = key.ids.size() > 1;

    // Fold the member interfaces pairwise in ascending id order.
    const DiscreteInterface* base = nullptr;
    DiscreteInterface synth;
    for (int id : key.ids) {
      for (const DiscreteInterface& d : discrete_)
        if (d.id == id) {
          if (!base) {
            base = &d;
          } else {
            synth = merged_interface(*base, d, st.n_begin, st.n_end);
            base = &synth;
          }
          break;
        }
    }
    st.src_id = st.merged ? synth.id : base->id;
    const DiscreteInterface& d = *base;
    const int steps = st.n_end - st.n_begin;
    st.y.resize(steps + 1);
    st.s_eff.resize(steps);
    st.q.resize(steps);
    for (int k = 0; k <= steps; ++k) st.y[k] = d.y_at(st.n_begin + k);
    nudge_positions(cfg_.grid, st.y);
    for (int k = 0; k < steps; ++k) {
      st.s_eff[k] = (st.y[k + 1] - st.y[k]) / dt;
      st.q[k] = d.q_at(st.n_begin + k);
    }
    streams_.push_back(std::move(st));
  }
}

void Simulator::prepare_structure_ids() {
  structure_id_.assign(total_steps_ + 1, 0);
  std::map<std::vector<int>, int> ids;
  for (int n = 0; n <= total_steps_; ++n) {
    std::vector<int> desc;
    for (std::size_t s = 0; s < streams_.size(); ++s) {
      const Stream& st = streams_[s];
      const bool covers = st.n_begin <= n && n < st.n_end;
      if (covers) desc.push_back(static_cast<int>(s));
    }
    structure_id_[n] =
        ids.emplace(std::move(desc), static_cast<int>(ids.size()))
            .first->second;
  }
}

std::vector<const Simulator::Stream*> Simulator::streams_at(int n) const {
  std::vector<const Stream*> out;
  for (const Stream& st : streams_)
    if (st.n_begin <= n && n < st.n_end) out.push_back(&st);
  std::sort(out.begin(), out.end(), [&](const Stream* a, const Stream* b) {
    return a->y[n - a->n_begin] < b->y[n - b->n_begin];
  });
  return out;
}

std::vector<ActiveInterface> Simulator::active_at(int n) const {
  std::vector<ActiveInterface> act;
  for (const Stream* st : streams_at(n)) {
    const int k = n - st->n_begin;
    ActiveInterface a;
    a.src_id = st->src_id;
    a.y_lo = st->y[k];
    a.y_hi = st->y[k + 1];
    a.s = st->s_eff[k];
    a.q = st->q[k];
    act.push_back(a);
  }
  return act;
}

bool Simulator::is_merged_phase(int n) const {
  for (const Stream* st : streams_at(n))
    if (st->merged) return true;
  return false;
}

bool Simulator::step() {
  if (n_ >= total_steps_) return false;
  const double dt = cfg_.scheme.dt();

  bool transition = false;
  if (n_ > 0 && structure_id_[n_] != structure_id_[n_ - 1]) {
    // Structure change at t^n: rebuild the mesh for the new interface set
    // and redistribute the field conservatively.
    std::vector<ActiveInterface> act = active_at(n_);
    std::vector<double> ys(act.size());
    for (std::size_t i = 0; i < act.size(); ++i) ys[i] = act[i].y_lo;
    LevelMesh new_mesh = build_level_mesh(cfg_.grid, ys);
    std::vector<double> new_vals =
        project_between_meshes(field_.mesh, field_.values, new_mesh);
    field_.mesh = std::move(new_mesh);
    field_.values = std::move(new_vals);
    transition = true;
    ++phase_;
  }

  const std::vector<ActiveInterface> act = active_at(n_);
  StepResult res = advance(cfg_.flux, cfg_.scheme, field_.mesh, field_.values,
                           act);

  StepContext ctx;
  ctx.n = n_;
  ctx.t_lo = n_ * dt;
  ctx.t_hi = (n_ + 1) * dt;
  ctx.mesh_lo = &field_.mesh;
  ctx.vals_lo = &field_.values;
  ctx.mesh_hi = &res.mesh;
  ctx.vals_hi = &res.values;
  ctx.ifaces = &res.ifaces;
  ctx.node_flux = &res.node_flux;
  ctx.transition = transition;
  ctx.phase = phase_;
  ctx.merged_phase = is_merged_phase(n_);
  ctx.cfg = &cfg_.scheme;
  ctx.flux = &cfg_.flux;
  for (StepObserver* obs : observers_) obs->on_step(ctx);

  field_.mesh = std::move(res.mesh);
  field_.values = std::move(res.values);
  field_.step = ++n_;
  return true;
}

void Simulator::run() {
  while (step()) {
  }
}

}  // namespace lwr
