#include "lwr/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lwr {

namespace {
constexpr double kTimeTol = 1e-9;
}

double InterfaceSpec::position(double t) const {
  if (path.empty()) throw PreconditionError("interface path is empty");
  if (t <= path.front().t) return path.front().y;
  if (t >= path.back().t) return path.back().y;
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (t <= path[i].t) {
      const PathPoint& p0 = path[i - 1];
      const PathPoint& p1 = path[i];
      const double w = (t - p0.t) / (p1.t - p0.t);
      return p0.y + w * (p1.y - p0.y);
    }
  }
  return path.back().y;
}

double InterfaceSpec::slope(double t) const {
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (t < path[i].t || i + 1 == path.size()) {
      const PathPoint& p0 = path[i - 1];
      const PathPoint& p1 = path[i];
      return (p1.y - p0.y) / (p1.t - p0.t);
    }
  }
  return 0.0;
}

double InterfaceSpec::constraint_at(double t) const {
  for (const ConstraintSegment& seg : constraint) {
    if (t >= seg.t_begin - kTimeTol &&
        (t < seg.t_end || &seg == &constraint.back()))
      return seg.q;
  }
  throw PreconditionError("constraint undefined at requested time");
}

double InterfaceSpec::max_slope() const {
  double s_max = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i)
    s_max = std::max(s_max,
                     (path[i].y - path[i - 1].y) / (path[i].t - path[i - 1].t));
  return s_max;
}

void InterfaceSpec::validate(const FluxModel& m) const {
  std::ostringstream tag;
  tag << "interface " << id;
  const std::string name = tag.str();
  if (!(start_time >= 0.0 && start_time < end_time))
    throw ValidationError(name, "requires 0 <= start_time < end_time");
  if (path.size() < 2)
    throw ValidationError(name, "path needs at least two breakpoints");
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (!(path[i].t > path[i - 1].t))
      throw ValidationError(name, "path times must be strictly increasing");
    if (path[i].y < path[i - 1].y - 1e-12)
      throw ValidationError(name, "trajectory must be nondecreasing");
  }
  if (path.front().t > start_time + kTimeTol ||
      path.back().t < end_time - kTimeTol)
    throw ValidationError(name, "path must cover [start_time, end_time]");
  if (constraint.empty())
    throw ValidationError(name, "constraint segments missing");
  for (std::size_t i = 0; i < constraint.size(); ++i) {
    const ConstraintSegment& seg = constraint[i];
    if (!(seg.t_end > seg.t_begin))
      throw ValidationError(name, "constraint segment has empty support");
    if (i > 0 && std::abs(seg.t_begin - constraint[i - 1].t_end) > kTimeTol)
      throw ValidationError(name, "constraint segments must be contiguous");
  }
  if (constraint.front().t_begin > start_time + kTimeTol ||
      constraint.back().t_end < end_time - kTimeTol)
    throw ValidationError(name, "constraint must cover [start_time, end_time]");
  // Every (slope, q) pair on overlapping pieces must be admissible.
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double s =
        (path[i].y - path[i - 1].y) / (path[i].t - path[i - 1].t);
    for (const ConstraintSegment& seg : constraint) {
      const bool overlap = seg.t_begin < path[i].t - kTimeTol &&
                           seg.t_end > path[i - 1].t + kTimeTol;
      if (overlap && !constraint_admissible(m, s, seg.q)) {
        std::ostringstream os;
        os << "constraint q=" << seg.q << " inadmissible for slope " << s;
        throw ValidationError(name, os.str());
      }
    }
  }
}

DiscreteInterface discretize(const InterfaceSpec& spec, double dt,
                             double horizon) {
  if (!(dt > 0.0)) throw PreconditionError("dt must be positive");
  DiscreteInterface d;
  d.id = spec.id;
  d.dt = dt;
  const int total = static_cast<int>(std::ceil(horizon / dt - kTimeTol));
  d.n_begin = static_cast<int>(std::ceil(spec.start_time / dt - kTimeTol));
  d.n_end = std::min(
      total, static_cast<int>(std::floor(spec.end_time / dt + kTimeTol)));
  if (d.n_end <= d.n_begin) {
    d.n_end = d.n_begin;
    return d;
  }
  const int steps = d.n_end - d.n_begin;
  d.s.resize(steps);
  d.q.resize(steps);
  d.y.resize(steps + 1);
  d.y[0] = spec.position(d.n_begin * dt);
  for (int k = 0; k < steps; ++k) {
    const double t0 = (d.n_begin + k) * dt;
    const double t1 = t0 + dt;
    // Mean slope over the step: exact for a piecewise-linear path.
    d.s[k] = (spec.position(t1) - spec.position(t0)) / dt;
    // y is propagated by the recurrence so that y[k+1] = y[k] + s[k]*dt
    // holds bit-exactly; the drift from the sampled path is at rounding level.
    d.y[k + 1] = d.y[k] + d.s[k] * dt;
    // Mean constraint: overlap sum over piecewise-constant segments.
    double acc = 0.0;
    for (const ConstraintSegment& seg : spec.constraint) {
      const double lo = std::max(t0, seg.t_begin);
      const double hi = std::min(t1, seg.t_end);
      if (hi > lo) acc += (hi - lo) * seg.q;
    }
    // Parts of the step outside the constraint support contribute the
    // nearest segment value (constraint ignored outside [s_i, T_i]).
    double covered = std::max(
        0.0, std::min(t1, spec.constraint.back().t_end) -
                 std::max(t0, spec.constraint.front().t_begin));
    if (covered < dt - kTimeTol) {
      if (t0 < spec.constraint.front().t_begin)
        acc += (std::min(t1, spec.constraint.front().t_begin) - t0) *
               spec.constraint.front().q;
      if (t1 > spec.constraint.back().t_end)
        acc += (t1 - std::max(t0, spec.constraint.back().t_end)) *
               spec.constraint.back().q;
    }
    d.q[k] = acc / dt;
  }
  return d;
}

DiscreteInterface discretize_checked(const InterfaceSpec& spec, double dt,
                                     double horizon, const FluxModel& m) {
  DiscreteInterface d = discretize(spec, dt, horizon);
  for (int k = 0; k < d.steps(); ++k) {
    if (!constraint_admissible(m, d.s[k], d.q[k])) {
      std::ostringstream os;
      os << "step " << d.n_begin + k << ": averaged (s=" << d.s[k]
         << ", q=" << d.q[k] << ") is inadmissible";
      throw ValidationError("interface " + std::to_string(spec.id), os.str());
    }
    if (d.s[k] + d.q[k] < -1e-12)
      throw ValidationError("interface " + std::to_string(spec.id),
                            "s^n + q^n < 0 after averaging");
  }
  return d;
}

DiscreteInterface merged_interface(const DiscreteInterface& a,
                                   const DiscreteInterface& b, int n_begin,
                                   int n_end) {
  if (a.dt != b.dt)
    throw ConfigMismatch("merged_interface: step grids differ");
  if (n_begin < std::max(a.n_begin, b.n_begin) ||
      n_end > std::min(a.n_end, b.n_end))
    throw PreconditionError("merge range outside both interfaces' support");
  DiscreteInterface d;
  d.id = -(a.id * 1000 + b.id);  // synthetic
  d.dt = a.dt;
  d.n_begin = n_begin;
  d.n_end = n_end;
  const int steps = n_end - n_begin;
  d.s.resize(steps);
  d.q.resize(steps);
  d.y.resize(steps + 1);
  d.y[0] = 0.5 * (a.y_at(n_begin) + b.y_at(n_begin));
  for (int k = 0; k < steps; ++k) {
    const int n = n_begin + k;
    d.s[k] = 0.5 * (a.slope_at(n) + b.slope_at(n));
    d.q[k] = std::min(a.q_at(n), b.q_at(n));
    d.y[k + 1] = d.y[k] + d.s[k] * d.dt;
  }
  return d;
}

MergeSchedule build_merge_schedule(const DiscreteInterface& a,
                                   const DiscreteInterface& b, double dx,
                                   int crossing) {
  if (a.dt != b.dt)
    throw ConfigMismatch("build_merge_schedule: step grids differ");
  MergeSchedule sched;
  const int lo = std::max(a.n_begin, b.n_begin);
  const int hi = std::min(a.n_end, b.n_end);
  const int span_begin = std::min(a.n_begin, b.n_begin);
  const int span_end = std::max(a.n_end, b.n_end);
  const double threshold = 4.0 * dx;

  int n1 = -1;
  for (int n = lo; n <= hi; ++n) {
    if (std::abs(a.y_at(n) - b.y_at(n)) <= threshold) {
      n1 = n;
      break;
    }
  }
  if (n1 < 0) {
    sched.phases.push_back({span_begin, span_end, false, {a.id, b.id}});
    return sched;
  }
  sched.n1 = n1;

  int stop = crossing >= 0 ? crossing : hi;
  int n2 = -1;
  for (int n = n1 + 1; n <= stop; ++n) {
    if (std::abs(a.y_at(n) - b.y_at(n)) >= threshold) {
      n2 = n;
      break;
    }
  }
  if (n2 < 0 && crossing < 0) {
    if (a.n_end == b.n_end)
      throw ScheduleError(
          "merged phase reaches the end of both interfaces without "
          "separation or a declared crossing");
    n2 = hi;  // one interface deactivates; the merge terminates there
  }
  const int merged_end = n2 >= 0 ? n2 : stop;
  sched.n2 = merged_end;

  if (n1 > span_begin)
    sched.phases.push_back({span_begin, n1, false, {a.id, b.id}});
  sched.phases.push_back({n1, merged_end, true, {a.id, b.id}});
  if (merged_end < span_end)
    sched.phases.push_back({merged_end, span_end, false, {a.id, b.id}});
  return sched;
}

}  // namespace lwr
