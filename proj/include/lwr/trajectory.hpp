#pragma once

#include <vector>

#include "lwr/errors.hpp"
#include "lwr/flux.hpp"

namespace lwr {

struct PathPoint {
  double t;
  double y;
};

struct ConstraintSegment {
  double t_begin;
  double t_end;
  double q;
};

/// One moving interface: a piecewise-linear, nondecreasing trajectory on
/// [start_time, end_time] together with a piecewise-constant constraint.
struct InterfaceSpec {
  int id = 0;
  double start_time = 0.0;
  double end_time = 0.0;
  std::vector<PathPoint> path;
  std::vector<ConstraintSegment> constraint;

  double position(double t) const;
  double slope(double t) const;  // a.e. value, right-continuous at kinks
  double constraint_at(double t) const;
  double max_slope() const;

  /// Structural invariants + per-segment (slope, q) admissibility.
  void validate(const FluxModel& m) const;
};

/// Per-step means of slope and constraint on a uniform step grid, plus the
/// resulting node positions. Positions satisfy y[k+1] = y[k] + s[k]*dt.
struct DiscreteInterface {
  int id = 0;
  double dt = 0.0;
  int n_begin = 0;  // first active step
  int n_end = 0;    // one past the last active step
  std::vector<double> s;  // size n_end - n_begin
  std::vector<double> q;  // size n_end - n_begin
  std::vector<double> y;  // size n_end - n_begin + 1, nodes t^n

  int steps() const { return n_end - n_begin; }
  bool active(int n) const { return n >= n_begin && n < n_end; }
  double slope_at(int n) const { return s[n - n_begin]; }
  double q_at(int n) const { return q[n - n_begin]; }
  double y_at(int n) const { return y[n - n_begin]; }
};

/// Exact interval averages of the slope and the constraint over each step.
/// The active window is clipped to the step grid of the given horizon.
DiscreteInterface discretize(const InterfaceSpec& spec, double dt,
                             double horizon);

/// Same, with a post-discretization admissibility check against the model
/// (a violation raises ValidationError).
DiscreteInterface discretize_checked(const InterfaceSpec& spec, double dt,
                                     double horizon, const FluxModel& m);

/// Synthetic interface for a merged phase: mean positions/slopes, pointwise
/// minimum of the constraints, over steps [n_begin, n_end).
DiscreteInterface merged_interface(const DiscreteInterface& a,
                                   const DiscreteInterface& b, int n_begin,
                                   int n_end);

struct MergePhase {
  int n_begin = 0;
  int n_end = 0;                // steps [n_begin, n_end)
  bool merged = false;
  std::vector<int> members;     // interface ids handled by this phase
};

struct MergeSchedule {
  std::vector<MergePhase> phases;
  int n1 = -1;  // first merged step, -1 when the threshold is never met
  int n2 = -1;  // first independent step after separation
};

/// Pairwise schedule for two interfaces on a shared step grid. `crossing`
/// is the step index of their declared common endpoint, or -1 when the
/// interfaces do not share one. Threshold: gap <= 4*dx.
MergeSchedule build_merge_schedule(const DiscreteInterface& a,
                                   const DiscreteInterface& b, double dx,
                                   int crossing);

}  // namespace lwr
