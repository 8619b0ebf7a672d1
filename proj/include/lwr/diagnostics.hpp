#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lwr/simulator.hpp"

namespace lwr {

struct CheckRecord {
  std::string name;
  int step = 0;
  double value = 0.0;
  double bound = 0.0;
  bool pass = true;
};

struct DiagnosticsReport {
  std::vector<CheckRecord> records;

  void add(std::string name, int step, double value, double bound) {
    records.push_back({std::move(name), step, value, bound,
                       value <= bound});
  }
  int failures() const;
  bool all_pass() const { return failures() == 0; }
  void write(std::ostream& os) const;
};

// ---------------------------------------------------------------------------
// One-sided Lipschitz machinery
// ---------------------------------------------------------------------------

/// Downward jumps D_j = max(rho_{j-1/2} - rho_{j+1/2}, 0) at interior nodes.
std::vector<double> downward_jumps(std::span<const double> values);

struct OslViolation {
  int node = 0;
  double value = 0.0;
  double bound = 0.0;
};

/// psi-bound check for one step: at every interior node outside the
/// per-interface excluded windows, D^{n+1} <= psi(max of the three
/// neighboring D^n) with psi(x) = x - a x^2. Never throws; returns the
/// violators (slack tolerance 1e-10).
std::vector<OslViolation> check_osl(const StepContext& ctx, double a);

/// Branchwise decay envelope of the one-sided Lipschitz cascade:
/// 1/(a*min(n+1, dist)) with dist the index distance from the excluded
/// window around j_np1; +infinity inside the window.
double osl_decay_envelope(int n, int j, int j_np1, double a);

struct TvResult {
  double tv = 0.0;
  double bound = 0.0;  // Lambda = 1 + 6X/(a*eps)
};

/// Total variation of the field over ]y+eps, y+X[ and the mirrored left
/// window, against the localized BV bound. Preconditions: 3*dx <= eps < X
/// and t >= eps/(2L); PreconditionError otherwise.
TvResult localized_tv(const SolutionField& field, double y_pos, double eps,
                      double X, double a, double t, double wave_speed);

struct TimeContinuityResult {
  double increment = 0.0;
  double bound = 0.0;  // 2*dx + L*(2*Lambda + 1)*dt
};

/// L1 increment of the field between two consecutive steps over the
/// windows anchored at the interface, against the time-continuity bound.
TimeContinuityResult time_continuity(const LevelMesh& mesh_a,
                                     std::span<const double> vals_a,
                                     const LevelMesh& mesh_b,
                                     std::span<const double> vals_b,
                                     double y_pos, double eps, double X,
                                     double lambda_bound, double wave_speed,
                                     double dx, double dt, double t);

// ---------------------------------------------------------------------------
// Step observers
// ---------------------------------------------------------------------------

/// psi-bound, universal D <= 1/(lambda*mu) bound and the decay cascade,
/// per step. Merged-phase steps are skipped and the cascade counter resets
/// at phase transitions.
class OslObserver : public StepObserver {
 public:
  OslObserver(double lambda, double mu, DiagnosticsReport* report,
              bool record_passes = false);
  void on_step(const StepContext& ctx) override;

 private:
  double a_ = 0.0;
  double universal_ = 0.0;
  int phase_steps_ = 0;
  int last_phase_ = -1;
  DiagnosticsReport* report_;
  bool record_passes_;
};

/// Localized BV and time-continuity sweep with a fixed (eps, X) window.
class BvObserver : public StepObserver {
 public:
  BvObserver(double eps, double X, double lambda, double mu,
             double wave_speed, DiagnosticsReport* report);
  void on_step(const StepContext& ctx) override;

 private:
  double eps_, X_, a_, wave_speed_;
  DiagnosticsReport* report_;
};

/// Discrete entropy inequalities: for each kappa on the grid and each cell
/// class, the per-step inequality with numerical entropy fluxes. Records a
/// summary per step (worst slack); slack tolerance 1e-10.
class DeiObserver : public StepObserver {
 public:
  DeiObserver(std::vector<double> kappas, DiagnosticsReport* report,
              bool record_per_step = false);
  void on_step(const StepContext& ctx) override;

  int violations() const { return violations_; }
  double worst_slack() const { return worst_slack_; }

 private:
  std::vector<double> kappas_;
  DiagnosticsReport* report_;
  bool record_per_step_;
  int violations_ = 0;
  double worst_slack_ = 0.0;
};

/// Per-step interface record: traces, interface flux, germ class.
struct TraceRecord {
  int step = 0;
  double t = 0.0;
  int src_id = 0;
  double y = 0.0;
  double s = 0.0;
  double q = 0.0;
  double f_int = 0.0;
  double trace_left = 0.0;
  double trace_right = 0.0;
  GermClass germ = GermClass::NotInGerm;
};

class TraceObserver : public StepObserver {
 public:
  /// Germ classification of discrete traces uses a loose tolerance (the
  /// traces converge at the mesh rate).
  explicit TraceObserver(double germ_tol = 0.025) : germ_tol_(germ_tol) {}
  void on_step(const StepContext& ctx) override;
  const std::vector<TraceRecord>& records() const { return records_; }

 private:
  double germ_tol_;
  std::vector<TraceRecord> records_;
};

/// Per-step conservation audit: mass change against boundary fluxes.
class MassAuditObserver : public StepObserver {
 public:
  explicit MassAuditObserver(DiagnosticsReport* report = nullptr)
      : report_(report) {}
  void on_step(const StepContext& ctx) override;
  double max_drift() const { return max_drift_; }
  double max_transition_drift() const { return max_transition_drift_; }

 private:
  DiagnosticsReport* report_;
  double max_drift_ = 0.0;
  double max_transition_drift_ = 0.0;
  double last_mass_ = -1.0;
};

/// Warns when the field near the domain ends departs from its initial
/// state (the truncation of the real line stops being transparent).
class BoundaryMonitor : public StepObserver {
 public:
  void on_step(const StepContext& ctx) override;
  bool quiet() const { return quiet_; }

 private:
  bool quiet_ = true;
  bool primed_ = false;
  double left_ref_ = 0.0, right_ref_ = 0.0;
};

// ---------------------------------------------------------------------------
// Weak-form residuals
// ---------------------------------------------------------------------------

/// Tensor mollifier bump with analytically known derivatives:
/// phi(x,t) = B((x-xc)/wx) * B((t-tc)/wt), B(u) = exp(1 - 1/(1-u^2)).
struct Bump {
  double xc = 0.0, wx = 1.0;
  double tc = 0.0, wt = 1.0;

  static double b(double u);
  static double db(double u);
  double value(double x, double t) const;
  double ddx(double x, double t) const;
  double ddt(double x, double t) const;
};

/// The fixed family used by the residual checks: 4 centers x 3 widths.
std::vector<Bump> make_bump_family(double x0, double x1, double horizon);

/// Streaming accumulator for the approximate entropy inequality: for each
/// (bump, kappa) pair the left-hand side of the inequality including the
/// interface remainder term. Attach before the run starts.
class EntropyResidualObserver : public StepObserver {
 public:
  EntropyResidualObserver(std::vector<Bump> bumps,
                          std::vector<double> kappas);
  void on_step(const StepContext& ctx) override;

  /// residual for pair (bump i, kappa j)
  double residual(int i, int j) const;
  double min_residual() const;
  int bumps() const { return static_cast<int>(bumps_.size()); }
  int kappas() const { return static_cast<int>(kappas_.size()); }

 private:
  std::vector<Bump> bumps_;
  std::vector<double> kappas_;
  std::vector<double> acc_;  // [bump * kappas + kappa]
  bool initial_done_ = false;
};

/// Streaming accumulator for the approximate constraint inequality on the
/// right side of one interface: residual = -iint (rho dphi_t + F dphi_x)
/// - int q phi(y,t) dt, to be <= C(dx+dt).
class ConstraintResidualObserver : public StepObserver {
 public:
  ConstraintResidualObserver(std::vector<Bump> bumps, int iface_src_id);
  void on_step(const StepContext& ctx) override;

  double residual(int i) const { return acc_[i]; }
  double max_residual() const;

 private:
  std::vector<Bump> bumps_;
  int src_id_;
  std::vector<double> acc_;
};

// ---------------------------------------------------------------------------
// Run-to-run comparisons
// ---------------------------------------------------------------------------

/// Discrete L1 distance between two fields (possibly on different meshes
/// of the same span).
double l1_distance(const LevelMesh& mesh_a, std::span<const double> vals_a,
                   const LevelMesh& mesh_b, std::span<const double> vals_b);

struct L1StabilityResult {
  double lhs = 0.0;  // ||rho(T) - sigma(T)||_1
  double rhs = 0.0;  // ||rho_o - sigma_o||_1 + 2 sum_i int |q_i - r_i|
};

/// Stability estimate check between two finished runs with identical
/// grids/trajectories and differing data/constraints.
L1StabilityResult l1_stability_check(const Simulator& run_a,
                                     const Simulator& run_b);

/// L1 error of the field against the exact constrained-Riemann oracle at
/// time t (interface through x_c with speed s, constraint q).
double l1_error_vs_riemann(const SolutionField& field, const FluxModel& m,
                           double s, double q, double rho_l, double rho_r,
                           double x_c, double t);

}  // namespace lwr
