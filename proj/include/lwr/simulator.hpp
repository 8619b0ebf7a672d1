#pragma once

#include <memory>
#include <vector>

#include "lwr/scheme.hpp"
#include "lwr/trajectory.hpp"

namespace lwr {

/// Declared common endpoint of interfaces (trajectory crossings are split
/// into interfaces ending/starting here).
struct CrossingPoint {
  double t = 0.0;
  double x = 0.0;
  std::vector<int> ending;
  std::vector<int> starting;
};

struct RunConfig {
  FluxModel flux = FluxModel::quadratic();
  GridSpec grid;
  SchemeConfig scheme;
  InitialDatum initial;
  std::vector<InterfaceSpec> interfaces;
  std::vector<CrossingPoint> crossings;
};

/// Everything one marching step exposes to observers.
struct StepContext {
  int n = 0;             // t^n -> t^{n+1}
  double t_lo = 0.0;
  double t_hi = 0.0;
  const LevelMesh* mesh_lo = nullptr;
  const std::vector<double>* vals_lo = nullptr;
  const LevelMesh* mesh_hi = nullptr;
  const std::vector<double>* vals_hi = nullptr;
  const std::vector<InterfaceStepInfo>* ifaces = nullptr;
  const std::vector<double>* node_flux = nullptr;
  bool transition = false;  // the field was re-projected at t^n
  int phase = 0;            // increments at every structure change
  bool merged_phase = false;
  const SchemeConfig* cfg = nullptr;
  const FluxModel* flux = nullptr;
};

class StepObserver {
 public:
  virtual ~StepObserver() = default;
  virtual void on_step(const StepContext& ctx) = 0;
};

enum class EndpointKind { Activate, Deactivate };

/// Interface endpoint handling: on activate, the mesh is adapted around y
/// and the straddled cells inherit their share of the field; on
/// deactivate, the adapted cells are merged back to the uniform grid by
/// conservative averaging. Mass is preserved exactly.
SolutionField endpoint_transition(const SolutionField& field, double y,
                                  EndpointKind kind);

/// Finite volume marching for the multi-interface problem: independent
/// phases adapt the mesh locally around each trajectory, crossings are
/// handled by merged phases (mean trajectory, min constraint), interfaces
/// activate/deactivate at their endpoints with conservative remeshing.
class Simulator {
 public:
  explicit Simulator(RunConfig cfg);

  void add_observer(StepObserver* obs) { observers_.push_back(obs); }

  bool step();  // advance one step; false once the horizon is reached
  void run();

  int step_index() const { return n_; }
  int total_steps() const { return total_steps_; }
  double time() const { return n_ * cfg_.scheme.dt(); }
  const SolutionField& field() const { return field_; }
  const RunConfig& config() const { return cfg_; }
  double wave_speed_bound() const { return wave_speed_bound_; }

  /// Active effective interfaces at step n (merged phases appear as one
  /// synthetic interface with a negative id).
  std::vector<ActiveInterface> active_at(int n) const;
  bool is_merged_phase(int n) const;

 private:
  struct Stream {
    int src_id = 0;             // negative for merged synthetics
    int n_begin = 0, n_end = 0; // effective steps [n_begin, n_end)
    std::vector<double> y;      // nudged, monotone node positions
    std::vector<double> s_eff;  // (y[k+1]-y[k])/dt
    std::vector<double> q;
    bool merged = false;
  };

  void validate_config();
  void build_streams();
  void prepare_structure_ids();
  std::vector<const Stream*> streams_at(int n) const;

  RunConfig cfg_;
  double wave_speed_bound_ = 0.0;
  int total_steps_ = 0;
  int n_ = 0;
  int phase_ = 0;

  std::vector<DiscreteInterface> discrete_;
  std::vector<Stream> streams_;
  std::vector<int> structure_id_;  // per step; equal ids share the mesh family

  SolutionField field_;
  std::vector<StepObserver*> observers_;
};

}  // namespace lwr
