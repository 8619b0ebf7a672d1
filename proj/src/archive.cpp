#include "lwr/archive.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace lwr {

namespace {

namespace fs = std::filesystem;

const char* germ_name(GermClass g) {
  switch (g) {
    case GermClass::G1: return "G1";
    case GermClass::G2: return "G2";
    case GermClass::G3: return "G3";
    case GermClass::NotInGerm: return "none";
  }
  return "none";
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class SnapshotCollector : public StepObserver {
 public:
  SnapshotCollector(std::vector<double> times, double dt, int total_steps)
      : times_(std::move(times)) {
    std::sort(times_.begin(), times_.end());
    for (double t : times_) {
      int n = static_cast<int>(std::llround(t / dt));
      n = std::max(0, std::min(total_steps, n));
      steps_.push_back(n);
    }
    done_.assign(steps_.size(), false);
  }

  void on_step(const StepContext& ctx) override {
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      if (done_[i]) continue;
      if (steps_[i] == ctx.n) {
        push(i, ctx.n, ctx.t_lo, *ctx.mesh_lo, *ctx.vals_lo);
      } else if (steps_[i] == ctx.n + 1) {
        push(i, ctx.n + 1, ctx.t_hi, *ctx.mesh_hi, *ctx.vals_hi);
      }
    }
  }

  std::vector<Snapshot> take() { return std::move(snaps_); }

 private:
  void push(std::size_t i, int step, double t, const LevelMesh& mesh,
            const std::vector<double>& vals) {
    Snapshot s;
    s.step = step;
    s.t = t;
    s.mesh = mesh;
    s.values = vals;
    snaps_.push_back(std::move(s));
    done_[i] = true;
  }

  std::vector<double> times_;
  std::vector<int> steps_;
  std::vector<bool> done_;
  std::vector<Snapshot> snaps_;
};

}  // namespace

RunOutputs run_scenario(const ScenarioFile& sc, const RunOptions& opt) {
  Simulator sim(sc.to_run_config());
  const double dt = sim.config().scheme.dt();

  RunOutputs out;
  out.dt = dt;
  out.steps = sim.total_steps();

  std::vector<double> snap_times =
      opt.snapshots ? *opt.snapshots : sc.output.snapshots;
  SnapshotCollector snaps(snap_times, dt, sim.total_steps());
  sim.add_observer(&snaps);

  TraceObserver traces;
  sim.add_observer(&traces);
  MassAuditObserver mass(&out.report);
  sim.add_observer(&mass);
  BoundaryMonitor boundary;
  sim.add_observer(&boundary);

  const bool diag = sc.output.diagnostics || opt.force_diagnostics;
  const double mu = sim.config().flux.mu();
  const double lambda = sim.config().scheme.lambda;
  OslObserver osl(lambda, mu, &out.report);
  BvObserver bv(std::max(0.1, 4.0 * sc.dx), 1.0, lambda, mu,
                sim.wave_speed_bound(), &out.report);
  if (diag) {
    sim.add_observer(&osl);
    sim.add_observer(&bv);
  }
  std::vector<double> kappas;
  for (int k = 0; k <= 20; ++k) kappas.push_back(0.05 * k);
  DeiObserver dei(kappas, &out.report);
  if (sc.output.dei || opt.force_dei) sim.add_observer(&dei);

  sim.run();

  out.snapshots = snaps.take();
  out.traces = traces.records();
  out.max_mass_drift = mass.max_drift();
  out.max_transition_drift = mass.max_transition_drift();
  out.boundary_quiet = boundary.quiet();
  out.final_field = sim.field();
  return out;
}

void export_plot_data(const std::string& dir, const RunOutputs& out,
                      char delimiter) {
  fs::create_directories(dir);
  const std::string d(1, delimiter);
  for (std::size_t i = 0; i < out.snapshots.size(); ++i) {
    const Snapshot& s = out.snapshots[i];
    char name[64];
    std::snprintf(name, sizeof(name), "/snapshot_%03zu.dat", i);
    std::ofstream f(dir + name, std::ios::binary);
    if (!f) throw IoError("cannot write snapshot file in " + dir);
    f << "# t = " << fmt(s.t) << " step = " << s.step << "\n";
    f << "# x_center" << d << "rho\n";
    for (int c = 0; c < s.mesh.cell_count(); ++c)
      f << fmt(s.mesh.cell_center(c)) << d << fmt(s.values[c]) << "\n";
  }
  std::ofstream f(dir + "/interfaces.dat", std::ios::binary);
  if (!f) throw IoError("cannot write " + dir + "/interfaces.dat");
  f << "# t" << d << "id" << d << "y" << d << "s" << d << "q" << d
    << "f_int" << d << "trace_left" << d << "trace_right" << d << "germ\n";
  for (const TraceRecord& r : out.traces)
    f << fmt(r.t) << d << r.src_id << d << fmt(r.y) << d << fmt(r.s) << d
      << fmt(r.q) << d << fmt(r.f_int) << d << fmt(r.trace_left) << d
      << fmt(r.trace_right) << d << germ_name(r.germ) << "\n";
}

void write_archive(const std::string& dir, const ScenarioFile& sc,
                   const RunOutputs& out, char delimiter) {
  fs::create_directories(dir);
  {
    std::ofstream f(dir + "/scenario.scn", std::ios::binary);
    if (!f) throw IoError("cannot write " + dir + "/scenario.scn");
    f << serialize_scenario(sc);
  }
  {
    std::ofstream f(dir + "/meta.txt", std::ios::binary);
    f << "dx = " << fmt(sc.dx) << "\n";
    f << "dt = " << fmt(out.dt) << "\n";
    f << "lambda = " << fmt(sc.lambda) << "\n";
    f << "steps = " << out.steps << "\n";
    f << "snapshots = " << out.snapshots.size() << "\n";
    f << "max_mass_drift = " << fmt(out.max_mass_drift) << "\n";
    f << "max_transition_drift = " << fmt(out.max_transition_drift) << "\n";
    f << "boundary_quiet = " << (out.boundary_quiet ? "yes" : "no") << "\n";
  }
  export_plot_data(dir, out, delimiter);
  {
    std::ofstream f(dir + "/diagnostics.dat", std::ios::binary);
    out.report.write(f);
  }
}

CheckResult check_archive(const std::string& dir) {
  const ScenarioFile sc = parse_scenario(dir + "/scenario.scn");
  RunOptions opt;
  opt.force_diagnostics = true;
  RunOutputs out = run_scenario(sc, opt);

  CheckResult res;
  res.report = out.report;

  // The archive may have been written comma-delimited.
  char delimiter = ' ';
  {
    std::ifstream probe(dir + "/interfaces.dat");
    std::string header;
    if (std::getline(probe, header) && header.find(',') != std::string::npos)
      delimiter = ',';
  }

  // Determinism: regenerate the snapshot files and compare byte for byte.
  const std::string tmp = dir + "/.check_tmp";
  write_archive(tmp, sc, out, delimiter);
  for (int i = 0;; ++i) {
    char name[64];
    std::snprintf(name, sizeof(name), "/snapshot_%03d.dat", i);
    std::ifstream a(dir + name, std::ios::binary);
    std::ifstream b(tmp + name, std::ios::binary);
    if (!a && !b) break;
    ++res.snapshot_files;
    if (!a || !b) {
      res.snapshots_match = false;
      break;
    }
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    if (sa.str() != sb.str()) res.snapshots_match = false;
  }
  fs::remove_all(tmp);
  return res;
}

}  // namespace lwr
