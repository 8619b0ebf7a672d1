#include "lwr/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "lwr/riemann.hpp"

namespace lwr {

namespace {

constexpr double kSlack = 1e-10;

double entropy_eo(const FluxModel& m, double kappa, double a, double b) {
  return engquist_osher(m, std::max(a, kappa), std::max(b, kappa)) -
         engquist_osher(m, std::min(a, kappa), std::min(b, kappa));
}

double entropy_interface(const FluxModel& m, double s, double q, double kappa,
                         double a, double b) {
  return std::min(godunov_shifted(m, s, std::max(a, kappa),
                                  std::max(b, kappa)),
                  q) -
         std::min(godunov_shifted(m, s, std::min(a, kappa),
                                  std::min(b, kappa)),
                  q);
}

// L1 distance between piecewise-constant fields over [w0, w1].
double l1_window(const LevelMesh& mesh_a, std::span<const double> vals_a,
                 const LevelMesh& mesh_b, std::span<const double> vals_b,
                 double w0, double w1) {
  double acc = 0.0;
  std::size_t ia = 0, ib = 0;
  double x = std::max(w0, std::max(mesh_a.nodes.front(), mesh_b.nodes.front()));
  const double x_end =
      std::min(w1, std::min(mesh_a.nodes.back(), mesh_b.nodes.back()));
  while (ia < vals_a.size() && mesh_a.nodes[ia + 1] <= x) ++ia;
  while (ib < vals_b.size() && mesh_b.nodes[ib + 1] <= x) ++ib;
  while (x < x_end && ia < vals_a.size() && ib < vals_b.size()) {
    const double nxt =
        std::min({mesh_a.nodes[ia + 1], mesh_b.nodes[ib + 1], x_end});
    acc += std::abs(vals_a[ia] - vals_b[ib]) * (nxt - x);
    if (mesh_a.nodes[ia + 1] <= nxt) ++ia;
    if (mesh_b.nodes[ib + 1] <= nxt) ++ib;
    x = nxt;
  }
  return acc;
}

}  // namespace

int DiagnosticsReport::failures() const {
  int n = 0;
  for (const CheckRecord& r : records)
    if (!r.pass) ++n;
  return n;
}

void DiagnosticsReport::write(std::ostream& os) const {
  char buf[256];
  for (const CheckRecord& r : records) {
    std::snprintf(buf, sizeof(buf),
                  "check=%s step=%d value=%.17g bound=%.17g status=%s\n",
                  r.name.c_str(), r.step, r.value, r.bound,
                  r.pass ? "pass" : "fail");
    os << buf;
  }
}

std::vector<double> downward_jumps(std::span<const double> values) {
  std::vector<double> d(values.size() + 1, 0.0);
  for (std::size_t k = 1; k < values.size(); ++k)
    d[k] = std::max(values[k - 1] - values[k], 0.0);
  return d;
}

std::vector<OslViolation> check_osl(const StepContext& ctx, double a) {
  std::vector<OslViolation> out;
  const std::vector<double> d_lo = downward_jumps(*ctx.vals_lo);
  const std::vector<double> d_hi = downward_jumps(*ctx.vals_hi);
  const int cells = static_cast<int>(ctx.vals_hi->size());
  for (int k = 2; k <= cells - 2; ++k) {
    bool excluded = false;
    for (const InterfaceStepInfo& info : *ctx.ifaces)
      if (k >= info.node_hi - 2 && k <= info.node_hi + 1) excluded = true;
    if (excluded) continue;
    const double dmax = std::max({d_lo[k - 1], d_lo[k], d_lo[k + 1]});
    const double psi = dmax - a * dmax * dmax;
    if (d_hi[k] > psi + kSlack) out.push_back({k, d_hi[k], psi});
  }
  return out;
}

double osl_decay_envelope(int n, int j, int j_np1, double a) {
  int dist;
  if (j <= j_np1 - 3)
    dist = (j_np1 - 2) - j;
  else if (j >= j_np1 + 2)
    dist = j - (j_np1 + 1);
  else
    return std::numeric_limits<double>::infinity();
  return 1.0 / (a * std::min(n + 1, dist));
}

OslObserver::OslObserver(double lambda, double mu, DiagnosticsReport* report,
                         bool record_passes)
    : a_(0.25 * lambda * mu),
      universal_(1.0 / (lambda * mu)),
      report_(report),
      record_passes_(record_passes) {}

void OslObserver::on_step(const StepContext& ctx) {
  if (ctx.phase != last_phase_) {
    last_phase_ = ctx.phase;
    phase_steps_ = 0;
  }
  if (ctx.merged_phase) {
    ++phase_steps_;
    return;
  }

  for (const OslViolation& v : check_osl(ctx, a_))
    report_->add("osl_psi[node " + std::to_string(v.node) + "]", ctx.n,
                 v.value, v.bound + kSlack);

  const std::vector<double> d_hi = downward_jumps(*ctx.vals_hi);
  const int cells = static_cast<int>(ctx.vals_hi->size());
  double worst_cascade = 0.0;
  for (int k = 2; k <= cells - 2; ++k) {
    if (d_hi[k] > universal_ + kSlack)
      report_->add("osl_universal[node " + std::to_string(k) + "]", ctx.n,
                   d_hi[k], universal_ + kSlack);
    int dist = phase_steps_ + 1;
    bool excluded = false;
    for (const InterfaceStepInfo& info : *ctx.ifaces) {
      const int m = info.node_hi;
      if (k >= m - 2 && k <= m + 1) {
        excluded = true;
        break;
      }
      dist = std::min(dist, k < m ? (m - 2) - k : k - (m + 1));
    }
    if (excluded) continue;
    const double bound = 1.0 / (a_ * std::min(phase_steps_ + 1, dist));
    if (d_hi[k] > bound + kSlack)
      report_->add("osl_cascade[node " + std::to_string(k) + "]", ctx.n,
                   d_hi[k], bound + kSlack);
    worst_cascade = std::max(worst_cascade, d_hi[k] * a_ *
                                                std::min(phase_steps_ + 1,
                                                         dist));
  }
  if (record_passes_)
    report_->add("osl_cascade_ratio", ctx.n, worst_cascade, 1.0 + kSlack);
  ++phase_steps_;
}

TvResult localized_tv(const SolutionField& field, double y_pos, double eps,
                      double X, double a, double t, double wave_speed) {
  const double dx = field.mesh.grid.dx;
  if (!(3.0 * dx <= eps) || !(eps < X))
    throw PreconditionError("localized_tv: need 3*dx <= eps < X");
  if (!(t >= eps / (2.0 * wave_speed)))
    throw PreconditionError("localized_tv: need t >= eps/(2L)");
  TvResult r;
  r.bound = 1.0 + 6.0 * X / (a * eps);
  for (int side = 0; side < 2; ++side) {
    const double w0 = side == 0 ? y_pos + eps : y_pos - X;
    const double w1 = side == 0 ? y_pos + X : y_pos - eps;
    double tv = 0.0;
    for (std::size_t k = 1; k + 1 < field.mesh.nodes.size(); ++k) {
      const double p = field.mesh.nodes[k];
      if (p > w0 && p < w1)
        tv += std::abs(field.values[k] - field.values[k - 1]);
    }
    r.tv = std::max(r.tv, tv);
  }
  return r;
}

TimeContinuityResult time_continuity(const LevelMesh& mesh_a,
                                     std::span<const double> vals_a,
                                     const LevelMesh& mesh_b,
                                     std::span<const double> vals_b,
                                     double y_pos, double eps, double X,
                                     double lambda_bound, double wave_speed,
                                     double dx, double dt, double t) {
  if (!(3.0 * dx <= eps) || !(eps < X))
    throw PreconditionError("time_continuity: need 3*dx <= eps < X");
  if (!(t >= eps / (2.0 * wave_speed)))
    throw PreconditionError("time_continuity: need t >= eps/(2L)");
  TimeContinuityResult r;
  r.bound = 2.0 * dx + wave_speed * (2.0 * lambda_bound + 1.0) * dt;
  const double right =
      l1_window(mesh_a, vals_a, mesh_b, vals_b, y_pos + eps, y_pos + X);
  const double left =
      l1_window(mesh_a, vals_a, mesh_b, vals_b, y_pos - X, y_pos - eps);
  r.increment = std::max(left, right);
  return r;
}

BvObserver::BvObserver(double eps, double X, double lambda, double mu,
                       double wave_speed, DiagnosticsReport* report)
    : eps_(eps), X_(X), a_(0.25 * lambda * mu), wave_speed_(wave_speed),
      report_(report) {}

void BvObserver::on_step(const StepContext& ctx) {
  const GridSpec& grid = ctx.mesh_lo->grid;
  const double dx = grid.dx;
  const double dt = ctx.cfg->dt();
  if (3.0 * dx > eps_) return;
  const double lambda_bound = 1.0 + 6.0 * X_ / (a_ * eps_);

  for (const InterfaceStepInfo& info : *ctx.ifaces) {
    const double y_hi = ctx.mesh_hi->nodes[info.node_hi];
    const double y_lo = ctx.mesh_lo->nodes[info.node_lo];
    // Both windows must fit in the domain.
    if (y_hi - X_ < grid.x_min || y_hi + X_ > grid.x_max) continue;
    if (ctx.t_hi >= eps_ / (2.0 * wave_speed_)) {
      SolutionField f;
      f.mesh = *ctx.mesh_hi;
      f.values = *ctx.vals_hi;
      const TvResult tv =
          localized_tv(f, y_hi, eps_, X_, a_, ctx.t_hi, wave_speed_);
      if (tv.tv > tv.bound + kSlack)
        report_->add("localized_tv", ctx.n, tv.tv, tv.bound + kSlack);
    }
    if (ctx.t_lo >= eps_ / (2.0 * wave_speed_) &&
        y_lo - X_ >= grid.x_min && y_lo + X_ <= grid.x_max) {
      const TimeContinuityResult tc = time_continuity(
          *ctx.mesh_lo, *ctx.vals_lo, *ctx.mesh_hi, *ctx.vals_hi, y_lo, eps_,
          X_, lambda_bound, wave_speed_, dx, dt, ctx.t_lo);
      if (tc.increment > tc.bound + kSlack)
        report_->add("time_continuity", ctx.n, tc.increment,
                     tc.bound + kSlack);
    }
  }
}

DeiObserver::DeiObserver(std::vector<double> kappas,
                         DiagnosticsReport* report, bool record_per_step)
    : kappas_(std::move(kappas)),
      report_(report),
      record_per_step_(record_per_step) {}

void DeiObserver::on_step(const StepContext& ctx) {
  const FluxModel& m = *ctx.flux;
  const std::vector<double>& lo = *ctx.vals_lo;
  const std::vector<double>& hi = *ctx.vals_hi;
  const double dx = ctx.cfg->dx;
  const double dt = ctx.cfg->dt();
  const int cells = static_cast<int>(lo.size());
  const int n_nodes = cells + 1;

  std::vector<char> special(hi.size(), 0);
  for (const InterfaceStepInfo& info : *ctx.ifaces) {
    special[info.node_hi - 1] = special[info.node_hi] = 1;
    if (info.geom.shift) special[info.node_hi - 2] = 1;
  }

  std::vector<double> phi(n_nodes);
  double step_worst = 0.0;
  for (double kappa : kappas_) {
    // Numerical entropy flux at every node (constrained at interfaces).
    std::size_t next_if = 0;
    for (int k = 0; k < n_nodes; ++k) {
      const double a = lo[std::max(0, k - 1)];
      const double b = lo[std::min(cells - 1, k)];
      if (next_if < ctx.ifaces->size() &&
          k == (*ctx.ifaces)[next_if].node_lo) {
        const InterfaceGeometry& g = (*ctx.ifaces)[next_if].geom;
        phi[k] = entropy_interface(m, g.s, g.q, kappa, a, b);
        ++next_if;
      } else {
        phi[k] = entropy_eo(m, kappa, a, b);
      }
    }

    auto note = [&](const char* tag, double lhs, double rhs, int cell) {
      const double slack = rhs - lhs;
      step_worst = std::min(step_worst, slack);
      if (slack < -kSlack) {
        ++violations_;
        if (report_)
          report_->add(std::string("dei_") + tag, ctx.n, lhs, rhs + kSlack);
        (void)cell;
      }
    };

    for (int c = 0; c < cells; ++c) {
      if (special[c]) continue;
      const double lhs = std::abs(hi[c] - kappa) * dx;
      const double rhs =
          std::abs(lo[c] - kappa) * dx - (phi[c + 1] - phi[c]) * dt;
      note("mf1", lhs, rhs, c);
    }
    for (const InterfaceStepInfo& info : *ctx.ifaces) {
      const InterfaceGeometry& g = info.geom;
      const int m_lo = info.node_lo;
      const int m_hi = info.node_hi;
      const double phi_int = phi[m_lo];
      const double rem = remainder(m, g.s, kappa, g.q);
      {
        const double lhs = std::abs(hi[m_hi - 1] - kappa) * g.wl_hi;
        const double rhs = std::abs(lo[m_lo - 1] - kappa) * g.wl_lo -
                           (phi_int - phi[m_lo - 1]) * dt +
                           0.5 * rem * dt;
        note("left", lhs, rhs, m_hi - 1);
      }
      {
        const double lhs = std::abs(hi[m_hi] - kappa) * g.wr_hi;
        double rhs;
        if (g.shift) {
          rhs = std::abs(lo[m_lo] - kappa) * g.wr_lo +
                std::abs(lo[std::min(cells - 1, m_lo + 1)] - kappa) * dx -
                (phi[std::min(n_nodes - 1, m_lo + 2)] - phi_int) * dt +
                0.5 * rem * dt;
        } else {
          rhs = std::abs(lo[m_lo] - kappa) * g.wr_lo -
                (phi[m_lo + 1] - phi_int) * dt + 0.5 * rem * dt;
        }
        note("right", lhs, rhs, m_hi);
      }
    }
  }
  worst_slack_ = std::min(worst_slack_, step_worst);
  if (record_per_step_ && report_)
    report_->add("dei_step_worst", ctx.n, -step_worst, kSlack);
}

void TraceObserver::on_step(const StepContext& ctx) {
  for (const InterfaceStepInfo& info : *ctx.ifaces) {
    TraceRecord r;
    r.step = ctx.n;
    r.t = ctx.t_lo;
    r.src_id = info.src_id;
    r.y = ctx.mesh_lo->nodes[info.node_lo];
    r.s = info.geom.s;
    r.q = info.geom.q;
    r.f_int = info.f_int;
    r.trace_left = info.trace_left;
    r.trace_right = info.trace_right;
    r.germ = classify_germ(*ctx.flux, r.s, r.q, r.trace_left, r.trace_right,
                           germ_tol_);
    records_.push_back(r);
  }
}

void MassAuditObserver::on_step(const StepContext& ctx) {
  double mass_lo = 0.0, mass_hi = 0.0;
  for (std::size_t c = 0; c < ctx.vals_lo->size(); ++c)
    mass_lo += (*ctx.vals_lo)[c] * ctx.mesh_lo->cell_width(static_cast<int>(c));
  for (std::size_t c = 0; c < ctx.vals_hi->size(); ++c)
    mass_hi += (*ctx.vals_hi)[c] * ctx.mesh_hi->cell_width(static_cast<int>(c));

  if (ctx.transition && last_mass_ >= 0.0)
    max_transition_drift_ =
        std::max(max_transition_drift_, std::abs(mass_lo - last_mass_));

  const double dt = ctx.cfg->dt();
  const double drift = mass_hi - mass_lo +
                       (ctx.node_flux->back() - ctx.node_flux->front()) * dt;
  max_drift_ = std::max(max_drift_, std::abs(drift));
  if (report_ && std::abs(drift) > 1e-10)
    report_->add("mass_drift", ctx.n, std::abs(drift), 1e-10);
  last_mass_ = mass_hi;
}

void BoundaryMonitor::on_step(const StepContext& ctx) {
  if (!primed_) {
    left_ref_ = ctx.vals_lo->front();
    right_ref_ = ctx.vals_lo->back();
    primed_ = true;
  }
  const std::vector<double>& v = *ctx.vals_hi;
  const std::size_t n = v.size();
  if (std::abs(v[0] - left_ref_) > 1e-9 ||
      std::abs(v[1] - left_ref_) > 1e-9 ||
      std::abs(v[n - 1] - right_ref_) > 1e-9 ||
      std::abs(v[n - 2] - right_ref_) > 1e-9)
    quiet_ = false;
}

// ---------------------------------------------------------------------------

double Bump::b(double u) {
  const double u2 = u * u;
  if (u2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u2));
}

double Bump::db(double u) {
  const double u2 = u * u;
  if (u2 >= 1.0) return 0.0;
  const double d = 1.0 - u2;
  return b(u) * (-2.0 * u / (d * d));
}

double Bump::value(double x, double t) const {
  return b((x - xc) / wx) * b((t - tc) / wt);
}

double Bump::ddx(double x, double t) const {
  return db((x - xc) / wx) / wx * b((t - tc) / wt);
}

double Bump::ddt(double x, double t) const {
  return b((x - xc) / wx) * db((t - tc) / wt) / wt;
}

std::vector<Bump> make_bump_family(double x0, double x1, double horizon) {
  const double len = x1 - x0;
  const double centers[4] = {0.35, 0.48, 0.61, 0.74};
  const double widths[3] = {0.08, 0.15, 0.25};
  std::vector<Bump> out;
  out.reserve(12);
  for (double c : centers) {
    for (double w : widths) {
      Bump bump;
      bump.xc = x0 + c * len;
      bump.wx = w * len;
      bump.tc = 0.5 * horizon;
      bump.wt = 0.45 * horizon;
      out.push_back(bump);
    }
  }
  return out;
}

EntropyResidualObserver::EntropyResidualObserver(std::vector<Bump> bumps,
                                                 std::vector<double> kappas)
    : bumps_(std::move(bumps)), kappas_(std::move(kappas)) {
  acc_.assign(bumps_.size() * kappas_.size(), 0.0);
}

void EntropyResidualObserver::on_step(const StepContext& ctx) {
  const FluxModel& m = *ctx.flux;
  const std::vector<double>& lo = *ctx.vals_lo;
  const LevelMesh& mesh = *ctx.mesh_lo;
  const int cells = static_cast<int>(lo.size());
  const double dt = ctx.cfg->dt();
  const double t_mid = 0.5 * (ctx.t_lo + ctx.t_hi);

  if (!initial_done_) {
    for (std::size_t i = 0; i < bumps_.size(); ++i)
      for (std::size_t j = 0; j < kappas_.size(); ++j) {
        double acc = 0.0;
        for (int c = 0; c < cells; ++c)
          acc += std::abs(lo[c] - kappas_[j]) *
                 bumps_[i].value(mesh.cell_center(c), ctx.t_lo) *
                 mesh.cell_width(c);
        acc_[i * kappas_.size() + j] += acc;
      }
    initial_done_ = true;
  }

  // Region geometry: every t^n cell is a trapezoid whose interface-side
  // edge moves with the interface.
  std::vector<double> w_hi(cells), x_mid(cells);
  for (int c = 0; c < cells; ++c) {
    w_hi[c] = mesh.cell_width(c);
    x_mid[c] = mesh.cell_center(c);
  }
  for (const InterfaceStepInfo& info : *ctx.ifaces) {
    const int ml = info.node_lo;
    const double y_hi = ctx.mesh_hi->nodes[info.node_hi];
    w_hi[ml - 1] = y_hi - mesh.nodes[ml - 1];
    w_hi[ml] = mesh.nodes[ml + 1] - y_hi;
    x_mid[ml - 1] = 0.25 * (2.0 * mesh.nodes[ml - 1] + mesh.nodes[ml] + y_hi);
    x_mid[ml] = 0.25 * (mesh.nodes[ml] + y_hi + 2.0 * mesh.nodes[ml + 1]);
  }

  // Per-kappa cell data.
  std::vector<double> adev(cells), phi(cells);
  for (std::size_t j = 0; j < kappas_.size(); ++j) {
    const double kappa = kappas_[j];
    for (int c = 0; c < cells; ++c) {
      adev[c] = std::abs(lo[c] - kappa);
      phi[c] = entropy_eo(m, kappa, lo[std::max(0, c - 1)], lo[c]);
    }
    for (std::size_t i = 0; i < bumps_.size(); ++i) {
      const Bump& bump = bumps_[i];
      if (Bump::b((t_mid - bump.tc) / bump.wt) == 0.0) continue;
      const auto lo_it = std::lower_bound(mesh.nodes.begin(),
                                          mesh.nodes.end(), bump.xc - bump.wx);
      const auto hi_it = std::upper_bound(mesh.nodes.begin(),
                                          mesh.nodes.end(), bump.xc + bump.wx);
      const int c0 =
          std::max<int>(0, static_cast<int>(lo_it - mesh.nodes.begin()) - 1);
      const int c1 =
          std::min<int>(cells, static_cast<int>(hi_it - mesh.nodes.begin()));
      double acc = 0.0;
      for (int c = c0; c < c1; ++c) {
        const double area = 0.5 * (mesh.cell_width(c) + w_hi[c]) * dt;
        acc += (adev[c] * bump.ddt(x_mid[c], t_mid) +
                phi[c] * bump.ddx(x_mid[c], t_mid)) *
               area;
      }
      // Interface remainder term.
      for (const InterfaceStepInfo& info : *ctx.ifaces) {
        const double y_mid =
            0.5 * (mesh.nodes[info.node_lo] +
                   ctx.mesh_hi->nodes[info.node_hi]);
        acc += remainder(m, info.geom.s, kappa, info.geom.q) *
               bump.value(y_mid, t_mid) * dt;
      }
      acc_[i * kappas_.size() + j] += acc;
    }
  }
}

double EntropyResidualObserver::residual(int i, int j) const {
  return acc_[static_cast<std::size_t>(i) * kappas_.size() + j];
}

double EntropyResidualObserver::min_residual() const {
  double r = std::numeric_limits<double>::infinity();
  for (double v : acc_) r = std::min(r, v);
  return r;
}

ConstraintResidualObserver::ConstraintResidualObserver(
    std::vector<Bump> bumps, int iface_src_id)
    : bumps_(std::move(bumps)), src_id_(iface_src_id) {
  acc_.assign(bumps_.size(), 0.0);
}

void ConstraintResidualObserver::on_step(const StepContext& ctx) {
  const FluxModel& m = *ctx.flux;
  const std::vector<double>& lo = *ctx.vals_lo;
  const LevelMesh& mesh = *ctx.mesh_lo;
  const int cells = static_cast<int>(lo.size());
  const double dt = ctx.cfg->dt();
  const double t_mid = 0.5 * (ctx.t_lo + ctx.t_hi);

  const InterfaceStepInfo* target = nullptr;
  for (const InterfaceStepInfo& info : *ctx.ifaces)
    if (info.src_id == src_id_) target = &info;
  if (!target) return;

  const int ml = target->node_lo;
  const double y_hi = ctx.mesh_hi->nodes[target->node_hi];
  const double y_mid = 0.5 * (mesh.nodes[ml] + y_hi);

  for (std::size_t i = 0; i < bumps_.size(); ++i) {
    const Bump& bump = bumps_[i];
    if (Bump::b((t_mid - bump.tc) / bump.wt) == 0.0) continue;
    double acc = 0.0;
    for (int c = ml; c < cells; ++c) {
      double w_hi = mesh.cell_width(c);
      double x_mid = mesh.cell_center(c);
      if (c == ml) {  // right interface cell: its left edge moves
        w_hi = mesh.nodes[ml + 1] - y_hi;
        x_mid = 0.25 * (mesh.nodes[ml] + y_hi + 2.0 * mesh.nodes[ml + 1]);
      }
      // F_Delta: Engquist-Osher flux across the cell's left edge.
      const double f_cell =
          engquist_osher(m, lo[std::max(0, c - 1)], lo[c]);
      const double area = 0.5 * (mesh.cell_width(c) + w_hi) * dt;
      acc -= (lo[c] * bump.ddt(x_mid, t_mid) +
              f_cell * bump.ddx(x_mid, t_mid)) *
             area;
    }
    acc -= target->geom.q * bump.value(y_mid, t_mid) * dt;
    acc_[i] += acc;
  }
}

double ConstraintResidualObserver::max_residual() const {
  double r = -std::numeric_limits<double>::infinity();
  for (double v : acc_) r = std::max(r, v);
  return r;
}

// ---------------------------------------------------------------------------

double l1_distance(const LevelMesh& mesh_a, std::span<const double> vals_a,
                   const LevelMesh& mesh_b, std::span<const double> vals_b) {
  return l1_window(mesh_a, vals_a, mesh_b, vals_b,
                   -std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity());
}

L1StabilityResult l1_stability_check(const Simulator& run_a,
                                     const Simulator& run_b) {
  const RunConfig& ca = run_a.config();
  const RunConfig& cb = run_b.config();
  if (ca.grid.n_cells != cb.grid.n_cells || ca.grid.dx != cb.grid.dx ||
      ca.scheme.lambda != cb.scheme.lambda ||
      ca.scheme.horizon != cb.scheme.horizon ||
      ca.interfaces.size() != cb.interfaces.size())
    throw ConfigMismatch("l1_stability_check: runs use different configs");
  for (std::size_t i = 0; i < ca.interfaces.size(); ++i) {
    const InterfaceSpec& a = ca.interfaces[i];
    const InterfaceSpec& b = cb.interfaces[i];
    if (a.path.size() != b.path.size())
      throw ConfigMismatch("l1_stability_check: trajectories differ");
    for (std::size_t k = 0; k < a.path.size(); ++k)
      if (a.path[k].t != b.path[k].t || a.path[k].y != b.path[k].y)
        throw ConfigMismatch("l1_stability_check: trajectories differ");
  }

  L1StabilityResult r;
  r.lhs = l1_distance(run_a.field().mesh, run_a.field().values,
                      run_b.field().mesh, run_b.field().values);

  // ||rho_o - sigma_o||_1, exact for the piecewise-constant presets.
  double d0 = 0.0;
  {
    std::vector<double> cuts{ca.grid.x_min, ca.grid.x_max};
    auto collect = [&cuts](const InitialDatum& d) {
      if (d.kind == InitialDatum::Kind::Indicator) {
        cuts.push_back(d.from);
        cuts.push_back(d.to);
      } else if (d.kind == InitialDatum::Kind::Piecewise) {
        cuts.insert(cuts.end(), d.breaks.begin(), d.breaks.end());
      }
    };
    collect(ca.initial);
    collect(cb.initial);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double a = std::max(cuts[k], ca.grid.x_min);
      const double b = std::min(cuts[k + 1], ca.grid.x_max);
      if (b <= a) continue;
      const double xm = 0.5 * (a + b);
      d0 += std::abs(ca.initial.eval(xm) - cb.initial.eval(xm)) * (b - a);
    }
  }
  r.rhs = d0;

  // 2 * sum_i int |q_i - r_i| dt, exact for piecewise-constant constraints.
  const double t_end = ca.scheme.horizon;
  for (std::size_t i = 0; i < ca.interfaces.size(); ++i) {
    const InterfaceSpec& a = ca.interfaces[i];
    const InterfaceSpec& b = cb.interfaces[i];
    std::vector<double> cuts{std::max(0.0, a.start_time),
                             std::min(t_end, a.end_time)};
    for (const ConstraintSegment& s : a.constraint) {
      cuts.push_back(s.t_begin);
      cuts.push_back(s.t_end);
    }
    for (const ConstraintSegment& s : b.constraint) {
      cuts.push_back(s.t_begin);
      cuts.push_back(s.t_end);
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double t0 = std::max(cuts[k], std::max(0.0, a.start_time));
      const double t1 = std::min(cuts[k + 1], std::min(t_end, a.end_time));
      if (t1 <= t0) continue;
      const double tm = 0.5 * (t0 + t1);
      r.rhs += 2.0 * std::abs(a.constraint_at(tm) - b.constraint_at(tm)) *
               (t1 - t0);
    }
  }
  return r;
}

double l1_error_vs_riemann(const SolutionField& field, const FluxModel& m,
                           double s, double q, double rho_l, double rho_r,
                           double x_c, double t) {
  // 8-point Gauss-Legendre per cell, cells split at the interface line.
  static const double gx[8] = {-0.9602898564975362, -0.7966664774136267,
                               -0.5255324099163290, -0.1834346424956498,
                               0.1834346424956498,  0.5255324099163290,
                               0.7966664774136267,  0.9602898564975362};
  static const double gw[8] = {0.1012285362903763, 0.2223810344533745,
                               0.3137066458778873, 0.3626837833783620,
                               0.3626837833783620, 0.3137066458778873,
                               0.2223810344533745, 0.1012285362903763};
  const double x_if = x_c + s * t;
  double err = 0.0;
  for (int c = 0; c < field.mesh.cell_count(); ++c) {
    double edges[3] = {field.mesh.nodes[c], field.mesh.nodes[c + 1], 0.0};
    int n_seg = 1;
    if (x_if > edges[0] && x_if < edges[1]) {
      edges[2] = edges[1];
      edges[1] = x_if;
      n_seg = 2;
    }
    for (int seg = 0; seg < n_seg; ++seg) {
      const double a = edges[seg], b = edges[seg + 1];
      const double h = 0.5 * (b - a);
      double acc = 0.0;
      for (int k = 0; k < 8; ++k) {
        const double x = a + h * (1.0 + gx[k]);
        const double exact =
            exact_constrained_riemann(m, s, q, rho_l, rho_r, (x - x_c) / t);
        acc += gw[k] * std::abs(field.values[c] - exact);
      }
      err += acc * h;
    }
  }
  return err;
}

}  // namespace lwr
