#include <cmath>

#include <doctest.h>

#include "lwr/diagnostics.hpp"
#include "lwr/simulator.hpp"

using namespace lwr;

namespace {

InterfaceSpec line(int id, double t0, double t1, double y0, double slope,
                   double q) {
  InterfaceSpec s;
  s.id = id;
  s.start_time = t0;
  s.end_time = t1;
  s.path = {{t0, y0}, {t1, y0 + slope * (t1 - t0)}};
  s.constraint = {{t0, t1, q}};
  return s;
}

RunConfig base_config(double x0, double x1, double dx, double lambda,
                      double horizon) {
  RunConfig cfg;
  cfg.grid = GridSpec::from_extent(x0, x1, dx);
  cfg.scheme.dx = dx;
  cfg.scheme.lambda = lambda;
  cfg.scheme.horizon = horizon;
  cfg.initial = InitialDatum::constant(0.4);
  return cfg;
}

}  // namespace

TEST_CASE("locality: a distant interface does not leak into the window") {
  // two interfaces 100 dx apart; near interface A the field must be
  // bit-identical to a single-interface run of A
  const double dx = 0.01;
  RunConfig both = base_config(0.0, 6.0, dx, 0.4, 0.2);
  both.interfaces = {line(1, 0.0, 1.0, 2.0037, 0.0, 0.08),
                     line(2, 0.0, 1.0, 3.0091, 0.0, 0.05)};
  RunConfig only_a = both;
  only_a.interfaces = {both.interfaces[0]};

  Simulator sa(both);
  Simulator sb(only_a);
  sa.run();
  sb.run();
  // 0.2/dt steps * 1 cell/step influence radius + interface window
  const SolutionField& fa = sa.field();
  const SolutionField& fb = sb.field();
  for (double x = 1.6; x <= 2.45; x += dx / 2)
    CHECK(fa.at(x) == doctest::Approx(fb.at(x)).epsilon(1e-14));
}

TEST_CASE("merged phase with an identical pair equals the single run") {
  const double dx = 0.01;
  RunConfig pair = base_config(0.0, 4.0, dx, 0.4, 0.5);
  pair.interfaces = {line(1, 0.0, 1.0, 2.0033, 0.1, 0.08),
                     line(2, 0.0, 1.0, 2.0033, 0.1, 0.08)};
  RunConfig single = pair;
  single.interfaces = {pair.interfaces[0]};

  Simulator sp(pair);
  CHECK(sp.is_merged_phase(0));  // identical positions merge immediately
  Simulator ss(single);
  sp.run();
  ss.run();
  for (int c = 0; c < sp.field().mesh.cell_count(); ++c)
    CHECK(sp.field().values[c] ==
          doctest::Approx(ss.field().values[c]).epsilon(1e-13));
}

TEST_CASE("endpoint transitions conserve mass") {
  const double dx = 0.01;
  RunConfig cfg = base_config(0.0, 4.0, dx, 0.375, 1.0);
  cfg.initial = InitialDatum::indicator(0.8, 2.6, 0.7);
  // activates at t = 0.25, deactivates at t = 0.75 around a saturated state
  cfg.interfaces = {line(1, 0.25, 0.75, 1.8072, 0.0, 0.06)};

  Simulator sim(cfg);
  MassAuditObserver mass;
  sim.add_observer(&mass);
  sim.run();
  CHECK(mass.max_drift() <= 1e-10);
  CHECK(mass.max_transition_drift() <= 1e-10);
  CHECK(sim.field().mesh.iface_nodes.empty());  // deactivated again
}

TEST_CASE("endpoint_transition: activation, deactivation, conservation") {
  const GridSpec g = GridSpec::from_extent(0.0, 2.0, 0.05);
  SolutionField f = project_initial(InitialDatum::indicator(0.4, 1.3, 0.8),
                                    build_level_mesh(g, {}));

  SolutionField on = endpoint_transition(f, 1.0321, EndpointKind::Activate);
  REQUIRE(on.mesh.iface_nodes.size() == 1);
  CHECK(on.mass() == doctest::Approx(f.mass()).epsilon(1e-13));
  // activation matches projecting the datum straight onto the adapted mesh
  const double y[1] = {1.0321};
  const SolutionField direct = project_initial(
      InitialDatum::indicator(0.4, 1.3, 0.8), build_level_mesh(g, y));
  for (std::size_t c = 0; c < on.values.size(); ++c)
    CHECK(on.values[c] == doctest::Approx(direct.values[c]).epsilon(1e-13));

  // deactivation around a sharp jump conserves mass exactly
  SolutionField rough = on;
  for (int c = 0; c < rough.mesh.cell_count(); ++c)
    rough.values[c] = rough.mesh.cell_center(c) < 1.0321 ? 0.887 : 0.113;
  SolutionField off =
      endpoint_transition(rough, 1.0321, EndpointKind::Deactivate);
  CHECK(off.mesh.iface_nodes.empty());
  CHECK(off.mass() == doctest::Approx(rough.mass()).epsilon(1e-13));

  // activate then deactivate at the same position is the exact inverse
  // where the field is locally constant around the interface
  SolutionField back = endpoint_transition(on, 1.0321,
                                           EndpointKind::Deactivate);
  for (std::size_t c = 0; c < f.values.size(); ++c)
    CHECK(back.values[c] == doctest::Approx(f.values[c]).epsilon(1e-14));

  CHECK_THROWS_AS(endpoint_transition(f, 1.0, EndpointKind::Deactivate),
                  PreconditionError);
}

TEST_CASE("activate/deactivate round trip leaves a plateau untouched") {
  // on locally constant data the split/merge pair is an exact inverse
  const double dx = 0.05;
  const GridSpec g = GridSpec::from_extent(0.0, 2.0, dx);
  const LevelMesh uniform = build_level_mesh(g, {});
  std::vector<double> vals(uniform.cell_count(), 0.55);

  const double y[1] = {1.0321};
  const LevelMesh adapted = build_level_mesh(g, y);
  const std::vector<double> split =
      project_between_meshes(uniform, vals, adapted);
  const std::vector<double> back =
      project_between_meshes(adapted, split, uniform);
  for (std::size_t c = 0; c < vals.size(); ++c)
    CHECK(back[c] == doctest::Approx(vals[c]).epsilon(1e-14));
}

TEST_CASE("undeclared transversal crossing is rejected") {
  // interface 2 overtakes interface 1 at t = 0.5, strictly inside both
  // lifetimes and with no declared crossing point
  RunConfig cfg = base_config(0.0, 4.0, 0.01, 0.375, 1.0);
  cfg.interfaces = {line(1, 0.0, 1.0, 2.0, 0.0, 0.08),
                    line(2, 0.0, 1.0, 1.85, 0.3, 0.08)};
  CHECK_THROWS_AS(Simulator{cfg}, ValidationError);
}

TEST_CASE("declared crossing endpoints must match") {
  RunConfig cfg = base_config(0.0, 4.0, 0.01, 0.375, 1.0);
  cfg.interfaces = {line(1, 0.0, 0.5, 2.0, 0.0, 0.08),
                    line(2, 0.5, 1.0, 2.0, 0.2, 0.08)};
  cfg.crossings = {{0.5, 2.0, {1}, {2}}};
  CHECK_NOTHROW(Simulator{cfg});
  cfg.crossings = {{0.5, 2.5, {1}, {2}}};
  CHECK_THROWS_AS(Simulator{cfg}, ValidationError);
}

TEST_CASE("approach and separation without a crossing") {
  // interface 1 accelerates toward a stationary interface 2, comes within
  // 4 dx, then interface 2 pulls away: merged in between, independent on
  // both sides, conservative handoffs throughout
  const double dx = 0.01;
  RunConfig cfg = base_config(0.0, 4.0, dx, 0.375, 2.0);
  InterfaceSpec a;
  a.id = 1;
  a.start_time = 0.0;
  a.end_time = 3.0;
  a.path = {{0.0, 1.0}, {1.0, 1.3}, {3.0, 1.3}};
  a.constraint = {{0.0, 3.0, 0.06}};
  InterfaceSpec b;
  b.id = 2;
  b.start_time = 0.0;
  b.end_time = 3.0;
  b.path = {{0.0, 1.32}, {1.0, 1.32}, {3.0, 1.92}};
  b.constraint = {{0.0, 3.0, 0.05}};
  cfg.interfaces = {a, b};

  Simulator sim(cfg);
  bool merged_mid = false, independent_late = false;
  for (int n = 0; n < sim.total_steps(); ++n) {
    const double t = n * cfg.scheme.dt();
    if (t > 0.95 && t < 1.05) merged_mid |= sim.is_merged_phase(n);
    if (t > 1.5) independent_late |= !sim.is_merged_phase(n);
  }
  CHECK(merged_mid);
  CHECK(independent_late);

  MassAuditObserver mass;
  sim.add_observer(&mass);
  sim.run();
  CHECK(mass.max_drift() <= 1e-10);
  CHECK(mass.max_transition_drift() <= 1e-10);
  CHECK(sim.field().mesh.iface_nodes.size() == 2);
  for (double v : sim.field().values) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("catch-up, merge and release around a declared crossing") {
  // a moving interface reaches a stationary one at t = 1; a single moving
  // interface continues from the crossing
  const double dx = 0.005;
  RunConfig cfg = base_config(0.0, 4.0, dx, 0.375, 1.5);
  cfg.initial = InitialDatum::constant(0.5);
  cfg.interfaces = {line(1, 0.0, 1.0, 2.0, 0.0, 0.1),
                    line(2, 0.0, 1.0, 1.7, 0.3, 0.12),
                    line(3, 1.0, 1.5, 2.0, 0.3, 0.09)};
  cfg.crossings = {{1.0, 2.0, {1, 2}, {3}}};

  Simulator sim(cfg);
  MassAuditObserver mass;
  sim.add_observer(&mass);

  bool saw_merge = false;
  for (int n = 0; n < sim.total_steps(); ++n)
    saw_merge |= sim.is_merged_phase(n);
  CHECK(saw_merge);

  // merged phase starts when the gap reaches 4 dx: 0.3 - 0.3 t <= 0.02
  int first_merged = -1;
  for (int n = 0; n < sim.total_steps(); ++n)
    if (sim.is_merged_phase(n)) {
      first_merged = n;
      break;
    }
  REQUIRE(first_merged >= 0);
  const double t_merge = first_merged * cfg.scheme.dt();
  CHECK(t_merge == doctest::Approx((0.3 - 4.0 * dx) / 0.3).epsilon(0.02));

  sim.run();
  CHECK(mass.max_drift() <= 1e-10);
  CHECK(mass.max_transition_drift() <= 1e-10);
  // the post-crossing interface is alone and active at the end
  const auto act = sim.active_at(sim.total_steps() - 1);
  REQUIRE(act.size() == 1);
  CHECK(act[0].src_id == 3);
  for (double v : sim.field().values) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}
