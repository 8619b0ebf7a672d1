#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lwr/archive.hpp"
#include "lwr/riemann.hpp"

namespace py = pybind11;
using namespace lwr;

namespace {

const char* germ_name(GermClass g) {
  switch (g) {
    case GermClass::G1: return "G1";
    case GermClass::G2: return "G2";
    case GermClass::G3: return "G3";
    case GermClass::NotInGerm: return "none";
  }
  return "none";
}

py::dict run_scenario_py(const std::string& path, const std::string& out_dir,
                         bool dei) {
  const ScenarioFile sc = parse_scenario(path);
  RunOptions opt;
  opt.force_dei = dei;
  const RunOutputs out = run_scenario(sc, opt);
  if (!out_dir.empty()) write_archive(out_dir, sc, out);

  py::dict d;
  d["steps"] = out.steps;
  d["dt"] = out.dt;
  d["cells"] = out.final_field.mesh.cell_count();
  d["max_mass_drift"] = out.max_mass_drift;
  d["max_transition_drift"] = out.max_transition_drift;
  d["boundary_quiet"] = out.boundary_quiet;
  d["diagnostics_failures"] = out.report.failures();
  d["snapshots"] = static_cast<int>(out.snapshots.size());

  std::vector<double> x, rho;
  for (int c = 0; c < out.final_field.mesh.cell_count(); ++c) {
    x.push_back(out.final_field.mesh.cell_center(c));
    rho.push_back(out.final_field.values[c]);
  }
  d["x"] = x;
  d["rho"] = rho;

  if (!out.traces.empty()) {
    const TraceRecord& last = out.traces.back();
    py::dict t;
    t["t"] = last.t;
    t["y"] = last.y;
    t["q"] = last.q;
    t["f_int"] = last.f_int;
    t["trace_left"] = last.trace_left;
    t["trace_right"] = last.trace_right;
    t["germ"] = germ_name(last.germ);
    d["last_trace"] = t;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(lwrfv, m) {
  m.doc() =
      "Finite volume solver for the LWR model with flux constraints along "
      "moving interfaces";

  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<ParseError>(m, "ScenarioParseError", PyExc_ValueError);
  py::register_exception<InadmissibleConstraint>(m, "InadmissibleConstraint",
                                                 PyExc_ValueError);

  py::class_<FluxModel>(m, "FluxModel")
      .def_static("quadratic", &FluxModel::quadratic)
      .def_static(
          "custom",
          [](std::function<double(double)> f,
             std::function<double(double)> fp, double rho_bar, double mu,
             double lipschitz) {
            FluxModel model =
                FluxModel::custom(std::move(f), std::move(fp), rho_bar, mu,
                                  lipschitz);
            model.validate();
            return model;
          },
          py::arg("f"), py::arg("f_prime"), py::arg("rho_bar"), py::arg("mu"),
          py::arg("lipschitz"))
      .def("__call__",
           [](const FluxModel& f, double rho) { return eval_flux(f, rho); })
      .def_property_readonly("rho_bar", &FluxModel::rho_bar)
      .def_property_readonly("mu", &FluxModel::mu)
      .def_property_readonly("lipschitz", &FluxModel::lipschitz);

  py::class_<GermCouple>(m, "GermCouple")
      .def_readonly("rho_hat", &GermCouple::rho_hat)
      .def_readonly("rho_check", &GermCouple::rho_check)
      .def_readonly("s", &GermCouple::s)
      .def_readonly("q", &GermCouple::q)
      .def("__repr__", [](const GermCouple& g) {
        return "GermCouple(rho_hat=" + std::to_string(g.rho_hat) +
               ", rho_check=" + std::to_string(g.rho_check) + ")";
      });

  m.def("eval_flux", &eval_flux, py::arg("model"), py::arg("rho"));
  m.def("shifted_flux", &shifted_flux, py::arg("model"), py::arg("s"),
        py::arg("rho"));
  m.def("entropy_flux", &entropy_flux, py::arg("model"), py::arg("s"),
        py::arg("a"), py::arg("b"));
  m.def("max_shifted_flux", &max_shifted_flux, py::arg("model"), py::arg("s"));
  m.def("constraint_admissible", &constraint_admissible, py::arg("model"),
        py::arg("s"), py::arg("q"));
  m.def("germ_couple", &germ_couple, py::arg("model"), py::arg("s"),
        py::arg("q"));
  m.def("remainder", &lwr::remainder, py::arg("model"), py::arg("s"),
        py::arg("kappa"), py::arg("q"));
  m.def(
      "classify_germ",
      [](const FluxModel& model, double s, double q, double k_l, double k_r,
         double tol) {
        return std::string(germ_name(classify_germ(model, s, q, k_l, k_r,
                                                   tol)));
      },
      py::arg("model"), py::arg("s"), py::arg("q"), py::arg("k_l"),
      py::arg("k_r"), py::arg("tol") = 1e-9);
  m.def("engquist_osher", &engquist_osher, py::arg("model"), py::arg("a"),
        py::arg("b"));
  m.def("godunov_shifted", &godunov_shifted, py::arg("model"), py::arg("s"),
        py::arg("a"), py::arg("b"));
  m.def("interface_flux", &interface_flux, py::arg("model"), py::arg("s"),
        py::arg("q"), py::arg("a"), py::arg("b"));

  m.def(
      "exact_riemann",
      [](double s, double q, double left, double right, double xi) {
        return exact_constrained_riemann(FluxModel::quadratic(), s, q, left,
                                         right, xi);
      },
      py::arg("s"), py::arg("q"), py::arg("left"), py::arg("right"),
      py::arg("xi"),
      "Exact constrained-Riemann value at xi = x/t for the quadratic flux");

  m.def("run_scenario", &run_scenario_py, py::arg("path"),
        py::arg("out_dir") = std::string(), py::arg("dei") = false,
        "Run a scenario file; optionally write an archive directory");
  m.def(
      "canonicalize_scenario",
      [](const std::string& text) {
        return serialize_scenario(parse_scenario_text(text));
      },
      py::arg("text"), "Parse scenario text and return its canonical form");
}
