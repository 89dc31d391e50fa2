#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cesforge/darboux.hpp"
#include "cesforge/eigensolver.hpp"
#include "cesforge/error.hpp"
#include "cesforge/factorization.hpp"
#include "cesforge/oscillator.hpp"
#include "cesforge/verification.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace cesforge;

namespace {

TransformKind kind_of(const std::string& name) { return TransformKind::parse(name); }

py::dict spec_dict(const FactorizationSpec& s) {
  return py::dict("kind"_a = s.kind.name(), "gamma"_a = s.gamma, "N"_a = s.n, "A"_a = s.A, "B"_a = s.B,
                  "C"_a = s.C, "a"_a = s.a, "b"_a = s.b, "epsilon"_a = s.epsilon);
}

Grid grid_from(const std::optional<std::tuple<double, double, double>>& g, Geometry geometry) {
  if (!g) return geometry == Geometry::line ? Grid::line_default() : Grid::radial_default();
  return Grid(std::get<0>(*g), std::get<1>(*g), std::get<2>(*g), geometry);
}

}  // namespace

PYBIND11_MODULE(cesforge, m) {
  m.doc() = "Oscillator partner potentials from Darboux transformations";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("kummer", [](double a, double b, double z) { return specfun::kummer(a, b, z); }, "a"_a, "b"_a, "z"_a);
  m.def("polynomial_form", [](int n, double b) { return specfun::polynomial_form(n, b).coefficients(); },
        "n"_a, "b"_a);

  py::class_<PhiFunction>(m, "Phi")
      .def("__call__", &PhiFunction::operator(), "r"_a)
      .def("log_derivative", &PhiFunction::log_derivative, "r"_a)
      .def("log_second_derivative", &PhiFunction::log_second_derivative, "r"_a)
      .def_property_readonly("is_polynomial", &PhiFunction::is_polynomial);

  py::class_<PotentialModel>(m, "Potential")
      .def("__call__", &PotentialModel::operator(), "r"_a)
      .def("describe", &PotentialModel::describe)
      .def_property_readonly("quad", &PotentialModel::quad)
      .def_property_readonly("centrifugal", &PotentialModel::centrifugal)
      .def_property_readonly("constant", &PotentialModel::constant)
      .def_property_readonly("rational_terms", [](const PotentialModel& v) {
        py::list out;
        for (const auto& t : v.rational_terms()) out.append(py::dict("p"_a = t.p, "q"_a = t.q, "g"_a = t.g));
        return out;
      });

  m.def("base_potential", [](double gamma) { return base_potential(OscillatorParams::radial(gamma)); },
        "gamma"_a);
  m.def("line_potential", [] { return base_potential(OscillatorParams::line()); });

  m.def(
      "build_phi",
      [](const std::string& kind, double gamma, int n) {
        PhiConstruction c = build_phi(kind_of(kind), gamma, n);
        return py::make_tuple(spec_dict(c.spec), c.phi);
      },
      "kind"_a, "gamma"_a, "n"_a);
  m.def("nodes", [](const PhiFunction& phi) { return check_nodeless(phi, phi.domain()).nodes; }, "phi"_a);
  m.def("closed_form_v2",
        [](const std::string& kind, double gamma, int n) { return closed_form_v2(kind_of(kind), gamma, n); },
        "kind"_a, "gamma"_a, "n"_a);
  m.def("product_phi", &product_phi, "gamma"_a, "g"_a, "B"_a);

  m.def(
      "solve_bound_states",
      [](const std::function<double(double)>& v, int n_states, const std::string& geometry,
         std::optional<std::tuple<double, double, double>> grid, std::optional<double> origin_exponent) {
        const Geometry geo = geometry == "line" ? Geometry::line : Geometry::radial;
        SolverOptions opts;
        opts.origin_exponent = origin_exponent;
        RealFn f = v;
        std::vector<double> energies;
        {
          py::gil_scoped_release release;
          RealFn locked = [&f](double r) {
            py::gil_scoped_acquire acquire;
            return f(r);
          };
          energies = solve_bound_states(locked, grid_from(grid, geo), n_states, opts).energies;
        }
        return energies;
      },
      "v"_a, "n_states"_a, "geometry"_a = "radial", "grid"_a = py::none(), "origin_exponent"_a = py::none());

  m.def(
      "partner_levels",
      [](const std::string& kind, double gamma, int n, int n_states) {
        const TransformKind k = kind_of(kind);
        const PhiConstruction c = build_phi(k, gamma, n);
        const PotentialModel v2 = closed_form_v2(k, gamma, n);
        SolverOptions opts;
        const bool line = k.tag == TransformTag::OneDim;
        if (!line) opts.origin_exponent = partner_origin_exponent(c.spec);
        py::gil_scoped_release release;
        return solve_bound_states([&v2](double r) { return v2(r); },
                                  line ? Grid::line_default() : Grid::radial_default(), n_states, opts)
            .energies;
      },
      "kind"_a, "gamma"_a, "n"_a, "n_states"_a = 4);

  m.def(
      "verify",
      [](const std::string& kind, double gamma, int n) {
        VerifyConfig cfg;
        cfg.kind = kind_of(kind);
        cfg.gamma = gamma;
        cfg.n = n;
        std::vector<CheckResult> results;
        {
          py::gil_scoped_release release;
          results = verify_case(cfg);
        }
        py::list out;
        for (const auto& r : results) {
          out.append(py::dict("check"_a = r.name, "status"_a = to_string(r.status), "value"_a = r.value,
                              "tolerance"_a = r.tolerance, "detail"_a = r.detail));
        }
        return out;
      },
      "kind"_a, "gamma"_a, "n"_a);
}
