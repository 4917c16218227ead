#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dosc/algebra.hpp"
#include "dosc/clifford.hpp"
#include "dosc/fockspace3d.hpp"
#include "dosc/oscillator.hpp"
#include "dosc/spectrum.hpp"

namespace py = pybind11;
using namespace dosc;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string dump(const json& j) { return j.dump(); }

std::string reports(const std::vector<VerificationReport>& rs) {
    json a = json::array();
    for (const auto& r : rs) a.push_back(to_json(r));
    return dump(a);
}

OperatorRegistry registry(int dim, double mass, double omega, int n_max) {
    return build_registry(OscillatorModel::make(dim, mass, omega, n_max));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dirac oscillator on truncated Fock spaces";
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("dirac_representation", [](int d) { return dirac_representation(d).generators; }, py::arg("spatial_dim"),
          "alpha_1 .. alpha_d, beta");
    m.def("spin_matrices", [](int d) { return spin_matrices(dirac_representation(d)); }, py::arg("spatial_dim"));
    m.def("default_n_max", &OscillatorModel::default_n_max);

    py::class_<OperatorRegistry>(m, "Registry")
        .def(py::init(&registry), py::arg("dim"), py::arg("mass") = 1.0, py::arg("omega") = 1.0, py::arg("n_max") = -1)
        .def_property_readonly("side", &OperatorRegistry::side)
        .def_property_readonly("n_max", &OperatorRegistry::n_max)
        .def_property_readonly("mass", &OperatorRegistry::mass)
        .def_property_readonly("omega", &OperatorRegistry::omega)
        .def_property_readonly("occupation", &OperatorRegistry::occupation)
        .def("labels", &OperatorRegistry::labels)
        .def("__contains__", &OperatorRegistry::contains)
        .def("matrix", [](const OperatorRegistry& r, const std::string& l) { return r[l]; }, py::arg("label"),
             "scipy.sparse matrix of a registry operator")
        .def("degree", [](const OperatorRegistry& r, const std::string& l) -> py::object {
            const auto& d = r.at(l).degree;
            return d ? py::object(py::str(d->str())) : py::object(py::none());
        });

    m.def("residual",
          [](const OperatorRegistry& reg, const std::string& lhs, const std::string& rhs, int min_depth) {
              Relation r;
              r.id = lhs;
              r.lhs = parse_sexpr(lhs);
              r.rhs = parse_sexpr(rhs);
              r.min_depth = min_depth;
              EvalContext ctx{&reg, nullptr};
              return dump(to_json(check_relation(r, ctx, VerifyOptions{})));
          },
          py::arg("registry"), py::arg("lhs"), py::arg("rhs"), py::arg("min_depth") = 0);

    m.def("algebra_names", [] {
        std::vector<std::string> out;
        for (const auto& s : builtin_specs()) out.push_back(s.name);
        return out;
    });
    m.def("spec_json", [](const std::string& name) { return dump(spec_to_json(builtin_spec(name))); });
    m.def("verify_algebra",
          [](const OperatorRegistry& reg, const std::string& name, bool printed, double tol) {
              VerifyOptions o;
              o.tol = tol;
              o.use_printed = printed;
              return dump(to_json(verify_algebra(builtin_spec(name), reg, o)));
          },
          py::arg("registry"), py::arg("name"), py::arg("printed") = false, py::arg("tol") = 1e-10);
    m.def("verify_spec_json",
          [](const OperatorRegistry& reg, const std::string& text, double tol) {
              VerifyOptions o;
              o.tol = tol;
              return dump(to_json(verify_algebra(spec_from_json(json::parse(text)), reg, o)));
          },
          py::arg("registry"), py::arg("spec"), py::arg("tol") = 1e-10);
    m.def("jacobi",
          [](const OperatorRegistry& reg, const std::string& name, double tol) {
              return dump(to_json(colour_jacobi_sweep(builtin_spec(name), reg, tol)));
          },
          py::arg("registry"), py::arg("name"), py::arg("tol") = 1e-10);
    m.def("parastat_audit",
          [](const OperatorRegistry& reg, int dim, double tol) {
              return dump(to_json(parastatistics_audit_all(reg, dim, tol)));
          },
          py::arg("registry"), py::arg("dim"), py::arg("tol") = 1e-10);

    m.def("analytic_spectrum_1d", &analytic_spectrum_1d, py::arg("mass"), py::arg("omega"), py::arg("n_levels"));
    m.def("theorem_energy", &theorem_energy, py::arg("n"), py::arg("j2"), py::arg("mass"), py::arg("omega"));
    m.def("spectrum_report",
          [](int dim, double mass, double omega, int n_max, double tol, double edge_tol) {
              return dump(to_json(spectrum_report(OscillatorModel::make(dim, mass, omega, n_max), tol, edge_tol)));
          },
          py::arg("dim"), py::arg("mass") = 1.0, py::arg("omega") = 1.0, py::arg("n_max") = -1,
          py::arg("tol") = 1e-8, py::arg("edge_tol") = 1e-8);

    m.def("fock_basis",
          [](const OperatorRegistry& reg, int n_build, unsigned seed) {
              const FockBasis3D b = build_basis(reg, n_build);
              return reports({verify_basis(reg, b), verify_actions(reg, b), injectivity_report(reg, seed)});
          },
          py::arg("registry"), py::arg("n_build"), py::arg("seed") = 20240601u);
}
