#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ppgate/propagator.hpp"
#include "ppgate/sweep.hpp"
#include "ppgate/validate.hpp"

namespace py = pybind11;
using namespace ppgate;

namespace {

PulsePair make_pair_(const GateGeometry& geo) {
    PulsePair p;
    p.geometry = geo;
    return p;
}

}  // namespace

PYBIND11_MODULE(ppgate, m) {
    m.doc() = "photon-photon gate fidelity/phase simulation";

    py::register_exception<usage_error>(m, "UsageError", PyExc_ValueError);
    py::register_exception<numerical_error>(m, "NumericalError", PyExc_RuntimeError);

    py::class_<GateGeometry>(m, "GateGeometry")
        .def(py::init<>())
        .def_readwrite("sigma", &GateGeometry::sigma)
        .def_readwrite("lambda_", &GateGeometry::lambda)
        .def_readwrite("l", &GateGeometry::l)
        .def_readwrite("v", &GateGeometry::v)
        .def_readwrite("D", &GateGeometry::D)
        .def("k", &GateGeometry::k)
        .def("rayleigh", &GateGeometry::rayleigh)
        .def("l_over_r", &GateGeometry::l_over_r)
        .def("R", &GateGeometry::R)
        .def("l_hat", &GateGeometry::l_hat)
        .def_static("reference", &GateGeometry::reference, py::arg("R") = 0.0);

    py::enum_<PotentialKind>(m, "PotentialKind")
        .value("dipole", PotentialKind::dipole)
        .value("dipole_simplified", PotentialKind::dipole_simplified)
        .value("contact_regularized", PotentialKind::contact_regularized);

    py::class_<InteractionSpec>(m, "InteractionSpec")
        .def(py::init([](PotentialKind kind, double g, double epsilon) {
                 InteractionSpec s;
                 s.kind = kind;
                 s.g = g;
                 s.epsilon = epsilon;
                 s.validate();
                 return s;
             }),
             py::arg("kind") = PotentialKind::dipole, py::arg("g") = 0.0,
             py::arg("epsilon") = 0.0)
        .def_readwrite("kind", &InteractionSpec::kind)
        .def_readwrite("g", &InteractionSpec::g)
        .def_readwrite("epsilon", &InteractionSpec::epsilon);

    py::class_<GateResult>(m, "GateResult")
        .def_readonly("overlap", &GateResult::overlap)
        .def_readonly("F", &GateResult::F)
        .def_readonly("phi", &GateResult::phi)
        .def_readonly("phi_unwrapped", &GateResult::phi_unwrapped)
        .def_readonly("err_estimate", &GateResult::err_estimate)
        .def("__repr__", [](const GateResult& r) {
            return "GateResult(F=" + std::to_string(r.F) + ", phi=" + std::to_string(r.phi) + ")";
        });

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("index", &SweepRow::index)
        .def_readonly("g", &SweepRow::g)
        .def_readonly("R", &SweepRow::R)
        .def_readonly("F", &SweepRow::F)
        .def_readonly("phi_wrapped", &SweepRow::phi_wrapped)
        .def_readonly("phi_unwrapped", &SweepRow::phi_unwrapped)
        .def_readonly("err", &SweepRow::err)
        .def_readonly("ok", &SweepRow::ok);

    py::class_<TradeoffPoint>(m, "TradeoffPoint")
        .def_readonly("R", &TradeoffPoint::R)
        .def_readonly("g_star", &TradeoffPoint::g_star)
        .def_readonly("F", &TradeoffPoint::F)
        .def_readonly("phi", &TradeoffPoint::phi)
        .def_readonly("err", &TradeoffPoint::err);

    py::class_<ModeMixTensor>(m, "ModeMixTensor")
        .def_readonly("max_order", &ModeMixTensor::max_order)
        .def_readonly("g", &ModeMixTensor::g)
        .def_readonly("R", &ModeMixTensor::R)
        .def("at", &ModeMixTensor::at, py::arg("m"), py::arg("n"), py::arg("l"), py::arg("k"))
        .def("sum_sq", &ModeMixTensor::sum_sq);

    py::class_<SchmidtResult>(m, "SchmidtResult")
        .def_readonly("singular_values", &SchmidtResult::singular_values)
        .def_readonly("entropy", &SchmidtResult::entropy)
        .def_readonly("purity", &SchmidtResult::purity);

    m.def("accumulated_phase_dipole", &accumulated_phase_dipole, py::arg("z"), py::arg("rho"),
          py::arg("geometry"), py::arg("g"));
    m.def("simplified_phase", &simplified_phase, py::arg("rho"), py::arg("geometry"), py::arg("g"));
    m.def("contact_phase_regularized", &contact_phase_regularized, py::arg("z"), py::arg("rho"),
          py::arg("geometry"), py::arg("u"), py::arg("eps"));

    m.def(
        "fidelity_phase",
        [](const GateGeometry& geo, const InteractionSpec& spec, double tol, int quad_order) {
            return fidelity_phase(make_pair_(geo), spec, tol, quad_order);
        },
        py::arg("geometry"), py::arg("spec"), py::arg("tol") = 1e-10, py::arg("quad_order") = 48,
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "sweep_strength",
        [](const GateGeometry& geo, const InteractionSpec& spec, const std::vector<double>& g_grid,
           double tol) { return sweep_strength(make_pair_(geo), spec, g_grid, tol); },
        py::arg("geometry"), py::arg("spec"), py::arg("g_grid"), py::arg("tol") = 1e-10,
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "find_strength_for_phase",
        [](const GateGeometry& geo, const InteractionSpec& spec, double target,
           std::pair<double, double> bracket, double tol) {
            return find_strength_for_phase(make_pair_(geo), spec, target, bracket, tol);
        },
        py::arg("geometry"), py::arg("spec"), py::arg("target_phi"), py::arg("bracket"),
        py::arg("tol") = 1e-6, py::call_guard<py::gil_scoped_release>());

    m.def(
        "tradeoff_curve",
        [](const GateGeometry& geo, const InteractionSpec& spec, const std::vector<double>& R_grid,
           double target, double tol) {
            return tradeoff_curve(make_pair_(geo), spec, R_grid, target, tol);
        },
        py::arg("geometry"), py::arg("spec"), py::arg("R_grid"), py::arg("target_phi"),
        py::arg("tol") = 1e-6, py::call_guard<py::gil_scoped_release>());

    m.def("mode_mix_tensor", &mode_mix_tensor, py::arg("spec"), py::arg("geometry"),
          py::arg("max_order"), py::arg("tol") = 1e-10,
          py::call_guard<py::gil_scoped_release>());
    m.def("schmidt_spectrum", &schmidt_spectrum, py::arg("tensor"));

    m.def("version", [] { return std::string(PPGATE_VERSION); });
}
