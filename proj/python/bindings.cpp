#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>

#include "thermowork/errors.hpp"
#include "thermowork/protocol.hpp"
#include "thermowork/qmath.hpp"
#include "thermowork/rabi.hpp"
#include "thermowork/thermo.hpp"

namespace py = pybind11;
namespace tw = thermowork;

using tw::qmath::Matrix;
using tw::qmath::Operator;
using tw::thermo::Temperature;

namespace {

Operator op(const Matrix& m) { return Operator(m); }

tw::qmath::Subsystem subsystem(const std::string& keep) {
    if (keep == "A" || keep == "a") return tw::qmath::Subsystem::A;
    if (keep == "B" || keep == "b") return tw::qmath::Subsystem::B;
    throw std::invalid_argument("keep must be 'A' or 'B'");
}

tw::protocol::ProtocolInput protocol_input(const Matrix& h_a, const Matrix& h_b, const Matrix& h_i,
                                           double temperature) {
    return tw::protocol::ProtocolInput::make(op(h_a), op(h_b), op(h_i),
                                             Temperature::of(temperature));
}

tw::rabi::RabiConfig rabi_config(double g, std::size_t cutoff, double temperature, double tol) {
    tw::rabi::RabiConfig c;
    c.g_over_omega = g;
    c.fock_cutoff = cutoff;
    c.temperature = Temperature::of(temperature);
    c.convergence_tol = tol;
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Work extraction from a thermalization protocol on bipartite quantum systems";

    py::register_exception<tw::DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<tw::NotHermitianError>(m, "NotHermitianError", PyExc_ValueError);
    py::register_exception<tw::InvalidStateError>(m, "InvalidStateError", PyExc_ValueError);
    py::register_exception<tw::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<tw::ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    // qmath
    m.def("tensor", [](const Matrix& a, const Matrix& b) {
        return tw::qmath::tensor(op(a), op(b)).matrix();
    });
    m.def(
        "partial_trace",
        [](const Matrix& rho, std::size_t d_a, std::size_t d_b, const std::string& keep) {
            return tw::qmath::partial_trace(op(rho), tw::qmath::BipartiteSpace(d_a, d_b),
                                            subsystem(keep))
                .matrix();
        },
        py::arg("rho"), py::arg("d_a"), py::arg("d_b"), py::arg("keep") = "A");
    m.def("eig_hermitian", [](const Matrix& h) {
        auto spec = tw::qmath::eig_hermitian(op(h));
        return py::make_tuple(spec.eigenvalues, spec.eigenvectors);
    });
    m.def("expectation", [](const Matrix& obs, const Matrix& rho) {
        return tw::qmath::expectation(op(obs), op(rho));
    });

    // thermo
    m.def(
        "gibbs_state",
        [](const Matrix& h, double temperature) {
            return tw::thermo::gibbs_state(op(h), Temperature::of(temperature)).state.matrix();
        },
        py::arg("h"), py::arg("temperature"));
    m.def("von_neumann_entropy",
          [](const Matrix& rho) { return tw::thermo::von_neumann_entropy(op(rho)); });
    m.def("free_energy", [](const Matrix& rho, const Matrix& h, double temperature) {
        return tw::thermo::free_energy(op(rho), op(h), Temperature::of(temperature));
    });
    m.def("delta_f", [](const Matrix& rho, const Matrix& h, double temperature) {
        return tw::thermo::delta_f(op(rho), op(h), Temperature::of(temperature));
    });
    m.def("mutual_information", [](const Matrix& rho, std::size_t d_a, std::size_t d_b) {
        return tw::thermo::mutual_information(op(rho), tw::qmath::BipartiteSpace(d_a, d_b));
    });

    // protocol
    py::class_<tw::protocol::ProtocolReport>(m, "ProtocolReport")
        .def_readonly("work", &tw::protocol::ProtocolReport::work)
        .def_readonly("work_local_only", &tw::protocol::ProtocolReport::work_local_only)
        .def_readonly("bound", &tw::protocol::ProtocolReport::bound)
        .def_readonly("efficiency", &tw::protocol::ProtocolReport::efficiency)
        .def_readonly("delta_f_a", &tw::protocol::ProtocolReport::delta_f_a)
        .def_readonly("delta_f_b", &tw::protocol::ProtocolReport::delta_f_b)
        .def_readonly("mi_term", &tw::protocol::ProtocolReport::mi_term)
        .def_readonly("hi_t2", &tw::protocol::ProtocolReport::hi_t2)
        .def_readonly("hi_t3", &tw::protocol::ProtocolReport::hi_t3)
        .def_readonly("ground_energy", &tw::protocol::ProtocolReport::ground_energy);

    m.def(
        "run_protocol",
        [](const Matrix& h_a, const Matrix& h_b, const Matrix& h_i, double temperature) {
            return tw::protocol::run_protocol(protocol_input(h_a, h_b, h_i, temperature));
        },
        py::arg("h_a"), py::arg("h_b"), py::arg("h_i"), py::arg("temperature"));
    m.def(
        "verify_bound",
        [](const Matrix& h_a, const Matrix& h_b, const Matrix& h_i, double temperature) {
            const auto check =
                tw::protocol::verify_bound(protocol_input(h_a, h_b, h_i, temperature));
            return py::make_tuple(check.holds, check.margin);
        },
        py::arg("h_a"), py::arg("h_b"), py::arg("h_i"), py::arg("temperature"));
    m.def(
        "run_audit",
        [](std::size_t count, std::size_t d_a, std::size_t d_b, double temperature,
           std::uint64_t seed) {
            tw::protocol::AuditConfig cfg;
            cfg.count = count;
            cfg.d_a = d_a;
            cfg.d_b = d_b;
            cfg.temperature = Temperature::of(temperature);
            cfg.seed = seed;
            const auto s = tw::protocol::run_audit(cfg);
            py::dict out;
            out["count"] = s.count;
            out["min_margin"] = s.min_margin;
            out["median_margin"] = s.median_margin;
            out["max_efficiency"] = s.max_efficiency;
            out["violations"] = s.violations.size();
            return out;
        },
        py::arg("count") = 500, py::arg("d_a") = 2, py::arg("d_b") = 2,
        py::arg("temperature") = 1.0, py::arg("seed") = 0);

    // rabi
    py::class_<tw::rabi::RabiPoint>(m, "RabiPoint")
        .def_property_readonly("g_over_omega",
                               [](const tw::rabi::RabiPoint& p) { return p.config.g_over_omega; })
        .def_readonly("ground_energy", &tw::rabi::RabiPoint::ground_energy)
        .def_readonly("sz_mean", &tw::rabi::RabiPoint::sz_mean)
        .def_readonly("n_mean", &tw::rabi::RabiPoint::n_mean)
        .def_readonly("hi_mean", &tw::rabi::RabiPoint::hi_mean)
        .def_readonly("work", &tw::rabi::RabiPoint::work)
        .def_readonly("efficiency", &tw::rabi::RabiPoint::efficiency)
        .def_readonly("converged_cutoff", &tw::rabi::RabiPoint::converged_cutoff)
        .def_readonly("report", &tw::rabi::RabiPoint::report);

    m.def(
        "build_rabi_hamiltonian",
        [](double g, std::size_t cutoff) {
            const auto h = tw::rabi::build_rabi_hamiltonian(rabi_config(g, cutoff, 0.0, 1e-8));
            return py::make_tuple(h.h_a.matrix(), h.h_b.matrix(), h.h_i.matrix());
        },
        py::arg("g_over_omega"), py::arg("cutoff"));
    m.def(
        "evaluate_point",
        [](double g, std::size_t cutoff, double temperature, double tol) {
            return tw::rabi::evaluate_point(rabi_config(g, cutoff, temperature, tol));
        },
        py::arg("g_over_omega"), py::arg("cutoff") = 40, py::arg("temperature") = 0.0,
        py::arg("tol") = 1e-8);
    m.def(
        "auto_converge",
        [](double g, std::size_t cutoff, double temperature, double tol) {
            return tw::rabi::auto_converge(rabi_config(g, cutoff, temperature, tol));
        },
        py::arg("g_over_omega"), py::arg("cutoff") = 16, py::arg("temperature") = 0.0,
        py::arg("tol") = 1e-8);
    m.def("perturbative_oracle", [](double g) {
        const auto est = tw::rabi::perturbative_oracle(g);
        return py::make_tuple(est.work, est.efficiency);
    });
}
