#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qtomo/confidence.hpp"
#include "qtomo/estimators.hpp"
#include "qtomo/validation.hpp"

namespace py = pybind11;
using namespace qtomo;

namespace {

using PyMatrix = std::vector<std::vector<std::complex<double>>>;

CMatrix to_cmatrix(const PyMatrix& rows) {
    const int d = static_cast<int>(rows.size());
    CMatrix m(d);
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(rows[i].size()) != d)
            throw DimensionMismatch("matrix must be square");
        for (int j = 0; j < d; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

PyMatrix from_cmatrix(const CMatrix& m) {
    PyMatrix rows(m.n, std::vector<std::complex<double>>(m.n));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) rows[i][j] = m(i, j);
    return rows;
}

LossKind loss_arg(const std::string& name) { return loss_from_name(name); }

} // namespace

PYBIND11_MODULE(_qtomo, mod) {
    mod.doc() = "Quantum state tomography with finite-sample confidence certificates";

    // Base first: translators run newest-first, so the derived ones must be
    // registered after the catch-all.
    py::register_exception<Error>(mod, "QtomoError");
    py::register_exception<NotInformationallyComplete>(mod, "NotInformationallyComplete");
    py::register_exception<UnphysicalState>(mod, "UnphysicalState");

    py::class_<ExperimentDesign>(mod, "ExperimentDesign")
        .def_property_readonly("total", [](const ExperimentDesign& d) { return d.total; })
        .def_property_readonly("n_povms", &ExperimentDesign::n_povms)
        .def_property_readonly("dim", &ExperimentDesign::dim)
        .def_property_readonly("n_params", &ExperimentDesign::n_params)
        .def_property_readonly("ic", [](const ExperimentDesign& d) { return d.ic; })
        .def_property_readonly("sigma_max",
                               [](const ExperimentDesign& d) { return d.sigma_max; })
        .def_property_readonly("sigma_min",
                               [](const ExperimentDesign& d) { return d.sigma_min; });

    py::class_<FrequencyVector>(mod, "FrequencyVector")
        .def_readonly("counts", &FrequencyVector::counts_observed)
        .def_readonly("frequencies", &FrequencyVector::frequencies);

    py::class_<ConfidenceReport>(mod, "ConfidenceReport")
        .def_property_readonly("loss",
                               [](const ConfidenceReport& r) { return loss_name(r.loss); })
        .def_readonly("delta", &ConfidenceReport::delta)
        .def_readonly("n_total", &ConfidenceReport::n_total)
        .def_readonly("b", &ConfidenceReport::b)
        .def_readonly("c", &ConfidenceReport::c)
        .def_readonly("cl", &ConfidenceReport::cl)
        .def_readonly("cl_clamped", &ConfidenceReport::cl_clamped)
        .def_readonly("rate_factor", &ConfidenceReport::rate_factor);

    mod.def("preset_state",
            [](const std::string& name, int qubits) {
                return from_cmatrix(preset_state(name, qubits));
            },
            py::arg("name"), py::arg("qubits") = 1,
            "Named density matrix: mixed, zero, or ghz");

    mod.def("pauli_design", &pauli_design, py::arg("qubits"), py::arg("eta"),
            py::arg("n_per_setting"),
            "Lossy Pauli tomography design: 3^k settings, detection efficiency eta");

    mod.def("sample",
            [](const ExperimentDesign& d, const PyMatrix& rho, std::uint64_t seed) {
                return sample(d, to_cmatrix(rho), seed);
            },
            py::arg("design"), py::arg("rho"), py::arg("seed"),
            "Deterministic seeded sampling of measurement outcomes");

    mod.def("estimate",
            [](const ExperimentDesign& d, const FrequencyVector& f, bool with_cls) {
                const EstimateRecord rec = estimate_all(d, f, with_cls);
                py::dict out;
                out["s_lls"] = rec.s_lls;
                out["rho_lls"] = from_cmatrix(rec.rho_lls);
                out["s_enm"] = rec.s_enm;
                out["rho_enm"] = from_cmatrix(rec.rho_enm);
                if (rec.cls) {
                    py::dict cls;
                    cls["rho"] = from_cmatrix(rec.cls->rho);
                    cls["s"] = rec.cls->s;
                    cls["iterations"] = rec.cls->iterations;
                    cls["residual"] = rec.cls->residual;
                    cls["converged"] = rec.cls->converged;
                    out["cls"] = cls;
                }
                return out;
            },
            py::arg("design"), py::arg("frequencies"), py::arg("with_cls") = false,
            "LLS and ENM (optionally CLS) estimates from observed frequencies");

    mod.def("enm_project",
            [](const PyMatrix& rho) { return from_cmatrix(enm_estimate(to_cmatrix(rho))); },
            py::arg("rho"),
            "Frobenius-norm projection of a Hermitian trace-one matrix onto the "
            "density matrices");

    mod.def("confidence_level",
            [](const ExperimentDesign& d, const std::string& loss, double delta,
               long long n_total) {
                return confidence_level(d, loss_arg(loss), delta, n_total);
            },
            py::arg("design"), py::arg("loss"), py::arg("delta"), py::arg("n_total"));

    mod.def("cls_confidence_level",
            [](const ExperimentDesign& d, const std::string& loss, double delta,
               long long n_total) {
                return cls_confidence_level(d, loss_arg(loss), delta, n_total);
            },
            py::arg("design"), py::arg("loss"), py::arg("delta"), py::arg("n_total"));

    mod.def("closed_form_cl",
            [](int qubits, double eta, double delta, long long n_total,
               const std::string& loss) {
                return closed_form_cl_k(qubits, eta, delta, n_total, loss_arg(loss));
            },
            py::arg("qubits"), py::arg("eta"), py::arg("delta"), py::arg("n_total"),
            py::arg("loss") = "trace");

    mod.def("required_samples",
            [](int qubits, double eta, double delta, const std::string& loss,
               double target_cl) {
                return required_samples(qubits, eta, delta, loss_arg(loss), target_cl);
            },
            py::arg("qubits"), py::arg("eta"), py::arg("delta"), py::arg("loss"),
            py::arg("target_cl"));

    mod.def("hs_distance",
            [](const PyMatrix& a, const PyMatrix& b) {
                return hs_distance(to_cmatrix(a), to_cmatrix(b));
            },
            py::arg("a"), py::arg("b"));
    mod.def("trace_distance",
            [](const PyMatrix& a, const PyMatrix& b) {
                return trace_distance(to_cmatrix(a), to_cmatrix(b));
            },
            py::arg("a"), py::arg("b"));
    mod.def("infidelity",
            [](const PyMatrix& a, const PyMatrix& b) {
                return infidelity(to_cmatrix(a), to_cmatrix(b));
            },
            py::arg("a"), py::arg("b"));
}
