// Python bindings for the core operations: model construction, conserved
// structure verification, characteristic operators, QFI in all flavors, and
// the prefactor audit.

#include "qfisher/alt_qfi.hpp"
#include "qfisher/audit.hpp"
#include "qfisher/char_operator.hpp"
#include "qfisher/models.hpp"
#include "qfisher/qfi.hpp"
#include "qfisher/thermal.hpp"
#include "qfisher/version.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qfisher;

namespace {

SpectralState state_from_dense(const Matrix& rho) { return SpectralState::from_density(rho); }

struct PyModel {
    const ModelBundle* m;

    explicit PyModel(const std::string& name) : m(&model_by_name(name)) {}

    std::string which_or_default(const std::string& which) const {
        return which.empty() ? m->estimated.front() : which;
    }

    Matrix h(const Params& p) const { return m->build_h(p); }
    Matrix dh(const Params& p, const std::string& which) const {
        return m->build_dh(p, which_or_default(which));
    }
    double omega(const Params& p, const std::string& which) const {
        return m->analytic_omega(p, which_or_default(which));
    }
    Matrix v(const Params& p, const std::string& which) const {
        return m->analytic_v(p, which_or_default(which));
    }
    py::dict verify(const Params& p, const std::string& which) const {
        const auto s = m->verify_structure(p, which_or_default(which));
        py::dict d;
        d["omega_sq"] = s.omega_sq;
        d["conservation_residual"] = s.conservation_residual;
        d["eigenop_residual"] = s.eigenop_residual;
        d["pass"] = s.pass;
        return d;
    }
    Matrix char_closed_m(const Params& p, const std::string& which, double t) const {
        return m->char_closed_analytic(p, which_or_default(which), t);
    }
    std::map<std::string, Vector> states(const Params& p) const {
        std::map<std::string, Vector> out;
        for (const auto& [name, psi] : m->reference_states(p)) out.emplace(name, psi.amplitudes());
        return out;
    }
    double qfi(const Params& p, const std::string& which, double t, const Vector& psi) const {
        return qfi_pure(PureState::normalized(psi), char_closed_m(p, which, t));
    }
    double qfi_fd(const Params& p, const std::string& which, double t, const Vector& psi) const {
        const std::string w = which_or_default(which);
        auto h_of = [&](double th) {
            Params q = p;
            q[w] = th;
            return m->build_h(q);
        };
        return qfi_fd_oracle(h_of, param(p, w), t, PureState::normalized(psi));
    }
    py::dict thermal_qfi_py(const Params& p, const std::string& which, double temperature) const {
        const std::string w = which_or_default(which);
        const double beta = 1.0 / temperature;
        const HermitianOperator hh = HermitianOperator::from(m->build_h(p));
        const HermitianOperator dhh = HermitianOperator::from(m->build_dh(p, w));
        const double om = m->analytic_omega(p, w);
        const Matrix vv = m->analytic_v(p, w);
        const ThermalState ts = thermal_state(hh, beta);
        auto rho_at = [&](double th) {
            Params q = p;
            q[w] = th;
            return thermal_state(HermitianOperator::from(m->build_h(q)), beta).state.density();
        };
        py::dict d;
        d["value"] = qfi_thermal(dhh, vv, om, beta, ts.state);
        d["published_form"] = qfi_thermal_paper_form(dhh, vv, om, beta, ts.state);
        d["sld_oracle"] = qfi_fd_family(rho_at, param(p, w));
        return d;
    }
};

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "quantum Fisher information with conserved-quantity closed forms";
    mod.attr("__version__") = kVersion;

    mod.def("commutator", [](const Matrix& a, const Matrix& b) { return commutator(a, b); });
    mod.def("anticommutator", [](const Matrix& a, const Matrix& b) { return anticommutator(a, b); });
    mod.def("adjoint_power",
            [](const Matrix& h, const Matrix& a, int n) { return adjoint_power(h, a, n); });
    mod.def("evolve",
            [](const Matrix& h, double t) { return evolve(HermitianOperator::from(h, 1e-9), t); });
    mod.def("psd_sqrt", [](const Matrix& rho) { return psd_sqrt(state_from_dense(rho)); });

    mod.def("qfi_pure", [](const Vector& psi, const Matrix& h) {
        return qfi_pure(PureState::normalized(psi), h);
    });
    mod.def("qfi_mixed", [](const Matrix& rho, const Matrix& h) {
        return qfi_mixed(state_from_dense(rho), h);
    });
    mod.def("alt_qfi", [](const Matrix& rho, const Matrix& h) {
        return alt_qfi_unitary(state_from_dense(rho), h).trace_form;
    });
    mod.def("sld_qfi", [](const Matrix& rho, const Matrix& drho) {
        const SldResult r = sld_oracle(state_from_dense(rho), drho);
        return py::make_tuple(r.l, r.qfi);
    });
    mod.def("thermal_state", [](const Matrix& h, double beta) {
        const ThermalState t = thermal_state(HermitianOperator::from(h, 1e-9), beta);
        return py::make_tuple(t.state.probabilities(), t.state.vectors());
    });
    mod.def("f_function", &f_function);
    mod.def("r_function", &r_function);

    mod.def("factor_audit", [] {
        py::list rows;
        for (const auto& r : run_factor_audit()) {
            py::dict d;
            d["id"] = r.id;
            d["note"] = r.note;
            d["paper_value"] = r.paper_value;
            d["oracle_value"] = r.oracle_value;
            d["ratio"] = r.ratio;
            d["ratio_spread"] = r.ratio_spread;
            d["ratio_stable"] = r.ratio_stable;
            rows.append(d);
        }
        return rows;
    });

    mod.def("model_names", &model_names);

    py::class_<PyModel>(mod, "Model")
        .def(py::init<const std::string&>())
        .def("h", &PyModel::h, py::arg("params"))
        .def("dh", &PyModel::dh, py::arg("params"), py::arg("which") = "")
        .def("omega", &PyModel::omega, py::arg("params"), py::arg("which") = "")
        .def("v", &PyModel::v, py::arg("params"), py::arg("which") = "")
        .def("verify", &PyModel::verify, py::arg("params"), py::arg("which") = "")
        .def("char_closed", &PyModel::char_closed_m, py::arg("params"), py::arg("which") = "",
             py::arg("t") = 1.0)
        .def("reference_states", &PyModel::states, py::arg("params"))
        .def("qfi", &PyModel::qfi, py::arg("params"), py::arg("which"), py::arg("t"), py::arg("psi"))
        .def("qfi_fd_oracle", &PyModel::qfi_fd, py::arg("params"), py::arg("which"), py::arg("t"),
             py::arg("psi"))
        .def("thermal_qfi", &PyModel::thermal_qfi_py, py::arg("params"), py::arg("which"),
             py::arg("temperature"));
}
