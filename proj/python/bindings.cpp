#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <sstream>

#include "spinor/diagnostics.hpp"
#include "spinor/errors.hpp"
#include "spinor/integrator.hpp"
#include "spinor/linear_flow.hpp"
#include "spinor/nonlinear_flow.hpp"
#include "spinor/parallel.hpp"
#include "spinor/snapshot.hpp"
#include "spinor_app/commands.hpp"
#include "spinor_app/config.hpp"

namespace py = pybind11;
using namespace spinor;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

std::vector<py::ssize_t> field_shape(const SpectralGrid& g) {
    const py::ssize_t N = g.N();
    if (g.dim() == 3) return {5, N, N, N};
    return {5, N, N};
}

// Layout (5, [N,] N, N) with x fastest.
CArray to_array(const SpinorField& psi) {
    CArray out(field_shape(psi.grid()));
    const std::size_t n = psi.grid().size();
    cplx* dst = out.mutable_data();
    for (int m = 0; m < 5; ++m) std::memcpy(dst + m * n, psi.component(m).data(), n * sizeof(cplx));
    return out;
}

SpinorField from_array(const GridPtr& g, const CArray& a) {
    if (a.ndim() != g->dim() + 1) throw ConfigError("state array must have " + std::to_string(g->dim() + 1) + " axes");
    const auto want = field_shape(*g);
    for (int k = 0; k < a.ndim(); ++k)
        if (a.shape(k) != want[k]) throw ConfigError("state array shape does not match the grid");
    SpinorField psi(g);
    const std::size_t n = g->size();
    const cplx* src = a.data();
    for (int m = 0; m < 5; ++m) std::memcpy(psi.component(m).data(), src + m * n, n * sizeof(cplx));
    return psi;
}

py::array_t<cplx> to_array(const Mat5& u) {
    py::array_t<cplx> out({5, 5});
    auto r = out.mutable_unchecked<2>();
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) r(i, j) = u[i][j];
    return out;
}

py::dict record_dict(const DiagnosticsRecord& r) {
    py::dict d;
    d["t"] = r.t;
    d["mass"] = r.mass;
    d["energy"] = r.energy;
    d["magnetization"] = r.magnetization;
    d["lz"] = r.lz;
    d["delta_x"] = r.widths[0];
    d["delta_y"] = r.widths[1];
    if (r.dim == 3) d["delta_z"] = r.widths[2];
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectral solver for rotating spin-orbit-coupled spin-2 condensates";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<SpectralGrid, std::shared_ptr<SpectralGrid>>(m, "Grid")
        .def(py::init([](int dim, double L, int N) {
                 return std::const_pointer_cast<SpectralGrid>(build_grid(dim, L, N));
             }),
             py::arg("dim"), py::arg("L"), py::arg("N"))
        .def_property_readonly("dim", &SpectralGrid::dim)
        .def_property_readonly("L", &SpectralGrid::L)
        .def_property_readonly("N", &SpectralGrid::N)
        .def_property_readonly("h", &SpectralGrid::h)
        .def_property_readonly("nodes", &SpectralGrid::nodes)
        .def_property_readonly("wavenumbers", &SpectralGrid::wavenumbers)
        .def("__repr__", [](const SpectralGrid& g) {
            std::ostringstream os;
            os << "Grid(dim=" << g.dim() << ", L=" << g.L() << ", N=" << g.N() << ")";
            return os.str();
        });

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double c0, double c1, double c2, double omega, double gamma_soc, double gamma_x,
                         double gamma_y, double gamma_z) {
                 return ModelParams{c0, c1, c2, omega, gamma_soc, gamma_x, gamma_y, gamma_z};
             }),
             py::arg("c0") = 0.0, py::arg("c1") = 0.0, py::arg("c2") = 0.0, py::arg("omega") = 0.0,
             py::arg("gamma_soc") = 0.0, py::arg("gamma_x") = 1.0, py::arg("gamma_y") = 1.0,
             py::arg("gamma_z") = 1.0)
        .def_readwrite("c0", &ModelParams::c0)
        .def_readwrite("c1", &ModelParams::c1)
        .def_readwrite("c2", &ModelParams::c2)
        .def_readwrite("omega", &ModelParams::omega)
        .def_readwrite("gamma_soc", &ModelParams::gamma_soc)
        .def_readwrite("gamma_x", &ModelParams::gamma_x)
        .def_readwrite("gamma_y", &ModelParams::gamma_y)
        .def_readwrite("gamma_z", &ModelParams::gamma_z);

    m.def(
        "initial_state",
        [](const std::shared_ptr<SpectralGrid>& g, const std::string& kind, bool normalize, const std::string& path) {
            InitialSpec s;
            s.kind = parse_initial_kind(kind);
            s.normalize = normalize;
            s.path = path;
            return to_array(make_initial(s, g));
        },
        py::arg("grid"), py::arg("kind") = "gaussian_ini1", py::arg("normalize") = false, py::arg("path") = "");

    m.def(
        "evolve",
        [](const std::shared_ptr<SpectralGrid>& g, const CArray& state, const ModelParams& p, double tau,
           double t_final, const std::string& scheme, bool cache) {
            const SpinorField psi0 = from_array(g, state);
            EvolveOptions opts;
            opts.stepper.cache_propagators = cache;
            const SplitScheme s = make_scheme(scheme);
            SpinorField out;
            {
                py::gil_scoped_release release;
                out = evolve(psi0, p, tau, t_final, s, {}, opts);
            }
            return to_array(out);
        },
        py::arg("grid"), py::arg("state"), py::arg("params"), py::arg("tau"), py::arg("t_final"),
        py::arg("scheme") = "ts2", py::arg("cache") = true);

    m.def("mass", [](const std::shared_ptr<SpectralGrid>& g, const CArray& a) { return mass(from_array(g, a)); });
    m.def("magnetization",
          [](const std::shared_ptr<SpectralGrid>& g, const CArray& a) { return magnetization(from_array(g, a)); });
    m.def("angular_momentum",
          [](const std::shared_ptr<SpectralGrid>& g, const CArray& a) { return angular_momentum(from_array(g, a)); });
    m.def("energy", [](const std::shared_ptr<SpectralGrid>& g, const CArray& a, const ModelParams& p) {
        return energy(from_array(g, a), p);
    });
    m.def("diagnostics", [](const std::shared_ptr<SpectralGrid>& g, const CArray& a, const ModelParams& p, double t) {
        return record_dict(diagnostics(from_array(g, a), p, t));
    }, py::arg("grid"), py::arg("state"), py::arg("params"), py::arg("t") = 0.0);

    m.def(
        "mode_propagator",
        [](double omega, double gamma, double nu_p, double nu_q, double tau) {
            return to_array(mode_propagator(omega, gamma, nu_p, nu_q, tau).U);
        },
        py::arg("omega"), py::arg("gamma"), py::arg("nu_p"), py::arg("nu_q"), py::arg("tau"));
    m.def("mode_q_matrix", [](double omega, double gamma, double nu_p, double nu_q) {
        return to_array(mode_q_matrix(omega, gamma, nu_p, nu_q));
    });
    m.def(
        "spin_rotation",
        [](cplx f_plus, double f_z, double c1, double tau) {
            const double f_abs = std::sqrt(std::norm(f_plus) + f_z * f_z);
            return to_array(spin_rotation(f_plus, f_z, f_abs, c1, tau));
        },
        py::arg("f_plus"), py::arg("f_z"), py::arg("c1"), py::arg("tau"));

    m.def("write_snapshot", [](const std::string& path, const std::shared_ptr<SpectralGrid>& g, const CArray& a,
                               double t, double omega, double gamma_soc) {
        write_snapshot(path, from_array(g, a), t, omega, gamma_soc);
    }, py::arg("path"), py::arg("grid"), py::arg("state"), py::arg("t") = 0.0, py::arg("omega") = 0.0,
       py::arg("gamma_soc") = 0.0);
    m.def("read_snapshot", [](const std::string& path) {
        Snapshot s = read_snapshot(path);
        py::dict d;
        d["grid"] = std::const_pointer_cast<SpectralGrid>(s.state.grid_ptr());
        d["state"] = to_array(s.state);
        d["t"] = s.t;
        d["omega"] = s.omega;
        d["gamma_soc"] = s.gamma_soc;
        return d;
    });

    m.def(
        "run_config",
        [](const std::string& text) {
            const app::RunConfig cfg = app::parse_config(text, "<python>");
            std::ostringstream log;
            app::RunSummary s;
            {
                py::gil_scoped_release release;
                s = app::cmd_run(cfg, log);
            }
            py::list rows;
            for (const auto& r : s.records) rows.append(record_dict(r));
            py::dict d;
            d["steps"] = s.steps;
            d["csv_path"] = s.csv_path;
            d["snapshots"] = s.snapshots;
            d["records"] = rows;
            return d;
        },
        py::arg("text"));
    m.def("check_config", [](const std::string& text) { return app::to_text(app::parse_config(text, "<python>")); });

    m.def("worker_count", &worker_count);
    m.def("set_worker_count", &set_worker_count);
}
