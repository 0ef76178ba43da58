#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "notchwall/dynamics.hpp"
#include "notchwall/io.hpp"
#include "notchwall/paths.hpp"
#include "notchwall/solver.hpp"
#include "notchwall/spectral.hpp"
#include "notchwall/transforms.hpp"

namespace py = pybind11;
using namespace notchwall;

namespace {

AngleField as_field(const std::vector<double>& v) { return AngleField(v); }

MagnetizationField as_mag(const std::vector<std::array<double, 3>>& rows) {
    MagnetizationField m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) m[i] = {rows[i][0], rows[i][1], rows[i][2]};
    return m;
}

std::vector<std::array<double, 3>> mag_rows(const MagnetizationField& m) {
    std::vector<std::array<double, 3>> rows(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) rows[i] = {m[i].x, m[i].y, m[i].z};
    return rows;
}

py::dict report_dict(const EnergyReport& r) {
    py::dict d;
    d["exchange"] = r.exchange;
    d["anisotropy"] = r.anisotropy;
    d["tail_energy"] = r.tail_energy;
    d["total"] = r.total;
    d["grad_norm"] = r.grad_norm;
    d["defect_min"] = r.defect_min;
    d["defect_max"] = r.defect_max;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Domain walls in notched nanowires: energies, solvers, spectra, dynamics";

    py::class_<Grid>(mod, "Grid")
        .def(py::init<double, std::size_t>(), py::arg("L"), py::arg("n"))
        .def_readonly("L", &Grid::L)
        .def_readonly("n", &Grid::n)
        .def_readonly("h", &Grid::h)
        .def("node", &Grid::node)
        .def("nodes", &Grid::nodes);

    py::class_<NotchProfile>(mod, "Profile")
        .def_static("plateau", &NotchProfile::plateau, py::arg("s0"), py::arg("a"),
                    py::arg("ramp"))
        .def_static("cosine_dip", &NotchProfile::cosine_dip, py::arg("s0"), py::arg("a"))
        .def_static("piecewise_linear", &NotchProfile::piecewise_linear, py::arg("nodes"))
        .def_static("parse", &io::parse_profile_spec, py::arg("spec"))
        .def("__call__", &NotchProfile::operator())
        .def_property_readonly("s0", &NotchProfile::s0)
        .def_property_readonly("a", &NotchProfile::a)
        .def_property_readonly("kind", &NotchProfile::kind_name)
        .def("notchless", &NotchProfile::notchless)
        .def("to_json", &io::profile_to_json_text);

    mod.def(
        "energy",
        [](const std::vector<double>& theta, const NotchProfile& p, const Grid& g) {
            return report_dict(energy(as_field(theta), p, g));
        },
        py::arg("theta"), py::arg("profile"), py::arg("grid"));

    mod.def(
        "solve",
        [](const NotchProfile& p, const Grid& g, py::object init, std::size_t max_iters,
           double grad_tol) {
            SolveOptions o;
            o.max_iters = max_iters;
            o.grad_tol = grad_tol;
            const SolveResult r = init.is_none()
                                      ? minimize(p, g, o)
                                      : minimize(p, g, as_field(init.cast<std::vector<double>>()), o);
            py::dict d;
            d["theta"] = r.theta.values;
            d["energy"] = report_dict(r.report);
            d["iterations"] = r.iterations;
            d["converged"] = r.converged;
            d["monotone"] = r.monotone;
            d["odd_defect"] = r.odd_defect;
            d["energy_trace"] = r.energy_trace;
            return d;
        },
        py::arg("profile"), py::arg("grid"), py::arg("init") = py::none(),
        py::arg("max_iters") = 500, py::arg("grad_tol") = 1e-8);

    mod.def(
        "shoot",
        [](const NotchProfile& p, const Grid& g, double x0) {
            const ShootResult r = shoot(p, g, x0);
            py::dict d;
            d["theta"] = r.theta.values;
            d["slope_right"] = r.slope_right;
            d["slope_left"] = r.slope_left;
            d["bisections"] = r.bisections;
            return d;
        },
        py::arg("profile"), py::arg("grid"), py::arg("x0") = 0.0);

    mod.def(
        "transform_chain",
        [](const std::vector<double>& theta, const std::vector<std::string>& names,
           const NotchProfile& p, const Grid& g) {
            const EnergyWorkspace ws(p, g);
            py::list out;
            for (const TransformResult& r : apply_chain(as_field(theta), names, p, ws)) {
                py::dict d;
                d["name"] = r.report.name;
                d["theta"] = r.theta.values;
                d["energy_before"] = r.report.energy_before;
                d["energy_after"] = r.report.energy_after;
                d["changed"] = r.report.changed;
                out.append(d);
            }
            return out;
        },
        py::arg("theta"), py::arg("names"), py::arg("profile"), py::arg("grid"));

    mod.def(
        "spectrum",
        [](const std::vector<double>& theta, const NotchProfile& p, const Grid& g,
           std::size_t probes, std::uint64_t seed) {
            const SpectralReport r = spectral_report(as_field(theta), p, g, probes, seed);
            py::dict d;
            d["alpha"] = r.alpha;
            d["kernel_residual"] = r.kernel_residual;
            d["factorization_gap"] = r.factorization_gap;
            d["wall_converged"] = r.wall_converged;
            return d;
        },
        py::arg("theta"), py::arg("profile"), py::arg("grid"), py::arg("probes") = 50,
        py::arg("seed") = 0);

    mod.def(
        "relax",
        [](const std::vector<std::array<double, 3>>& m0, const NotchProfile& p, const Grid& g,
           double alpha, double t_end, double dt, std::size_t record_every, double stop_tol,
           py::object theta_ref) {
            LLGOptions o;
            o.alpha_gilbert = alpha;
            o.t_end = t_end;
            o.dt = dt;
            o.record_every = record_every;
            o.stop_tol = stop_tol;
            AngleField ref;
            const AngleField* refp = nullptr;
            if (!theta_ref.is_none()) {
                ref = as_field(theta_ref.cast<std::vector<double>>());
                refp = &ref;
            }
            const LLGTrajectory tr = relax(as_mag(m0), o, p, g, refp);
            py::dict d;
            d["times"] = tr.times;
            d["energies"] = tr.energies;
            d["distances"] = tr.distances;
            d["final_field"] = mag_rows(tr.final_field);
            d["final_time"] = tr.final_time;
            d["stopped_early"] = tr.stopped_early;
            return d;
        },
        py::arg("m0"), py::arg("profile"), py::arg("grid"), py::arg("alpha") = 0.5,
        py::arg("t_end") = 100.0, py::arg("dt") = 0.0, py::arg("record_every") = 100,
        py::arg("stop_tol") = 0.0, py::arg("theta_ref") = py::none());

    mod.def(
        "unlift",
        [](const std::vector<double>& theta, double phi) {
            return mag_rows(unlift(as_field(theta), RotationAngle(phi)));
        },
        py::arg("theta"), py::arg("phi") = 0.0);

    mod.def(
        "lift",
        [](const std::vector<std::array<double, 3>>& m) {
            const Lifting l = lift(as_mag(m));
            py::dict d;
            d["theta"] = l.theta.values;
            d["phi"] = l.phi.phi;
            d["planarity_residual"] = l.planarity_residual;
            return d;
        },
        py::arg("m"));

    mod.def(
        "composite_path",
        [](const std::vector<double>& theta, const NotchProfile& p, const Grid& g,
           std::size_t samples) {
            const PathSample r = composite_path(as_field(theta), as_field(theta), p, g, samples);
            py::dict d;
            d["lambdas"] = r.lambdas;
            d["energies"] = r.energies;
            d["max_energy"] = r.max_energy;
            d["max_lambda"] = r.max_lambda;
            d["margin"] = r.margin;
            return d;
        },
        py::arg("theta"), py::arg("profile"), py::arg("grid"), py::arg("samples") = 102);

    mod.def(
        "uniqueness",
        [](const NotchProfile& p, const Grid& g, std::size_t n_starts, std::uint64_t seed) {
            const UniquenessReport r = multi_start_uniqueness(p, g, n_starts, seed);
            py::dict d;
            d["verdict"] = r.verdict;
            d["max_pairwise"] = r.max_pairwise;
            d["clusters"] = r.clusters;
            return d;
        },
        py::arg("profile"), py::arg("grid"), py::arg("n_starts") = 10, py::arg("seed") = 0);

    mod.def("separatrix", &separatrix_theta, py::arg("x"));
}
