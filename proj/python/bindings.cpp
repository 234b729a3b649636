#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ivgibbs/fixpoint.hpp"
#include "ivgibbs/model.hpp"
#include "ivgibbs/oracle.hpp"
#include "ivgibbs/recurrence.hpp"
#include "ivgibbs/scanner.hpp"

namespace py = pybind11;
using namespace ivgibbs;

namespace {

py::dict point_to_dict(const PhasePoint& p)
{
    py::list stabilities;
    for (Stability s : p.stabilities)
        stabilities.append(to_string(s));
    py::dict out;
    out["J"] = p.J;
    out["Jp"] = p.Jp;
    out["T"] = p.T;
    out["c"] = p.c;
    out["d"] = p.d;
    out["root_count"] = p.root_count;
    out["roots"] = p.roots;
    out["stabilities"] = stabilities;
    out["eta1"] = p.eta1;
    out["eta2"] = p.eta2;
    out["regime"] = to_string(p.regime);
    out["phase_transition"] = p.phase_transition;
    out["consistency_residuals"] = p.consistency_residuals;
    out["error"] = p.error.empty() ? py::object(py::none()) : py::object(py::str(p.error));
    return out;
}

GridSpec parse_grid(const std::string& J, const std::string& Jp, const std::string& T)
{
    GridSpec spec{ParameterRange::parse(J), ParameterRange::parse(Jp), ParameterRange::parse(T)};
    spec.validate();
    return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Translation-invariant Gibbs measures of the Ising-Vannimenus model on the order-3 Cayley tree";

    py::class_<TransferWeights>(m, "Weights")
        .def_static("from_couplings",
                    [](double J, double Jp, double T) { return derive_weights(CouplingParameters(J, Jp, T)); },
                    py::arg("J"), py::arg("Jp"), py::arg("T"))
        .def_static("from_cd", &TransferWeights::from_cd, py::arg("c"), py::arg("d"))
        .def_property_readonly("a", &TransferWeights::a)
        .def_property_readonly("b", &TransferWeights::b)
        .def_property_readonly("c", &TransferWeights::c)
        .def_property_readonly("d", &TransferWeights::d)
        .def("__repr__", [](const TransferWeights& w) {
            return "Weights(c=" + format_number(w.c()) + ", d=" + format_number(w.d()) + ")";
        });

    m.def("g", &scalar_map_g, py::arg("x"), py::arg("weights"), "Scalar map ((1 + c d x) / (d + c x))^3.");
    m.def("dg", &scalar_map_dg, py::arg("x"), py::arg("weights"));
    m.def("d2g", &scalar_map_d2g, py::arg("x"), py::arg("weights"));

    m.def(
        "fixed_points",
        [](const TransferWeights& w) {
            std::vector<std::tuple<double, double, std::string>> out;
            for (const auto& fp : find_positive_fixed_points(w).roots)
                out.emplace_back(fp.x, fp.derivative, to_string(fp.stability));
            return out;
        },
        py::arg("weights"), "Positive solutions of g(x) = x as (x, g'(x), stability) tuples.");
    m.def("quartic_roots", &quartic_positive_roots, py::arg("weights"));

    m.def(
        "iterate",
        [](double x0, const TransferWeights& w, int max_iter, double tol) {
            const auto r = iterate_map(x0, w, max_iter, tol);
            return py::make_tuple(r.limit, r.converged, r.iterations);
        },
        py::arg("x0"), py::arg("weights"), py::arg("max_iter") = 1000, py::arg("tol") = 1e-12,
        "Iterate x -> g(x); returns (limit, converged, iterations).");

    m.def(
        "consistency_residual",
        [](double J, double Jp, double T, double x, int depth) {
            return kolmogorov_consistency_check(CouplingParameters(J, Jp, T), field_from_scalar(x), depth);
        },
        py::arg("J"), py::arg("Jp"), py::arg("T"), py::arg("x"), py::arg("depth") = 2,
        "Finite-volume consistency residual for the boundary field built from a fixed point x.");

    m.def(
        "analyze",
        [](double J, double Jp, double T, bool check_consistency) {
            return point_to_dict(analyze_point(J, Jp, T, check_consistency));
        },
        py::arg("J"), py::arg("Jp"), py::arg("T"), py::arg("check_consistency") = false);

    m.def(
        "scan",
        [](const std::string& J, const std::string& Jp, const std::string& T, int workers,
           bool check_consistency) {
            const GridSpec spec = parse_grid(J, Jp, T);
            ScanResult res;
            {
                py::gil_scoped_release release;
                res = scan_grid(spec, {workers, check_consistency});
            }
            py::list points;
            for (const auto& p : res.points)
                points.append(point_to_dict(p));
            return py::make_tuple(points, res.warnings);
        },
        py::arg("J"), py::arg("Jp"), py::arg("T"), py::arg("workers") = 1, py::arg("check_consistency") = false,
        "Scan a grid given as 'min:max:steps' strings; returns (points, warnings).");

    m.def(
        "scan_csv",
        [](const std::string& J, const std::string& Jp, const std::string& T, int workers,
           bool check_consistency) {
            const GridSpec spec = parse_grid(J, Jp, T);
            py::gil_scoped_release release;
            return emit_csv(scan_grid(spec, {workers, check_consistency}).points, check_consistency);
        },
        py::arg("J"), py::arg("Jp"), py::arg("T"), py::arg("workers") = 1, py::arg("check_consistency") = false);
}
