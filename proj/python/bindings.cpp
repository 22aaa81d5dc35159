// Python surface: thin wrappers over the same entry points the CLI uses,
// plus cli_run itself so scripts can drive full report documents.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "hml/cli.hpp"
#include "hml/criteria.hpp"
#include "hml/grid.hpp"
#include "hml/hankel.hpp"
#include "hml/measure.hpp"

namespace py = pybind11;
using namespace hml;

namespace {

std::string py_canonical_spec(const std::string& spec) {
    return parse_measure_spec(spec).canonical;
}

std::vector<std::complex<double>> py_moments(const std::string& spec, long N) {
    ParsedMeasure pm = parse_measure_spec(spec);
    std::vector<std::complex<double>> out;
    out.reserve(static_cast<std::size_t>(N) + 1);
    if (pm.is_radial()) {
        MomentSequence m = moment_sequence(pm.radial(), N);
        for (const auto& v : m.values) out.push_back(v);
    } else {
        for (long n = 0; n <= N; ++n) out.push_back(conjugate_moment(pm.density(), n));
    }
    return out;
}

py::dict criterion_dict(const CriterionReport& rep) {
    py::dict d;
    d["value"] = rep.value;
    d["argmax"] = rep.argmax;
    d["samples"] = rep.samples;
    d["err_estimate"] = rep.err_estimate;
    py::list profile;
    for (const auto& [x, y] : rep.profile) profile.append(py::make_tuple(x, y));
    d["profile"] = profile;
    return d;
}

py::dict py_condition2_sup(const std::string& spec, int grid_J, int angles) {
    ParsedMeasure pm = parse_measure_spec(spec);
    DiskGrid grid = DiskGrid::standard(grid_J, angles);
    MomentSequence m =
        pm.is_radial()
            ? moment_sequence(pm.radial(),
                              condition2_required_length(pm.radial(), grid.radii.back()))
            : conjugate_moment_sequence(pm.density(),
                                        static_cast<long>(pm.density().coeffs.size()) - 1);
    return criterion_dict(condition2_sup(m, grid));
}

py::dict py_opnorm(const std::string& spec, long N, const std::string& space, double tol,
                   long max_iter) {
    ParsedMeasure pm = parse_measure_spec(spec);
    if (!pm.is_radial()) throw std::invalid_argument("opnorm needs a radial measure");
    HankelOperator H = hankel_build(pm.radial(), N);
    NormReport r;
    if (space == "h2") {
        r = operator_norm_h2(H, tol, max_iter);
    } else if (space.rfind("dalpha:", 0) == 0) {
        r = operator_norm_dalpha(H, std::stod(space.substr(7)), tol, max_iter);
    } else {
        throw std::invalid_argument("space must be h2 or dalpha:<alpha>");
    }
    py::dict d;
    d["value"] = r.value;
    d["iterations"] = r.iterations;
    d["residual"] = r.residual;
    d["space"] = r.space;
    return d;
}

double py_hilbert_norm(long N, double tol) {
    return operator_norm_h2(hankel_build(Lebesgue{}, N), tol).value;
}

py::tuple py_run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli_run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_hml, m) {
    m.doc() = "numerical laboratory for Hankel measures on the unit disk";
    m.attr("__version__") = "0.1.0";

    m.def("canonical_spec", &py_canonical_spec, py::arg("spec"),
          "normalize a measure spec string");
    m.def("moments", &py_moments, py::arg("spec"), py::arg("N"),
          "moments mu[0..N] (conjugate moments for a density spec)");
    m.def("condition2_sup", &py_condition2_sup, py::arg("spec"), py::arg("grid_J") = 28,
          py::arg("angles") = 256, "sup of (1-|w|^2)|sum (n+1) mu[n] w^n| over the grid");
    m.def("opnorm", &py_opnorm, py::arg("spec"), py::arg("N"), py::arg("space") = "h2",
          py::arg("tol") = 1e-10, py::arg("max_iter") = 100000,
          "operator norm of the size-N section");
    m.def("hilbert_norm", &py_hilbert_norm, py::arg("N"), py::arg("tol") = 1e-10,
          "norm of the size-N flat-measure section");
    m.def("run_cli", &py_run_cli, py::arg("args"),
          "run the command line entry point; returns (exit_code, stdout, stderr)");
}
