#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "halfwave/cli.hpp"
#include "halfwave/error.hpp"
#include "halfwave/flux.hpp"
#include "halfwave/fraccalc.hpp"
#include "halfwave/seminorms.hpp"
#include "halfwave/solver.hpp"
#include "halfwave/suites.hpp"

namespace py = pybind11;
using namespace halfwave;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Array& a) {
    if (a.ndim() != 1) throw InvalidArgument("expected a 1-D array");
    return {a.data(), a.data() + a.size()};
}

Array to_array(const std::vector<double>& v) {
    Array out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

SampledFunction1D line(const Array& values, double t_min, double t_max) {
    auto v = to_vector(values);
    return {Grid1D::uniform(t_min, t_max, v.size()), std::move(v)};
}

FracOrder order(double alpha, const std::string& direction) {
    if (direction == "forward") return FracOrder::forward(alpha);
    if (direction == "backward") return FracOrder::backward(alpha);
    throw InvalidArgument("direction must be 'forward' or 'backward'");
}

LineDomain domain(const std::string& d) {
    if (d == "full") return LineDomain::FullLine;
    if (d == "half") return LineDomain::HalfLine;
    throw InvalidArgument("domain must be 'full' or 'half'");
}

SampledField2D field(const SpaceTimeGrid& g, const Array& a) {
    if (a.ndim() != 2 || static_cast<std::size_t>(a.shape(0)) != g.m() || static_cast<std::size_t>(a.shape(1)) != g.n())
        throw InvalidArgument("expected an (m, n) array");
    return {g, std::vector<double>(a.data(), a.data() + a.size())};
}

py::tuple solve(const std::string& flux, double p, double eps, double x_min, double x_max, double t_max,
                const Array& source, const Array& g, double tol, int max_iter) {
    if (source.ndim() != 2) throw InvalidArgument("source must be an (m, n) array");
    const SpaceTimeGrid grid(x_min, x_max, static_cast<std::size_t>(source.shape(0)), t_max,
                             static_cast<std::size_t>(source.shape(1)));
    WeakProblem prob;
    prob.grid = grid;
    prob.flux = flux_by_name(flux, p, eps);
    prob.source = SourceData::pointwise(field(grid, source));
    prob.g = field(grid, g);
    prob.tol = tol;
    prob.max_iter = max_iter;
    SolveResult res;
    {
        py::gil_scoped_release release;
        res = solve_nonhomogeneous(prob);
    }
    Array u({static_cast<py::ssize_t>(grid.m()), static_cast<py::ssize_t>(grid.n())});
    std::copy(res.u.values.begin(), res.u.values.end(), u.mutable_data());
    py::dict info;
    info["iterations"] = res.iterations;
    info["residual_dual_norm"] = res.residual_dual_norm;
    info["energy_trace"] = res.energy_trace;
    return py::make_tuple(u, info);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "halfwave: half-order time calculus, fractional seminorms and p-parabolic solvers";

    py::register_exception<Error>(m, "HalfwaveError", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<DecayViolation>(m, "DecayViolation", PyExc_ValueError);
    py::register_exception<FluxAuditFailure>(m, "FluxAuditFailure", PyExc_RuntimeError);
    py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_RuntimeError);

    m.def("version", [] { return std::string(kVersion); });

    m.def(
        "gl_derivative",
        [](const Array& u, double dt, double alpha, const std::string& direction) {
            return to_array(gl_derivative(line(u, 0.0, dt * static_cast<double>(u.size() - 1)), order(alpha, direction)).values);
        },
        py::arg("u"), py::arg("dt"), py::arg("alpha") = 0.5, py::arg("direction") = "forward");

    m.def(
        "spectral_derivative",
        [](const Array& u, double t_min, double t_max, double alpha, const std::string& direction) {
            return to_array(spectral_derivative(line(u, t_min, t_max), order(alpha, direction)).values);
        },
        py::arg("u"), py::arg("t_min"), py::arg("t_max"), py::arg("alpha") = 0.5, py::arg("direction") = "forward");

    m.def(
        "hilbert_transform",
        [](const Array& u, double t_min, double t_max) { return to_array(hilbert_transform(line(u, t_min, t_max)).values); },
        py::arg("u"), py::arg("t_min"), py::arg("t_max"));

    m.def(
        "gagliardo_seminorm_sq",
        [](const Array& u, double t_min, double t_max, const std::string& d) {
            return gagliardo_seminorm_sq(line(u, t_min, t_max), domain(d));
        },
        py::arg("u"), py::arg("t_min"), py::arg("t_max"), py::arg("domain") = "full");

    m.def(
        "half_derivative_energy",
        [](const Array& u, double t_min, double t_max) { return half_derivative_energy(line(u, t_min, t_max)); },
        py::arg("u"), py::arg("t_min"), py::arg("t_max"));

    m.def(
        "hardy_term",
        [](const Array& u, double t_max) {
            const auto h = hardy_term(line(u, 0.0, t_max));
            return py::make_tuple(h.value, h.divergent);
        },
        py::arg("u"), py::arg("t_max"));

    m.def(
        "audit_flux",
        [](const std::string& name, double p, double eps, std::uint64_t seed, std::size_t samples) {
            const auto r = audit_flux(flux_by_name(name, p, eps), seed, samples);
            py::dict d;
            d["samples"] = r.samples;
            d["monotonicity_violations"] = r.monotonicity_violations;
            d["coercivity_violations"] = r.coercivity_violations;
            d["boundedness_violations"] = r.boundedness_violations;
            d["weak_monotonicity"] = r.weak_monotonicity;
            d["continuity_flags"] = r.continuity_flags;
            d["passed"] = r.passed();
            return d;
        },
        py::arg("name"), py::arg("p"), py::arg("eps") = 0.0, py::arg("seed") = 1, py::arg("samples") = 10000);

    m.def("solve", &solve, py::arg("flux"), py::arg("p"), py::arg("eps") = 0.0, py::arg("x_min"), py::arg("x_max"),
          py::arg("t_max"), py::arg("source"), py::arg("g"), py::arg("tol") = 1e-8, py::arg("max_iter") = 200,
          "Solves u_t - (A(u_x))_x = f with u = g on the walls and at t = 0. Arrays have shape (m, n).");

    m.def("suite_names", &suite_names);
    m.def(
        "run_suite",
        [](const std::string& name, std::uint64_t seed, std::size_t audit_samples) {
            SuiteSettings s;
            s.seed = seed;
            s.audit_samples = audit_samples;
            std::vector<SuiteRow> rows;
            {
                py::gil_scoped_release release;
                rows = run_suite(name, s);
            }
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["identity"] = r.identity;
                d["quantity"] = r.quantity;
                d["expected"] = r.expected;
                d["measured"] = r.measured;
                d["tolerance"] = r.tolerance;
                d["pass"] = r.pass;
                d["note"] = r.note;
                out.append(d);
            }
            return out;
        },
        py::arg("name"), py::arg("seed") = 1, py::arg("audit_samples") = 100000);
}
