#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ppds/bench.hpp"

namespace py = pybind11;

namespace {

ppds::DenseMatrix matrix_from_numpy(const py::array_t<double, py::array::c_style |
                                                                  py::array::forcecast>& arr) {
    if (arr.ndim() != 2) throw ppds::DimensionMismatch("expected a 2-d array");
    ppds::DenseMatrix M(static_cast<std::size_t>(arr.shape(0)),
                        static_cast<std::size_t>(arr.shape(1)));
    std::copy(arr.data(), arr.data() + arr.size(), M.data.begin());
    return M;
}

py::array_t<double> numpy_from_vector(const ppds::Vector& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::array_t<double> numpy_from_matrix(const ppds::DenseMatrix& M) {
    py::array_t<double> out({static_cast<py::ssize_t>(M.rows),
                             static_cast<py::ssize_t>(M.cols)});
    std::copy(M.data.begin(), M.data.end(), out.mutable_data());
    return out;
}

py::dict report_to_dict(const ppds::SolveReport& report) {
    py::dict d;
    d["iterations"] = report.iterations;
    d["final_x"] = numpy_from_vector(report.final_x);
    d["final_u"] = numpy_from_vector(report.final_u);
    d["residuals"] = numpy_from_vector(report.residuals);
    d["stop_reason"] = report.stop_reason == ppds::StopReason::ToleranceReached
                           ? "tolerance_reached"
                           : "max_iterations";
    d["wall_time_s"] = report.wall_time;
    return d;
}

ppds::bench::ExperimentConfig make_config(std::size_t dim, std::size_t m, std::size_t n,
                                          double gamma, std::vector<double> tolerances,
                                          std::size_t realizations, std::uint64_t seed,
                                          const std::string& mode, std::size_t max_iter) {
    ppds::bench::ExperimentConfig cfg;
    cfg.dim = dim;
    cfg.m = m;
    cfg.n = n;
    cfg.gamma = gamma;
    if (!tolerances.empty()) cfg.tolerances = std::move(tolerances);
    cfg.realizations = realizations;
    cfg.seed = seed;
    if (mode == "feasible") cfg.mode = ppds::bench::FeasibilityMode::GenerateFromPoint;
    else if (mode == "raw") cfg.mode = ppds::bench::FeasibilityMode::RawRandom;
    else throw ppds::ConfigError("mode must be 'feasible' or 'raw'");
    cfg.max_iter = max_iter;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_ppds, mod) {
    mod.doc() = "Projected primal-dual splitting for constrained composite problems";

    py::class_<ppds::EqualityConstrainedL1>(mod, "EqualityConstrainedL1")
        .def(py::init([](const py::array_t<double>& R, const py::array_t<double>& S,
                         const ppds::Vector& c, const ppds::Vector& d) {
                 ppds::EqualityConstrainedL1 inst;
                 inst.R = matrix_from_numpy(R);
                 inst.S = matrix_from_numpy(S);
                 inst.c = c;
                 inst.d = d;
                 return inst;
             }),
             py::arg("R"), py::arg("S"), py::arg("c"), py::arg("d"))
        .def_property_readonly("R",
                               [](const ppds::EqualityConstrainedL1& i) {
                                   return numpy_from_matrix(i.R);
                               })
        .def_property_readonly("S",
                               [](const ppds::EqualityConstrainedL1& i) {
                                   return numpy_from_matrix(i.S);
                               })
        .def_property_readonly("c",
                               [](const ppds::EqualityConstrainedL1& i) {
                                   return numpy_from_vector(i.c);
                               })
        .def_property_readonly("d",
                               [](const ppds::EqualityConstrainedL1& i) {
                                   return numpy_from_vector(i.d);
                               })
        .def_property_readonly("dim", &ppds::EqualityConstrainedL1::dim);

    mod.def(
        "soft_threshold",
        [](const ppds::Vector& x, double t) {
            return numpy_from_vector(ppds::soft_threshold(x, t));
        },
        py::arg("x"), py::arg("t"), "Componentwise shrinkage toward zero");

    mod.def(
        "operator_norm",
        [](const py::array_t<double>& M, double tol, int max_iter, std::uint64_t seed) {
            return ppds::operator_norm(matrix_from_numpy(M), tol, max_iter, seed);
        },
        py::arg("M"), py::arg("tol") = 1e-9, py::arg("max_iter") = 5000, py::arg("seed") = 0,
        "Largest singular value by seeded power iteration");

    mod.def(
        "validate_stepsizes",
        [](double tau, double gamma, double beta, double delta, double L_norm) {
            switch (ppds::validate_stepsizes(tau, gamma, beta, delta, L_norm)) {
                case ppds::StepsizeCheck::StrictlySatisfied: return "strict";
                case ppds::StepsizeCheck::SatisfiedWithEquality: return "equality";
                default: return "violated";
            }
        },
        py::arg("tau"), py::arg("gamma"), py::arg("beta"), py::arg("delta"),
        py::arg("L_norm"));

    mod.def(
        "stepsize_region_membership",
        [](double tau, double gamma, double b) {
            const ppds::RegionMembership m = ppds::stepsize_region_membership(tau, gamma, b);
            return py::make_tuple(m.in_rb, m.in_sb);
        },
        py::arg("tau"), py::arg("gamma"), py::arg("b"));

    mod.def(
        "linear_rate_params",
        [](double rho, double chi, double beta, double delta, double L_norm, double theta) {
            const ppds::LinearRate p =
                ppds::linear_rate_params(rho, chi, beta, delta, L_norm, theta);
            py::dict d;
            d["tau"] = p.tau;
            d["gamma"] = p.gamma;
            d["theta"] = p.theta;
            d["mu"] = p.mu;
            d["alpha"] = p.alpha;
            d["omega"] = p.omega;
            return d;
        },
        py::arg("rho"), py::arg("chi"), py::arg("beta"), py::arg("delta"), py::arg("L_norm"),
        py::arg("theta") = 1.0);

    mod.def(
        "gen_instance",
        [](std::size_t dim, std::size_t m, std::size_t n, std::uint64_t seed,
           std::size_t index, const std::string& mode) {
            return ppds::bench::gen_instance(
                make_config(dim, m, n, 1e-2, {}, 1, seed, mode, 1), index);
        },
        py::arg("dim"), py::arg("m"), py::arg("n"), py::arg("seed") = 1, py::arg("index") = 0,
        py::arg("mode") = "feasible");

    mod.def(
        "pcp_solve",
        [](const ppds::EqualityConstrainedL1& inst, double gamma, double tol,
           std::size_t max_iter) {
            return report_to_dict(ppds::pcp_solve(inst, gamma, {tol, max_iter}));
        },
        py::arg("inst"), py::arg("gamma") = 1e-2, py::arg("tol") = 1e-5,
        py::arg("max_iter") = 1000000,
        "Projected primal-dual iteration on an l1 equality instance");

    mod.def(
        "cp_solve",
        [](const ppds::EqualityConstrainedL1& inst, double gamma, double tol,
           std::size_t max_iter) {
            return report_to_dict(ppds::cp_solve(inst, gamma, {tol, max_iter}));
        },
        py::arg("inst"), py::arg("gamma") = 1e-2, py::arg("tol") = 1e-5,
        py::arg("max_iter") = 1000000, "Unprojected baseline with identical step sizes");

    mod.def(
        "l1_lp_oracle",
        [](const ppds::EqualityConstrainedL1& inst) {
            return numpy_from_vector(ppds::l1_lp_oracle(inst));
        },
        py::arg("inst"), "Exact minimizer by vertex enumeration (desk-size instances)");

    mod.def(
        "run_experiment",
        [](std::size_t dim, std::size_t m, std::size_t n, double gamma,
           std::vector<double> tolerances, std::size_t realizations, std::uint64_t seed,
           const std::string& mode, std::size_t max_iter) {
            const ppds::bench::ExperimentConfig cfg =
                make_config(dim, m, n, gamma, std::move(tolerances), realizations, seed,
                            mode, max_iter);
            const ppds::bench::ExperimentResult res = ppds::bench::run_experiment(cfg);
            py::list rows;
            for (const auto& row : res.rows) {
                py::dict d;
                d["method"] = ppds::bench::method_name(row.method);
                d["tolerance"] = row.tolerance;
                d["mean_iterations"] = row.mean_iterations;
                d["mean_time_s"] = row.mean_time_s;
                d["max_iter_hits"] = row.max_iter_hits;
                rows.append(d);
            }
            py::list improvements;
            for (const auto& imp : res.improvements) {
                py::dict d;
                d["tolerance"] = imp.tolerance;
                d["iter_pct"] = imp.iter_pct;
                d["time_pct"] = imp.time_pct;
                improvements.append(d);
            }
            py::dict out;
            out["rows"] = rows;
            out["improvements"] = improvements;
            out["csv"] = ppds::bench::to_csv(res);
            return out;
        },
        py::arg("dim") = 1000, py::arg("m") = 10, py::arg("n") = 100, py::arg("gamma") = 1e-2,
        py::arg("tolerances") = std::vector<double>{1e-4, 5e-5, 1e-5},
        py::arg("realizations") = 20, py::arg("seed") = 1, py::arg("mode") = "feasible",
        py::arg("max_iter") = 1000000);

    mod.def(
        "region_grid",
        [](double b, std::size_t resolution) {
            const auto cells = ppds::bench::emit_region_grid(b, resolution);
            const py::ssize_t n = static_cast<py::ssize_t>(cells.size());
            py::array_t<double> tau(n), gamma(n);
            py::array_t<bool> in_rb(n), in_sb(n);
            for (py::ssize_t i = 0; i < n; ++i) {
                tau.mutable_at(i) = cells[static_cast<std::size_t>(i)].tau;
                gamma.mutable_at(i) = cells[static_cast<std::size_t>(i)].gamma;
                in_rb.mutable_at(i) = cells[static_cast<std::size_t>(i)].in_rb;
                in_sb.mutable_at(i) = cells[static_cast<std::size_t>(i)].in_sb;
            }
            py::dict d;
            d["tau"] = tau;
            d["gamma"] = gamma;
            d["in_rb"] = in_rb;
            d["in_sb"] = in_sb;
            return d;
        },
        py::arg("b"), py::arg("resolution") = 200);

    py::register_exception<ppds::StepsizeRegimeMismatch>(mod, "StepsizeRegimeMismatch");
    py::register_exception<ppds::DegenerateOracle>(mod, "DegenerateOracle");
    py::register_exception<ppds::InconsistentInstance>(mod, "InconsistentInstance");

#ifdef VERSION_INFO
    mod.attr("__version__") = VERSION_INFO;
#else
    mod.attr("__version__") = "0.1.0";
#endif
}
