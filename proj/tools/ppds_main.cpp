// ppds: benchmark, region-map and solve front end for the projected
// primal-dual splitting library.
//
// Exit codes: 0 success, 2 configuration error, 3 step-size or regime
// mismatch, 4 iteration budget exhausted.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ppds/bench.hpp"

using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRegime = 3;
constexpr int kExitMaxIter = 4;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ppds::ConfigError("cannot open output file: " + path);
    out << content;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
    std::string preset;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::size_t realizations = 0;
    std::size_t n = 0, m = 0, nn = 0;  // n = primal dim, m/nn = row counts
    std::string mode;
    double gamma = 0.0;
    std::size_t max_iter = 0;
    std::string out;
    std::string format = "csv";
};

int run_bench(const BenchArgs& args) {
    ppds::bench::ExperimentConfig cfg;
    if (args.preset == "table1") cfg = ppds::bench::preset_table1();
    else if (args.preset == "table2") cfg = ppds::bench::preset_table2();
    else if (args.preset == "table3") cfg = ppds::bench::preset_table3();
    else if (!args.preset.empty())
        throw ppds::ConfigError("unknown preset: " + args.preset);

    if (args.seed_set) cfg.seed = args.seed;
    if (args.realizations > 0) cfg.realizations = args.realizations;
    if (args.n > 0) cfg.dim = args.n;
    if (args.m > 0) cfg.m = args.m;
    if (args.nn > 0) cfg.n = args.nn;
    if (!args.mode.empty()) {
        if (args.mode == "feasible") cfg.mode = ppds::bench::FeasibilityMode::GenerateFromPoint;
        else if (args.mode == "raw") cfg.mode = ppds::bench::FeasibilityMode::RawRandom;
        else throw ppds::ConfigError("unknown mode: " + args.mode + " (feasible|raw)");
    }
    if (args.gamma > 0.0) cfg.gamma = args.gamma;
    if (args.max_iter > 0) cfg.max_iter = args.max_iter;

    const ppds::bench::ExperimentResult result = ppds::bench::run_experiment(cfg);

    if (args.format == "csv") write_output(args.out, ppds::bench::to_csv(result));
    else if (args.format == "md") write_output(args.out, ppds::bench::to_markdown(result, cfg));
    else throw ppds::ConfigError("unknown format: " + args.format + " (csv|md)");

    for (const auto& row : result.rows)
        if (row.max_iter_hits > 0) {
            std::cerr << "bench: " << ppds::bench::method_name(row.method)
                      << " hit the iteration budget at tolerance " << row.tolerance << "\n";
            return kExitMaxIter;
        }
    return 0;
}

// ---- solve ----------------------------------------------------------------

ppds::Vector as_vector(const json& j, const char* what) {
    if (!j.is_array()) throw ppds::ConfigError(std::string(what) + ": expected an array");
    ppds::Vector v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(e.get<double>());
    return v;
}

ppds::DenseMatrix as_matrix(const json& j, const char* what) {
    if (!j.is_array() || j.empty())
        throw ppds::ConfigError(std::string(what) + ": expected a non-empty nested array");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    ppds::DenseMatrix M(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols)
            throw ppds::ConfigError(std::string(what) + ": ragged rows");
        for (std::size_t k = 0; k < cols; ++k) M(i, k) = j[i][k].get<double>();
    }
    return M;
}

// f block: l1 | zero | quadratic {a, sigma} | l1_quadratic {a, rho}
void parse_f(const json& j, ppds::CompositeProblem& p) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return;
    if (kind == "l1") {
        p.prox_f = [](const ppds::Vector& v, double t) { return ppds::soft_threshold(v, t); };
    } else if (kind == "quadratic") {
        ppds::Vector a = as_vector(j.at("a"), "f.a");
        const double sigma = j.at("sigma").get<double>();
        p.prox_f = [a, sigma](const ppds::Vector& v, double t) {
            return ppds::prox_scaled_quadratic(a, sigma, t, v);
        };
        p.rho = sigma;
    } else if (kind == "l1_quadratic") {
        const double rho = j.at("rho").get<double>();
        p.prox_f = ppds::make_prox_l1_quadratic(as_vector(j.at("a"), "f.a"), rho);
        p.rho = rho;
    } else {
        throw ppds::ConfigError("f.kind: " + kind);
    }
}

// g via its own prox (Moreau-converted), or g_star directly.
void parse_g(const json& config, ppds::CompositeProblem& p) {
    if (config.contains("g") && config.contains("g_star"))
        throw ppds::ConfigError("give either g or g_star, not both");
    if (config.contains("g")) {
        const json& j = config["g"];
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "point_indicator") {
            ppds::Vector b = as_vector(j.at("b"), "g.b");
            p.prox_gstar = [b](const ppds::Vector& u, double gamma) {
                return ppds::point_indicator_conj_prox(b, gamma, u);
            };
        } else if (kind == "l1") {
            p.prox_g = [](const ppds::Vector& v, double t) {
                return ppds::soft_threshold(v, t);
            };
        } else if (kind == "zero") {
            // handled by to_inclusion's default
        } else {
            throw ppds::ConfigError("g.kind: " + kind);
        }
        return;
    }
    if (config.contains("g_star")) {
        const json& j = config["g_star"];
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "l1_quadratic") {
            const double chi = j.at("chi").get<double>();
            p.prox_gstar = ppds::make_prox_l1_quadratic(as_vector(j.at("a"), "g_star.a"), chi);
            p.chi = chi;
        } else if (kind == "quadratic") {
            ppds::Vector a = as_vector(j.at("a"), "g_star.a");
            const double sigma = j.at("sigma").get<double>();
            p.prox_gstar = [a, sigma](const ppds::Vector& v, double t) {
                return ppds::prox_scaled_quadratic(a, sigma, t, v);
            };
            p.chi = sigma;
        } else {
            throw ppds::ConfigError("g_star.kind: " + kind);
        }
    }
}

// smooth blocks: zero | quadratic {a, sigma} (gradient sigma(x - a), cocoercivity 1/sigma)
void parse_smooth(const json& j, const char* what, ppds::MapFn& grad, double& modulus) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return;
    if (kind == "quadratic") {
        ppds::Vector a = as_vector(j.at("a"), what);
        const double sigma = j.at("sigma").get<double>();
        if (!(sigma > 0.0)) throw ppds::ConfigError(std::string(what) + ": sigma must be > 0");
        grad = [a, sigma](const ppds::Vector& x) {
            ppds::Vector out(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) out[i] = sigma * (x[i] - a[i]);
            return out;
        };
        modulus = 1.0 / sigma;
        return;
    }
    throw ppds::ConfigError(std::string(what) + ".kind: " + kind);
}

int run_solve(const std::string& config_path, const std::string& out_path) {
    std::ifstream in(config_path);
    if (!in) throw ppds::ConfigError("cannot open config: " + config_path);
    json config;
    try {
        in >> config;
    } catch (const json::exception& e) {
        throw ppds::ConfigError(std::string("config parse error: ") + e.what());
    }

    ppds::CompositeProblem p;
    try {
        p.L = ppds::LinearMap::from_matrix(as_matrix(config.at("L"), "L"));
        const ppds::DenseMatrix L_mat = as_matrix(config.at("L"), "L");
        p.dual_dim = L_mat.rows;
        p.primal_dim = L_mat.cols;

        if (config.contains("f")) parse_f(config["f"], p);
        parse_g(config, p);
        if (config.contains("h")) parse_smooth(config["h"], "h", p.grad_h, p.beta);
        if (config.contains("ell_star"))
            parse_smooth(config["ell_star"], "ell_star", p.grad_lstar, p.delta);

        if (config.contains("x_set")) {
            const json& j = config["x_set"];
            const std::string kind = j.at("kind").get<std::string>();
            if (kind == "affine") {
                ppds::DenseMatrix R = as_matrix(j.at("R"), "x_set.R");
                ppds::Vector c = as_vector(j.at("c"), "x_set.c");
                p.X_proj = ppds::make_affine_projector(
                    R, c, ppds::spd_factor(ppds::gram_rows(R)));
            } else if (kind != "full") {
                throw ppds::ConfigError("x_set.kind: " + kind);
            }
        }
        if (config.contains("v_set")) {
            const json& j = config["v_set"];
            const std::string kind = j.at("kind").get<std::string>();
            if (kind == "basis") {
                p.V_proj = ppds::make_subspace_projector(as_matrix(j.at("Q"), "v_set.Q"));
            } else if (kind != "full") {
                throw ppds::ConfigError("v_set.kind: " + kind);
            }
        }
    } catch (const json::exception& e) {
        throw ppds::ConfigError(std::string("config: ") + e.what());
    }

    ppds::StepSchedule schedule = ppds::Static{};
    try {
        const json& j = config.at("schedule");
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "static") {
            schedule = ppds::Static{j.at("tau").get<double>(), j.at("gamma").get<double>(),
                                    j.value("theta", 1.0)};
        } else if (kind == "accelerated") {
            if (j.contains("tau0") && j.contains("gamma0")) {
                schedule = ppds::Accelerated{j["tau0"].get<double>(), j["gamma0"].get<double>(),
                                             j.value("rho", p.rho)};
            } else {
                schedule = ppds::accelerated_schedule(j.value("rho", p.rho), p.L.norm_bound,
                                                      p.beta, j.value("tau0", 0.0));
            }
        } else if (kind == "linear_rate") {
            schedule = ppds::linear_rate_params(p.rho, p.chi, p.beta, p.delta,
                                                p.L.norm_bound, j.value("theta", 1.0));
        } else {
            throw ppds::ConfigError("schedule.kind: " + kind);
        }
    } catch (const json::exception& e) {
        throw ppds::ConfigError(std::string("schedule: ") + e.what());
    }

    ppds::Vector x0(p.primal_dim, 0.0), u0(p.dual_dim, 0.0);
    ppds::StopRule stop;
    try {
        if (config.contains("init")) {
            if (config["init"].contains("x0")) x0 = as_vector(config["init"]["x0"], "init.x0");
            if (config["init"].contains("u0")) u0 = as_vector(config["init"]["u0"], "init.u0");
        }
        if (config.contains("stop")) {
            stop.tol = config["stop"].value("tol", stop.tol);
            stop.max_iter = config["stop"].value("max_iter", stop.max_iter);
        }
    } catch (const json::exception& e) {
        throw ppds::ConfigError(std::string("config: ") + e.what());
    }

    const ppds::SolveReport report = ppds::solve(to_inclusion(p), schedule, x0, u0, stop);

    json result;
    result["iterations"] = report.iterations;
    result["stop_reason"] = report.stop_reason == ppds::StopReason::ToleranceReached
                                ? "tolerance_reached"
                                : "max_iterations";
    result["final_residual"] = report.residuals.empty() ? 0.0 : report.residuals.back();
    result["wall_time_s"] = report.wall_time;
    result["final_x"] = report.final_x;
    result["final_u"] = report.final_u;
    write_output(out_path, result.dump(2) + "\n");

    return report.stop_reason == ppds::StopReason::ToleranceReached ? 0 : kExitMaxIter;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Projected primal-dual splitting: benchmarks, step-size regions, solves"};
    app.require_subcommand(1);

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "Run the pcp/cp comparison harness");
    bench->add_option("--preset", bench_args.preset, "table1 | table2 | table3");
    bench->add_option("--seed", bench_args.seed, "Base seed")->each([&](const std::string&) {
        bench_args.seed_set = true;
    });
    bench->add_option("--realizations", bench_args.realizations, "Number of instances");
    bench->add_option("--n", bench_args.n, "Primal dimension N");
    bench->add_option("--m", bench_args.m, "Rows of the projected block R");
    bench->add_option("--nn", bench_args.nn, "Rows of the remaining block S");
    bench->add_option("--mode", bench_args.mode, "feasible | raw");
    bench->add_option("--gamma", bench_args.gamma, "Dual step size");
    bench->add_option("--max-iter", bench_args.max_iter, "Iteration budget per run");
    bench->add_option("--out", bench_args.out, "Output path (stdout when omitted)");
    bench->add_option("--format", bench_args.format, "csv | md");

    double region_b = 1.0;
    std::size_t region_resolution = 200;
    std::string region_out;
    CLI::App* regions = app.add_subcommand("regions", "Tabulate step-size region membership");
    regions->add_option("--b", region_b, "Cocoercivity constant")->required();
    regions->add_option("--resolution", region_resolution, "Grid points per axis");
    regions->add_option("--out", region_out, "Output CSV path (stdout when omitted)");

    std::string solve_config, solve_out;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a problem described in JSON");
    solve_cmd->add_option("--config", solve_config, "Path to the JSON problem description")
        ->required();
    solve_cmd->add_option("--out", solve_out, "Result JSON path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (bench->parsed()) return run_bench(bench_args);
        if (regions->parsed())
            return write_output(region_out, ppds::bench::region_csv(ppds::bench::emit_region_grid(
                                                region_b, region_resolution))),
                   0;
        if (solve_cmd->parsed()) return run_solve(solve_config, solve_out);
    } catch (const ppds::StepsizeRegimeMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRegime;
    } catch (const ppds::ThetaOutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRegime;
    } catch (const ppds::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return 0;
}
