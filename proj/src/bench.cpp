#include "ppds/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ppds/rng.hpp"

namespace ppds::bench {

ExperimentConfig preset_table1() {
    ExperimentConfig c;
    c.m = 1;
    return c;
}

ExperimentConfig preset_table2() { return ExperimentConfig{}; }

ExperimentConfig preset_table3() {
    ExperimentConfig c;
    c.m = 30;
    return c;
}

namespace {

// Substream ids per (realization, purpose); purposes: 0 = R, 1 = S, 2 = rhs.
constexpr std::uint64_t kPurposes = 8;

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.dim == 0 || cfg.m == 0) throw ConfigError("bench: dim and m must be positive");
    if (cfg.m + cfg.n >= cfg.dim)
        throw ConfigError("bench: constraints must stay underdetermined (m + n < dim)");
    if (!(cfg.gamma > 0.0)) throw ConfigError("bench: gamma must be positive");
    if (cfg.realizations == 0) throw ConfigError("bench: needs at least one realization");
    if (cfg.max_iter == 0) throw ConfigError("bench: max_iter must be positive");
    if (cfg.tolerances.empty()) throw ConfigError("bench: needs at least one tolerance");
    for (std::size_t i = 0; i + 1 < cfg.tolerances.size(); ++i)
        if (!(cfg.tolerances[i] > cfg.tolerances[i + 1]))
            throw ConfigError("bench: tolerances must be strictly decreasing");
    for (double t : cfg.tolerances)
        if (!(t > 0.0)) throw ConfigError("bench: tolerances must be positive");
}

}  // namespace

EqualityConstrainedL1 gen_instance(const ExperimentConfig& config,
                                   std::size_t realization_index) {
    validate_config(config);
    const std::uint64_t base = static_cast<std::uint64_t>(realization_index) * kPurposes;

    // Matrix entries are uniform on [0, 1): the mean-half rows give the
    // stacked system its characteristic dominant direction, which is what
    // separates the projected method from the plain one. Centered entries
    // make the two methods nearly indistinguishable.
    EqualityConstrainedL1 inst;
    {
        CounterRng rng(config.seed, base + 0);
        inst.R = uniform_matrix(rng, config.m, config.dim);
    }
    {
        CounterRng rng(config.seed, base + 1);
        inst.S = uniform_matrix(rng, config.n, config.dim);
    }
    CounterRng rng(config.seed, base + 2);
    if (config.mode == FeasibilityMode::GenerateFromPoint) {
        Vector x_star = gaussian_vector(rng, config.dim);
        inst.c = matvec(inst.R, x_star);
        inst.d = matvec(inst.S, x_star);
        inst.feasible_point = std::move(x_star);
    } else {
        inst.c = uniform_vector(rng, config.m);
        inst.d = uniform_vector(rng, config.n);
        // Wide full-row-rank blocks are almost surely onto, so the min-norm
        // residual should vanish; anything larger means the draw is unusable.
        const DenseMatrix L = inst.stacked();
        const Vector b = inst.rhs();
        SpdFactor F = spd_factor(gram_rows(L));
        Vector x_ls = adjoint_matvec(L, spd_solve(F, b));
        const double residual = norm2(sub(matvec(L, x_ls), b));
        if (residual > 1e-8)
            throw InconsistentInstance(
                "gen_instance: raw right-hand side inconsistent (residual " +
                std::to_string(residual) + "); regenerate with the next substream");
    }
    return inst;
}

std::string method_name(Method m) { return m == Method::PCP ? "PCP" : "CP"; }

namespace {

struct MethodStats {
    std::vector<double> iter_sums;
    std::vector<double> time_sums;
    std::vector<std::size_t> max_iter_hits;
};

void accumulate(const SolveReport& report, const std::vector<double>& tolerances,
                double wall_time, MethodStats& stats) {
    // One run to the tightest tolerance carries the counts for all of them:
    // the trajectory does not depend on the stopping test, so the first
    // crossing in the residual history equals the separate-run count.
    const double per_iter =
        report.iterations > 0 ? wall_time / static_cast<double>(report.iterations) : 0.0;
    std::size_t scan_from = 0;
    for (std::size_t t = 0; t < tolerances.size(); ++t) {
        std::size_t crossed = 0;
        bool found = false;
        for (std::size_t k = scan_from; k < report.residuals.size(); ++k) {
            if (report.residuals[k] < tolerances[t]) {
                crossed = k + 1;
                found = true;
                scan_from = k;  // later tolerances are tighter, cross no earlier
                break;
            }
        }
        if (!found) {
            crossed = report.iterations;
            stats.max_iter_hits[t] += 1;
            scan_from = report.residuals.size();
        }
        stats.iter_sums[t] += static_cast<double>(crossed);
        stats.time_sums[t] += per_iter * static_cast<double>(crossed);
    }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    validate_config(config);
    const std::size_t n_tol = config.tolerances.size();
    const double tightest = config.tolerances.back();
    const StopRule stop{tightest, config.max_iter};

    MethodStats pcp_stats{std::vector<double>(n_tol, 0.0), std::vector<double>(n_tol, 0.0),
                          std::vector<std::size_t>(n_tol, 0)};
    MethodStats cp_stats = pcp_stats;

    for (std::size_t r = 0; r < config.realizations; ++r) {
        EqualityConstrainedL1 inst;
        std::size_t index = r;
        for (int attempt = 0;; ++attempt) {
            try {
                inst = gen_instance(config, index);
                break;
            } catch (const InconsistentInstance&) {
                if (attempt >= 100) throw;
                index += 1000003 * config.realizations;  // deterministic fresh substream
            }
        }

        for (Method method : {Method::PCP, Method::CP}) {
            const auto t0 = std::chrono::steady_clock::now();
            const SolveReport report = method == Method::PCP
                                           ? pcp_solve(inst, config.gamma, stop)
                                           : cp_solve(inst, config.gamma, stop);
            const auto t1 = std::chrono::steady_clock::now();
            const double wall = std::chrono::duration<double>(t1 - t0).count();
            accumulate(report, config.tolerances,
                       wall, method == Method::PCP ? pcp_stats : cp_stats);
        }
    }

    const double runs = static_cast<double>(config.realizations);
    ExperimentResult result;
    for (Method method : {Method::PCP, Method::CP}) {
        const MethodStats& s = method == Method::PCP ? pcp_stats : cp_stats;
        for (std::size_t t = 0; t < n_tol; ++t)
            result.rows.push_back({method, config.tolerances[t], s.iter_sums[t] / runs,
                                   s.time_sums[t] / runs, s.max_iter_hits[t]});
    }
    for (std::size_t t = 0; t < n_tol; ++t) {
        const ResultRow& pcp = result.rows[t];
        const ResultRow& cp = result.rows[n_tol + t];
        ImprovementRow imp;
        imp.tolerance = config.tolerances[t];
        imp.iter_pct = cp.mean_iterations > 0.0
                           ? 100.0 * (cp.mean_iterations - pcp.mean_iterations) /
                                 cp.mean_iterations
                           : 0.0;
        imp.time_pct = cp.mean_time_s > 0.0
                           ? 100.0 * (cp.mean_time_s - pcp.mean_time_s) / cp.mean_time_s
                           : 0.0;
        result.improvements.push_back(imp);
    }
    return result;
}

std::vector<RegionCell> emit_region_grid(double b, std::size_t resolution) {
    if (!(b > 0.0)) throw ConfigError("emit_region_grid: b must be positive");
    if (resolution < 2) throw ConfigError("emit_region_grid: resolution must be >= 2");
    std::vector<RegionCell> cells;
    cells.reserve(resolution * resolution);
    const double top = 2.0 * b;
    const double h = top / static_cast<double>(resolution - 1);
    for (std::size_t i = 0; i < resolution; ++i) {
        const double tau = static_cast<double>(i) * h;
        for (std::size_t j = 0; j < resolution; ++j) {
            const double gamma = static_cast<double>(j) * h;
            const RegionMembership mem = stepsize_region_membership(tau, gamma, b);
            cells.push_back({tau, gamma, mem.in_rb, mem.in_sb});
        }
    }
    return cells;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

}  // namespace

std::string to_csv(const ExperimentResult& result) {
    const std::size_t n_tol = result.improvements.size();
    std::ostringstream out;
    out << "tolerance,pcp_mean_iter,pcp_mean_time_s,cp_mean_iter,cp_mean_time_s,"
           "improv_iter_pct,improv_time_pct,pcp_max_iter_hits,cp_max_iter_hits\n";
    for (std::size_t t = 0; t < n_tol; ++t) {
        const ResultRow& pcp = result.rows[t];
        const ResultRow& cp = result.rows[n_tol + t];
        const ImprovementRow& imp = result.improvements[t];
        out << fmt(pcp.tolerance) << ',' << fmt(pcp.mean_iterations) << ','
            << fmt(pcp.mean_time_s) << ',' << fmt(cp.mean_iterations) << ','
            << fmt(cp.mean_time_s) << ',' << fmt(imp.iter_pct) << ',' << fmt(imp.time_pct)
            << ',' << pcp.max_iter_hits << ',' << cp.max_iter_hits << '\n';
    }
    return out.str();
}

std::string to_markdown(const ExperimentResult& result, const ExperimentConfig& config) {
    const std::size_t n_tol = result.improvements.size();
    std::ostringstream out;
    out << "| m=" << config.m << ", n=" << config.n << ", N=" << config.dim << " |";
    for (std::size_t t = 0; t < n_tol; ++t)
        out << " e=" << fmt(config.tolerances[t]) << " iter | time (s) |";
    out << "\n|---|";
    for (std::size_t t = 0; t < n_tol; ++t) out << "---|---|";
    out << "\n";
    for (Method method : {Method::PCP, Method::CP}) {
        out << "| " << method_name(method) << " |";
        const std::size_t base = method == Method::PCP ? 0 : n_tol;
        for (std::size_t t = 0; t < n_tol; ++t) {
            const ResultRow& row = result.rows[base + t];
            out << ' ' << fmt_fixed(row.mean_iterations, 1) << " | "
                << fmt_fixed(row.mean_time_s, 4) << " |";
            if (row.max_iter_hits > 0) out << " (*)";
        }
        out << "\n";
    }
    out << "| %improv. |";
    for (std::size_t t = 0; t < n_tol; ++t) {
        const ImprovementRow& imp = result.improvements[t];
        out << ' ' << fmt_fixed(imp.iter_pct, 1) << " | " << fmt_fixed(imp.time_pct, 1)
            << " |";
    }
    out << "\n";
    return out.str();
}

std::string region_csv(const std::vector<RegionCell>& cells) {
    std::ostringstream out;
    out << "tau,gamma,in_rb,in_sb\n";
    for (const RegionCell& cell : cells)
        out << fmt(cell.tau) << ',' << fmt(cell.gamma) << ',' << (cell.in_rb ? 1 : 0)
            << ',' << (cell.in_sb ? 1 : 0) << '\n';
    return out.str();
}

}  // namespace ppds::bench
