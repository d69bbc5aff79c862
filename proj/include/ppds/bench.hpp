#pragma once

#include <string>

#include "ppds/convex.hpp"

namespace ppds::bench {

enum class FeasibilityMode { GenerateFromPoint, RawRandom };

struct ExperimentConfig {
    std::size_t dim = 1000;  // N
    std::size_t m = 10;      // rows of R
    std::size_t n = 100;     // rows of S
    double gamma = 1e-2;
    std::vector<double> tolerances = {1e-4, 5e-5, 1e-5};  // strictly decreasing
    std::size_t realizations = 20;
    std::uint64_t seed = 1;
    FeasibilityMode mode = FeasibilityMode::GenerateFromPoint;
    std::size_t max_iter = 1000000;
};

ExperimentConfig preset_table1();  // m = 1
ExperimentConfig preset_table2();  // m = 10
ExperimentConfig preset_table3();  // m = 30

/// Draws R, S i.i.d. uniform on [0, 1) from substreams of (seed, index).
/// GenerateFromPoint: c = R x*, d = S x* for a Gaussian x* (kept as
/// feasible_point). RawRandom: uniform right-hand sides, rejected via
/// InconsistentInstance when the least-squares residual exceeds 1e-8.
/// Deterministic: the same (config, index) always yields the same bits.
EqualityConstrainedL1 gen_instance(const ExperimentConfig& config,
                                   std::size_t realization_index);

enum class Method { PCP, CP };
std::string method_name(Method m);

struct ResultRow {
    Method method = Method::PCP;
    double tolerance = 0.0;
    double mean_iterations = 0.0;
    double mean_time_s = 0.0;
    // Runs that never reached this tolerance within max_iter (flags the row).
    std::size_t max_iter_hits = 0;
};

struct ImprovementRow {
    double tolerance = 0.0;
    double iter_pct = 0.0;  // 100 (cp - pcp)/cp
    double time_pct = 0.0;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;  // PCP rows per tolerance, then CP rows
    std::vector<ImprovementRow> improvements;
};

/// For every realization, runs pcp and cp once to the tightest tolerance and
/// reads the iteration count at each looser tolerance off the residual
/// history (the iterates do not depend on the stopping threshold, so the
/// counts match separate runs). Per-tolerance times are scaled by iteration
/// share of the measured run.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct RegionCell {
    double tau = 0.0;
    double gamma = 0.0;
    bool in_rb = false;
    bool in_sb = false;
};

/// Inclusive uniform grid of resolution^2 cells over [0, 2b]^2 with both
/// region memberships per cell. resolution >= 2.
std::vector<RegionCell> emit_region_grid(double b, std::size_t resolution);

std::string to_csv(const ExperimentResult& result);
std::string to_markdown(const ExperimentResult& result, const ExperimentConfig& config);
std::string region_csv(const std::vector<RegionCell>& cells);

}  // namespace ppds::bench
