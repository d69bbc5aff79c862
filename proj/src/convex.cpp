#include "ppds/convex.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace ppds {

InclusionProblem to_inclusion(const CompositeProblem& p) {
    if (p.primal_dim == 0 || p.dual_dim == 0)
        throw InvalidProblem("to_inclusion: dimensions must be positive");

    InclusionProblem out;
    out.primal_dim = p.primal_dim;
    out.dual_dim = p.dual_dim;

    out.A.resolvent = p.prox_f ? p.prox_f
                               : ProxFn([](const Vector& v, double) { return v; });
    out.A.strong_modulus = p.rho;

    if (p.prox_gstar) {
        out.Binv.resolvent = p.prox_gstar;
    } else if (p.prox_g) {
        out.Binv.resolvent = [pg = p.prox_g](const Vector& u, double gamma) {
            return prox_conjugate(pg, gamma, u);
        };
    } else {
        // g = 0: the conjugate is the indicator of the origin.
        out.Binv.resolvent = [](const Vector& u, double) { return Vector(u.size(), 0.0); };
    }
    out.Binv.strong_modulus = p.chi;

    out.C = p.grad_h ? CocoerciveOp{p.grad_h, p.beta} : CocoerciveOp::zero();
    out.Dinv = p.grad_lstar ? CocoerciveOp{p.grad_lstar, p.delta} : CocoerciveOp::zero();
    out.L = p.L;
    out.T = p.X_proj;
    out.PV = p.V_proj;
    return out;
}

ProxFn make_prox_l1_quadratic(Vector a, double modulus) {
    if (!(modulus > 0.0))
        throw InvalidProblem("make_prox_l1_quadratic: modulus must be positive");
    return [a = std::move(a), modulus](const Vector& x, double t) {
        Vector shifted = prox_scaled_quadratic(a, modulus, t, x);
        return soft_threshold(shifted, t / (1.0 + t * modulus));
    };
}

DenseMatrix EqualityConstrainedL1::stacked() const { return vstack(R, S); }

Vector EqualityConstrainedL1::rhs() const {
    Vector b = c;
    b.insert(b.end(), d.begin(), d.end());
    return b;
}

namespace {

void validate_instance(const EqualityConstrainedL1& inst) {
    if (inst.R.cols == 0) throw InvalidProblem("instance: empty R block");
    if (inst.S.rows > 0 && inst.S.cols != inst.R.cols)
        throw DimensionMismatch("instance: R and S column counts differ");
    if (inst.c.size() != inst.R.rows || inst.d.size() != inst.S.rows)
        throw DimensionMismatch("instance: right-hand side sizes");
}

// Shared assembly keeps pcp and cp trajectories comparable: identical step
// sizes, prox and dual update, only T and PV differ.
PcpBuild assemble(const EqualityConstrainedL1& inst, double gamma, ProjectionBlock block,
                  bool projected) {
    validate_instance(inst);
    if (!(gamma > 0.0)) throw ConfigError("pcp: gamma must be positive");

    const DenseMatrix L_mat = inst.stacked();
    const Vector b = inst.rhs();
    const double L_norm = operator_norm(L_mat);
    if (!(L_norm > 0.0)) throw InvalidProblem("pcp: zero constraint matrix");
    const double tau = 0.99 / (gamma * L_norm * L_norm);

    InclusionProblem problem;
    problem.primal_dim = inst.dim();
    problem.dual_dim = b.size();
    problem.A.resolvent = [](const Vector& v, double t) { return soft_threshold(v, t); };
    problem.A.strong_modulus = 0.0;
    problem.Binv.resolvent = [b](const Vector& u, double g) {
        return point_indicator_conj_prox(b, g, u);
    };
    problem.Binv.strong_modulus = 0.0;
    problem.C = CocoerciveOp::zero();
    problem.Dinv = CocoerciveOp::zero();
    problem.L = LinearMap::from_matrix(L_mat, L_norm);
    problem.PV = make_subspace_projector();

    if (projected) {
        const bool use_r = block == ProjectionBlock::RowBlockR;
        const DenseMatrix& P = use_r ? inst.R : inst.S;
        const Vector& rhs_block = use_r ? inst.c : inst.d;
        if (P.rows == 0)
            throw InvalidProblem("pcp: projection block has no rows");
        problem.T = make_affine_projector(P, rhs_block, spd_factor(gram_rows(P)));
    } else {
        problem.T = FixedPointMap::identity();
    }

    return {std::move(problem), Static{tau, gamma, 1.0}, L_norm};
}

}  // namespace

PcpBuild pcp_build(const EqualityConstrainedL1& inst, double gamma, ProjectionBlock block) {
    return assemble(inst, gamma, block, true);
}

SolveReport pcp_solve(const EqualityConstrainedL1& inst, double gamma, const StopRule& stop,
                      const StepObserver& observer) {
    PcpBuild build = pcp_build(inst, gamma);
    const Vector x0(build.problem.primal_dim, 0.0);
    const Vector u0(build.problem.dual_dim, 0.0);
    return solve(build.problem, build.schedule, x0, u0, stop, observer);
}

SolveReport cp_solve(const EqualityConstrainedL1& inst, double gamma, const StopRule& stop,
                     const StepObserver& observer) {
    PcpBuild build = assemble(inst, gamma, ProjectionBlock::RowBlockR, false);
    const Vector x0(build.problem.primal_dim, 0.0);
    const Vector u0(build.problem.dual_dim, 0.0);
    return solve(build.problem, build.schedule, x0, u0, stop, observer);
}

namespace {

// Gaussian elimination with partial pivoting on a square system; returns
// false when a pivot falls below the singularity cutoff.
bool dense_solve(DenseMatrix A, Vector b, Vector& x) {
    const std::size_t p = A.rows;
    double scale = 0.0;
    for (double v : A.data) scale = std::max(scale, std::abs(v));
    const double cutoff = 1e-12 * std::max(scale, 1e-300);

    for (std::size_t col = 0; col < p; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < p; ++r)
            if (std::abs(A(r, col)) > std::abs(A(pivot, col))) pivot = r;
        if (std::abs(A(pivot, col)) < cutoff) return false;
        if (pivot != col) {
            for (std::size_t j = 0; j < p; ++j) std::swap(A(pivot, j), A(col, j));
            std::swap(b[pivot], b[col]);
        }
        const double inv = 1.0 / A(col, col);
        for (std::size_t r = col + 1; r < p; ++r) {
            const double f = A(r, col) * inv;
            if (f == 0.0) continue;
            for (std::size_t j = col; j < p; ++j) A(r, j) -= f * A(col, j);
            b[r] -= f * b[col];
        }
    }
    x.assign(p, 0.0);
    for (std::size_t ii = p; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t j = ii + 1; j < p; ++j) s -= A(ii, j) * x[j];
        x[ii] = s / A(ii, ii);
    }
    return true;
}

}  // namespace

Vector l1_lp_oracle(const EqualityConstrainedL1& inst) {
    validate_instance(inst);
    const std::size_t N = inst.dim();
    const std::size_t p = inst.m() + inst.n();
    if (N > 24 || p > 12)
        throw ConfigError("l1_lp_oracle: instance too large (dim <= 24, rows <= 12)");
    if (p == 0 || p > N)
        throw InconsistentInstance("l1_lp_oracle: needs 0 < rows <= dim");

    const DenseMatrix L = inst.stacked();
    const Vector b = inst.rhs();

    std::vector<std::size_t> support(p);
    const auto first_support = [&] {
        for (std::size_t i = 0; i < p; ++i) support[i] = i;
    };
    const auto next_support = [&]() -> bool {
        // Lexicographic successor of the index combination.
        std::size_t i = p;
        while (i-- > 0) {
            if (support[i] + (p - i) < N) {
                ++support[i];
                for (std::size_t j = i + 1; j < p; ++j) support[j] = support[j - 1] + 1;
                return true;
            }
        }
        return false;
    };

    const auto solve_support = [&](Vector& x_full) -> bool {
        DenseMatrix A(p, p);
        for (std::size_t r = 0; r < p; ++r)
            for (std::size_t jc = 0; jc < p; ++jc) A(r, jc) = L(r, support[jc]);
        Vector z;
        if (!dense_solve(std::move(A), b, z)) return false;
        x_full.assign(N, 0.0);
        for (std::size_t jc = 0; jc < p; ++jc) x_full[support[jc]] = z[jc];
        return true;
    };

    // Pass 1: best vertex objective.
    double best = std::numeric_limits<double>::infinity();
    bool any = false;
    first_support();
    do {
        Vector x;
        if (!solve_support(x)) continue;
        any = true;
        double obj = 0.0;
        for (double v : x) obj += std::abs(v);
        best = std::min(best, obj);
    } while (next_support());
    if (!any)
        throw InconsistentInstance("l1_lp_oracle: no invertible support (rank-deficient rows)");

    // Pass 2: collect near-optimal vertices; distinct points tying in value
    // mean the minimizer is not unique.
    Vector winner;
    double winner_obj = std::numeric_limits<double>::infinity();
    std::vector<Vector> ties;
    first_support();
    do {
        Vector x;
        if (!solve_support(x)) continue;
        double obj = 0.0;
        for (double v : x) obj += std::abs(v);
        if (obj > best + 1e-9) continue;
        for (const Vector& seen : ties) {
            double diff = 0.0;
            for (std::size_t i = 0; i < N; ++i)
                diff = std::max(diff, std::abs(seen[i] - x[i]));
            if (diff > 1e-7)
                throw DegenerateOracle(
                    "l1_lp_oracle: two optimal vertices differ by " + std::to_string(diff));
        }
        if (obj < winner_obj) {
            winner = x;
            winner_obj = obj;
        }
        ties.push_back(std::move(x));
    } while (next_support());

    return winner;
}

}  // namespace ppds
