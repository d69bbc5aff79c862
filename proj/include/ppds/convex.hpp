#pragma once

#include "ppds/solver.hpp"

namespace ppds {

/// min_x f(x) + (g box ell)(L x) + h(x) over Fix(X_proj), duals confined to
/// the subspace V_proj projects onto. Supply g either through prox_g (the
/// conjugate resolvent is derived via the Moreau identity) or directly
/// through prox_gstar; the latter wins when both are set.
struct CompositeProblem {
    ProxFn prox_f;      // empty = f is zero
    double rho = 0.0;   // strong convexity of f

    ProxFn prox_g;      // empty together with prox_gstar = g is zero
    ProxFn prox_gstar;
    double chi = 0.0;   // strong convexity of g* (= smoothness of g)

    MapFn grad_h;       // empty = h is zero
    double beta = kInfiniteModulus;   // cocoercivity of grad h

    MapFn grad_lstar;   // empty = ell* has no smooth part (D^{-1} = 0)
    double delta = kInfiniteModulus;  // cocoercivity of grad ell*

    LinearMap L;
    FixedPointMap X_proj = FixedPointMap::identity();
    FixedPointMap V_proj = FixedPointMap::identity();

    std::size_t primal_dim = 0;
    std::size_t dual_dim = 0;
};

/// Lowers the composite description to the operator form consumed by solve().
/// Moduli carry over unchanged.
InclusionProblem to_inclusion(const CompositeProblem& p);

/// prox of ||.||_1 + (modulus/2) ||. - a||^2 in closed form
/// (quadratic shift followed by shrinkage).
ProxFn make_prox_l1_quadratic(Vector a, double modulus);

/// min ||x||_1 subject to R x = c and S x = d. S may have zero rows.
struct EqualityConstrainedL1 {
    DenseMatrix R;  // m x N
    DenseMatrix S;  // n x N, n >= 0
    Vector c, d;
    // Populated by generators that start from a feasible point (testing aid).
    std::optional<Vector> feasible_point;

    std::size_t dim() const { return R.cols; }
    std::size_t m() const { return R.rows; }
    std::size_t n() const { return S.rows; }

    DenseMatrix stacked() const;  // (m+n) x N
    Vector rhs() const;           // (c; d)
};

enum class ProjectionBlock { RowBlockR, RowBlockS };

struct PcpBuild {
    InclusionProblem problem;
    StepSchedule schedule;  // Static with tau = 0.99/(gamma ||L||^2), theta = 1
    double L_norm = 0.0;
};

/// Projected primal-dual setup for the l1 problem: f = ||.||_1, g the point
/// indicator of the stacked right-hand side, T the projector onto the chosen
/// row block's equations, V the whole space.
PcpBuild pcp_build(const EqualityConstrainedL1& inst, double gamma,
                   ProjectionBlock block = ProjectionBlock::RowBlockR);

SolveReport pcp_solve(const EqualityConstrainedL1& inst, double gamma,
                      const StopRule& stop, const StepObserver& observer = nullptr);

/// Same iteration with T = PV = identity (the unprojected baseline), identical
/// step sizes. Dual updates coincide with pcp by construction.
SolveReport cp_solve(const EqualityConstrainedL1& inst, double gamma,
                     const StopRule& stop, const StepObserver& observer = nullptr);

/// Exact minimizer by vertex enumeration (supports of size m+n). Only for
/// desk-size instances: dim <= 24 and m+n <= 12. Throws DegenerateOracle when
/// two vertices tie in objective but differ as points.
Vector l1_lp_oracle(const EqualityConstrainedL1& inst);

}  // namespace ppds
