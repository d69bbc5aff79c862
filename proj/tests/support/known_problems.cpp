#include "known_problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ppds/operators.hpp"
#include "ppds/rng.hpp"
#include "oracles.hpp"

namespace ppds::testing {
namespace {

void require(bool cond, const char* what) {
    if (!cond) throw std::logic_error(std::string("known_problems: ") + what);
}

// s in the l1 subdifferential at x: sign on the support, interior values off
// it (margin keeps the certificate stable under rounding).
Vector l1_subgradient(const Vector& x, CounterRng& rng, double off_margin) {
    Vector s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0)
            s[i] = 1.0;
        else if (x[i] < 0.0)
            s[i] = -1.0;
        else
            s[i] = off_margin * (2.0 * rng.uniform() - 1.0);
    }
    return s;
}

void check_l1_certificate(const Vector& s, const Vector& x, double slack) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0)
            require(std::abs(s[i] - 1.0) <= slack, "subgradient sign (+)");
        else if (x[i] < 0.0)
            require(std::abs(s[i] + 1.0) <= slack, "subgradient sign (-)");
        else
            require(std::abs(s[i]) <= 1.0 - 1e-6, "subgradient interior");
    }
}

}  // namespace

KnownL1 make_known_l1(std::uint64_t seed, std::size_t dim, std::size_t m_rows,
                      std::size_t s_rows, std::size_t support) {
    const std::size_t p = m_rows + s_rows;
    require(support <= p && support < dim, "support size");
    for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
        CounterRng rng(seed, 1000 + attempt);
        DenseMatrix L(p, dim);
        for (double& v : L.data) v = rng.gaussian();

        // support in the leading entries; a random permutation adds nothing
        // since L itself is exchangeable
        Vector x_hat(dim, 0.0);
        Vector sigma(support);
        for (std::size_t i = 0; i < support; ++i) {
            sigma[i] = rng.uniform() < 0.5 ? -1.0 : 1.0;
            x_hat[i] = sigma[i] * (0.5 + rng.uniform());
        }

        // least-norm u_hat with (L^T u_hat)_S = -sigma
        DenseMatrix M(p, support);
        for (std::size_t r = 0; r < p; ++r)
            for (std::size_t j = 0; j < support; ++j) M(r, j) = L(r, j);
        DenseMatrix G(support, support);
        for (std::size_t i = 0; i < support; ++i)
            for (std::size_t j = 0; j < support; ++j) {
                double acc = 0.0;
                for (std::size_t r = 0; r < p; ++r) acc += M(r, i) * M(r, j);
                G(i, j) = acc;
            }
        Vector rhs(support);
        for (std::size_t i = 0; i < support; ++i) rhs[i] = -sigma[i];
        Vector z;
        try {
            z = gauss_solve(G, rhs);
        } catch (const std::invalid_argument&) {
            continue;
        }
        Vector u_hat(p, 0.0);
        for (std::size_t r = 0; r < p; ++r) {
            double acc = 0.0;
            for (std::size_t j = 0; j < support; ++j) acc += M(r, j) * z[j];
            u_hat[r] = acc;
        }

        const Vector lt_u = naive_adjoint_matvec(L, u_hat);
        bool ok = true;
        for (std::size_t i = 0; i < dim; ++i) {
            if (i < support) {
                if (std::abs(lt_u[i] + sigma[i]) > 1e-9) ok = false;
            } else if (std::abs(lt_u[i]) > 0.97) {
                ok = false;
            }
        }
        if (!ok) continue;

        const Vector b = naive_matvec(L, x_hat);
        KnownL1 out;
        out.inst.R = DenseMatrix(m_rows, dim);
        out.inst.S = DenseMatrix(s_rows, dim);
        for (std::size_t r = 0; r < m_rows; ++r)
            for (std::size_t jcol = 0; jcol < dim; ++jcol) out.inst.R(r, jcol) = L(r, jcol);
        for (std::size_t r = 0; r < s_rows; ++r)
            for (std::size_t jcol = 0; jcol < dim; ++jcol)
                out.inst.S(r, jcol) = L(m_rows + r, jcol);
        out.inst.c.assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(m_rows));
        out.inst.d.assign(b.begin() + static_cast<std::ptrdiff_t>(m_rows), b.end());
        out.x_hat = std::move(x_hat);
        out.u_hat = std::move(u_hat);
        return out;
    }
    throw std::logic_error("make_known_l1: no certified instance in 100 attempts");
}

KnownStronglyConvex make_known_strongly_convex(std::uint64_t seed, std::size_t dim,
                                               std::size_t m_rows, std::size_t extra_rows,
                                               double rho) {
    require(rho > 0.0, "rho positive");
    const std::size_t p = m_rows + extra_rows;
    CounterRng rng(seed, 2000);

    KnownStronglyConvex kp;
    kp.rho = rho;
    kp.L = DenseMatrix(p, dim);
    for (double& v : kp.L.data) v = rng.gaussian();

    kp.x_hat.assign(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i)
        if (rng.uniform() < 0.5) kp.x_hat[i] = rng.gaussian();
    kp.u_hat.resize(p);
    for (double& v : kp.u_hat) v = rng.gaussian();

    Vector s = l1_subgradient(kp.x_hat, rng, 0.9);
    check_l1_certificate(s, kp.x_hat, 0.0);

    // a := x_hat + (s + L^T u_hat) / rho makes 0 an element of
    // d||.||_1(x_hat) + rho (x_hat - a) + L^T u_hat
    const Vector lt_u = naive_adjoint_matvec(kp.L, kp.u_hat);
    kp.a.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) kp.a[i] = kp.x_hat[i] + (s[i] + lt_u[i]) / rho;

    kp.b = naive_matvec(kp.L, kp.x_hat);
    kp.R = DenseMatrix(m_rows, dim);
    for (std::size_t r = 0; r < m_rows; ++r)
        for (std::size_t jcol = 0; jcol < dim; ++jcol) kp.R(r, jcol) = kp.L(r, jcol);
    kp.c.assign(kp.b.begin(), kp.b.begin() + static_cast<std::ptrdiff_t>(m_rows));
    return kp;
}

KnownBistrong make_known_bistrong(std::uint64_t seed, std::size_t dim, std::size_t dual_dim,
                                  double rho, double chi, double target_norm) {
    require(rho > 0.0 && chi > 0.0 && target_norm > 0.0, "moduli positive");
    CounterRng rng(seed, 3000);

    KnownBistrong kp;
    kp.rho = rho;
    kp.chi = chi;
    kp.L = DenseMatrix(dual_dim, dim);
    for (double& v : kp.L.data) v = rng.gaussian();
    const double raw_norm = operator_norm(kp.L);
    require(raw_norm > 0.0, "nonzero operator");
    for (double& v : kp.L.data) v *= target_norm / raw_norm;
    kp.l_norm = operator_norm(kp.L);

    kp.x_hat.assign(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i)
        if (rng.uniform() < 0.6) kp.x_hat[i] = rng.gaussian();
    kp.u_hat.assign(dual_dim, 0.0);
    for (std::size_t i = 0; i < dual_dim; ++i)
        if (rng.uniform() < 0.6) kp.u_hat[i] = rng.gaussian();

    Vector s = l1_subgradient(kp.x_hat, rng, 0.9);
    Vector t = l1_subgradient(kp.u_hat, rng, 0.9);
    check_l1_certificate(s, kp.x_hat, 0.0);
    check_l1_certificate(t, kp.u_hat, 0.0);

    const Vector lt_u = naive_adjoint_matvec(kp.L, kp.u_hat);
    kp.a.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) kp.a[i] = kp.x_hat[i] + (s[i] + lt_u[i]) / rho;

    // c := u_hat + (t - L x_hat) / chi puts L x_hat inside
    // d||.||_1(u_hat) + chi (u_hat - c)
    const Vector lx = naive_matvec(kp.L, kp.x_hat);
    kp.c.resize(dual_dim);
    for (std::size_t i = 0; i < dual_dim; ++i)
        kp.c[i] = kp.u_hat[i] + (t[i] - lx[i]) / chi;
    return kp;
}

InclusionProblem inclusion_from(const KnownStronglyConvex& kp) {
    InclusionProblem problem;
    problem.primal_dim = kp.L.cols;
    problem.dual_dim = kp.L.rows;
    problem.A = MonotoneOp{make_prox_l1_quadratic(kp.a, kp.rho), kp.rho};
    problem.Binv = MonotoneOp{
        [b = kp.b](const Vector& u, double g) { return point_indicator_conj_prox(b, g, u); },
        0.0};
    problem.C = CocoerciveOp::zero();
    problem.Dinv = CocoerciveOp::zero();
    problem.L = LinearMap::from_matrix(kp.L);
    problem.T = make_affine_projector(kp.R, kp.c, spd_factor(gram_rows(kp.R)));
    problem.PV = make_subspace_projector();
    return problem;
}

InclusionProblem inclusion_from(const KnownBistrong& kp) {
    InclusionProblem problem;
    problem.primal_dim = kp.L.cols;
    problem.dual_dim = kp.L.rows;
    problem.A = MonotoneOp{make_prox_l1_quadratic(kp.a, kp.rho), kp.rho};
    problem.Binv = MonotoneOp{make_prox_l1_quadratic(kp.c, kp.chi), kp.chi};
    problem.C = CocoerciveOp::zero();
    problem.Dinv = CocoerciveOp::zero();
    problem.L = LinearMap::from_matrix(kp.L, kp.l_norm);
    problem.T = FixedPointMap::identity();
    problem.PV = make_subspace_projector();
    return problem;
}

}  // namespace ppds::testing
