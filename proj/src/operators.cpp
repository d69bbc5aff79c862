#include "ppds/operators.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace ppds {

MonotoneOp MonotoneOp::zero() {
    return {[](const Vector& v, double) { return v; }, 0.0};
}

CocoerciveOp CocoerciveOp::zero() {
    return {[](const Vector& v) { return Vector(v.size(), 0.0); }, kInfiniteModulus};
}

LinearMap LinearMap::from_matrix(const DenseMatrix& M, double norm_hint) {
    const double norm = norm_hint >= 0.0 ? norm_hint : operator_norm(M);
    return {[M](const Vector& x) { return matvec(M, x); },
            [M](const Vector& u) { return adjoint_matvec(M, u); },
            norm};
}

LinearMap LinearMap::zero(std::size_t primal_dim, std::size_t dual_dim) {
    return {[dual_dim](const Vector&) { return Vector(dual_dim, 0.0); },
            [primal_dim](const Vector&) { return Vector(primal_dim, 0.0); },
            0.0};
}

FixedPointMap FixedPointMap::identity() {
    return {[](const Vector& v) { return v; }, 0.5, std::nullopt};
}

Vector soft_threshold(const Vector& x, double t) {
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        out[i] = xi > t ? xi - t : (xi < -t ? xi + t : 0.0);
    }
    return out;
}

Vector prox_conjugate(const ProxFn& prox_g, double gamma, const Vector& x) {
    Vector inner = prox_g(scaled(x, 1.0 / gamma), 1.0 / gamma);
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - gamma * inner[i];
    return out;
}

Vector point_indicator_conj_prox(const Vector& b, double gamma, const Vector& u) {
    if (b.size() != u.size())
        throw DimensionMismatch("point_indicator_conj_prox: b and u sizes differ");
    Vector out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - gamma * b[i];
    return out;
}

Vector prox_scaled_quadratic(const Vector& a, double sigma, double t, const Vector& x) {
    if (a.size() != x.size())
        throw DimensionMismatch("prox_scaled_quadratic: a and x sizes differ");
    const double ts = t * sigma;
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] + ts * a[i]) / (1.0 + ts);
    return out;
}

FixedPointMap make_affine_projector(const DenseMatrix& R, const Vector& c,
                                    const SpdFactor& factor) {
    if (c.size() != R.rows)
        throw DimensionMismatch("make_affine_projector: c size != row count");
    if (factor.dim() != R.rows)
        throw DimensionMismatch("make_affine_projector: factor not built from R R^T");

    FixedPointMap P;
    P.apply = [R, c, factor](const Vector& x) {
        Vector residual = matvec(R, x);
        for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= c[i];
        Vector y = spd_solve(factor, residual);
        Vector correction = adjoint_matvec(R, y);
        return sub(x, correction);
    };
    P.averagedness = 0.5;
    P.known_fixed_point = adjoint_matvec(R, spd_solve(factor, c));
    return P;
}

FixedPointMap make_subspace_projector() { return FixedPointMap::identity(); }

FixedPointMap make_subspace_projector(const DenseMatrix& Q) {
    // Columns must be orthonormal: Q^T Q = I.
    for (std::size_t a = 0; a < Q.cols; ++a)
        for (std::size_t b = a; b < Q.cols; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < Q.rows; ++i) s += Q(i, a) * Q(i, b);
            const double expect = a == b ? 1.0 : 0.0;
            if (std::abs(s - expect) > 1e-10)
                throw NotOrthonormal("make_subspace_projector: Q^T Q deviates at (" +
                                     std::to_string(a) + "," + std::to_string(b) + ")");
        }

    FixedPointMap P;
    P.apply = [Q](const Vector& x) {
        Vector coeff = adjoint_matvec(Q, x);
        return matvec(Q, coeff);
    };
    P.averagedness = 0.5;
    P.known_fixed_point = Vector(Q.rows, 0.0);
    return P;
}

}  // namespace ppds
