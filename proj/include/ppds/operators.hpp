#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "ppds/linalg.hpp"

namespace ppds {

inline constexpr double kInfiniteModulus = std::numeric_limits<double>::infinity();

/// prox-style callable: (point, scale) -> resolvent at that scale.
using ProxFn = std::function<Vector(const Vector&, double)>;
using MapFn = std::function<Vector(const Vector&)>;

/// Maximally monotone operator, accessed only through its resolvent.
/// strong_modulus is the strong monotonicity constant (0 = merely monotone).
struct MonotoneOp {
    ProxFn resolvent;
    double strong_modulus = 0.0;

    static MonotoneOp zero();  // resolvent = identity
};

/// Cocoercive operator accessed by evaluation. modulus = +inf encodes the
/// zero operator, which callers may skip entirely.
struct CocoerciveOp {
    MapFn eval;
    double modulus = kInfiniteModulus;

    bool is_zero() const { return std::isinf(modulus); }
    static CocoerciveOp zero();
};

/// Bounded linear map with its adjoint and an operator-norm bound.
struct LinearMap {
    MapFn forward;
    MapFn adjoint;
    double norm_bound = 0.0;

    // Copies M; estimates the norm by power iteration unless a hint >= 0 is given.
    static LinearMap from_matrix(const DenseMatrix& M, double norm_hint = -1.0);
    static LinearMap zero(std::size_t primal_dim, std::size_t dual_dim);
};

/// Averaged quasi-nonexpansive map (projector, identity, ...).
struct FixedPointMap {
    MapFn apply;
    double averagedness = 0.5;
    std::optional<Vector> known_fixed_point;

    static FixedPointMap identity();
};

Vector soft_threshold(const Vector& x, double t);

/// Moreau identity: prox of the conjugate from the prox of the function,
/// prox_{gamma g*}(x) = x - gamma prox_{g/gamma}(x/gamma).
Vector prox_conjugate(const ProxFn& prox_g, double gamma, const Vector& x);

/// prox of the conjugate of the indicator of {b}: u - gamma * b.
Vector point_indicator_conj_prox(const Vector& b, double gamma, const Vector& u);

/// prox of t * (sigma/2) ||. - a||^2.
Vector prox_scaled_quadratic(const Vector& a, double sigma, double t, const Vector& x);

/// Projection onto {x : R x = c}; factor must be built from R R^T.
/// known_fixed_point is R^T (R R^T)^{-1} c.
FixedPointMap make_affine_projector(const DenseMatrix& R, const Vector& c,
                                    const SpdFactor& factor);

/// Orthogonal projection onto a subspace: the whole space (identity) or the
/// span of the orthonormal columns of Q.
FixedPointMap make_subspace_projector();
FixedPointMap make_subspace_projector(const DenseMatrix& Q);

}  // namespace ppds
