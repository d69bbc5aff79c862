#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ppds/errors.hpp"

namespace ppds {

using Vector = std::vector<double>;

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
double norm_inf(const Vector& v);
bool all_finite(const Vector& v);

Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scaled(const Vector& v, double s);
// y += alpha * x
void axpy(double alpha, const Vector& x, Vector& y);

/// Dense row-major matrix.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static DenseMatrix identity(std::size_t n);
};

Vector matvec(const DenseMatrix& M, const Vector& v);
// M^T v without forming the transpose.
Vector adjoint_matvec(const DenseMatrix& M, const Vector& v);

DenseMatrix vstack(const DenseMatrix& top, const DenseMatrix& bottom);
// R R^T
DenseMatrix gram_rows(const DenseMatrix& R);

struct JitterPolicy {
    double initial = 1e-12;
    double growth = 10.0;
    int max_tries = 5;
};
// initial = 1e-12 * trace(M)/dim (floored at 1e-12), growth x10, 5 escalations.
JitterPolicy default_jitter_policy(const DenseMatrix& M);

/// Lower-triangular Cholesky factor of M + jitter_used * I.
struct SpdFactor {
    DenseMatrix lower;
    double jitter_used = 0.0;

    std::size_t dim() const { return lower.rows; }
};

// Factors M + jitter * I for the smallest jitter in the escalation schedule
// (starting at zero) that admits a Cholesky factorization.
SpdFactor spd_factor(const DenseMatrix& M, const JitterPolicy& policy);
SpdFactor spd_factor(const DenseMatrix& M);
Vector spd_solve(const SpdFactor& F, const Vector& b);

/// Largest singular value via power iteration on M^T M from a seeded start.
/// Reproducible bit-for-bit for a fixed seed.
double operator_norm(const DenseMatrix& M, double tol = 1e-9, int max_iter = 5000,
                     std::uint64_t seed = 0);

}  // namespace ppds
