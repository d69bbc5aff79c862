#include "ppds/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppds/rng.hpp"

namespace ppds {

namespace {

void require_same_size(const Vector& a, const Vector& b, const char* what) {
    if (a.size() != b.size())
        throw DimensionMismatch(std::string(what) + ": " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
}

}  // namespace

double dot(const Vector& a, const Vector& b) {
    require_same_size(a, b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

double norm_inf(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool all_finite(const Vector& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

Vector add(const Vector& a, const Vector& b) {
    require_same_size(a, b, "add");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vector sub(const Vector& a, const Vector& b) {
    require_same_size(a, b, "sub");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vector scaled(const Vector& v, double s) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * s;
    return out;
}

void axpy(double alpha, const Vector& x, Vector& y) {
    require_same_size(x, y, "axpy");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix M(n, n);
    for (std::size_t i = 0; i < n; ++i) M(i, i) = 1.0;
    return M;
}

Vector matvec(const DenseMatrix& M, const Vector& v) {
    if (M.cols != v.size())
        throw DimensionMismatch("matvec: " + std::to_string(M.rows) + "x" +
                                std::to_string(M.cols) + " times " +
                                std::to_string(v.size()));
    Vector out(M.rows);
    for (std::size_t i = 0; i < M.rows; ++i) {
        const double* row = M.data.data() + i * M.cols;
        double s = 0.0;
        for (std::size_t j = 0; j < M.cols; ++j) s += row[j] * v[j];
        out[i] = s;
    }
    return out;
}

Vector adjoint_matvec(const DenseMatrix& M, const Vector& v) {
    if (M.rows != v.size())
        throw DimensionMismatch("adjoint_matvec: " + std::to_string(M.rows) + "x" +
                                std::to_string(M.cols) + " transposed times " +
                                std::to_string(v.size()));
    Vector out(M.cols, 0.0);
    for (std::size_t i = 0; i < M.rows; ++i) {
        const double* row = M.data.data() + i * M.cols;
        const double vi = v[i];
        for (std::size_t j = 0; j < M.cols; ++j) out[j] += row[j] * vi;
    }
    return out;
}

DenseMatrix vstack(const DenseMatrix& top, const DenseMatrix& bottom) {
    if (top.rows > 0 && bottom.rows > 0 && top.cols != bottom.cols)
        throw DimensionMismatch("vstack: column counts differ");
    const std::size_t cols = top.rows > 0 ? top.cols : bottom.cols;
    DenseMatrix out(top.rows + bottom.rows, cols);
    std::copy(top.data.begin(), top.data.end(), out.data.begin());
    std::copy(bottom.data.begin(), bottom.data.end(),
              out.data.begin() + static_cast<std::ptrdiff_t>(top.data.size()));
    return out;
}

DenseMatrix gram_rows(const DenseMatrix& R) {
    DenseMatrix G(R.rows, R.rows);
    for (std::size_t i = 0; i < R.rows; ++i) {
        const double* ri = R.data.data() + i * R.cols;
        for (std::size_t j = i; j < R.rows; ++j) {
            const double* rj = R.data.data() + j * R.cols;
            double s = 0.0;
            for (std::size_t k = 0; k < R.cols; ++k) s += ri[k] * rj[k];
            G(i, j) = s;
            G(j, i) = s;
        }
    }
    return G;
}

JitterPolicy default_jitter_policy(const DenseMatrix& M) {
    double trace = 0.0;
    for (std::size_t i = 0; i < M.rows; ++i) trace += M(i, i);
    JitterPolicy p;
    const double scale = M.rows > 0 ? trace / static_cast<double>(M.rows) : 0.0;
    p.initial = scale > 0.0 ? 1e-12 * scale : 1e-12;
    return p;
}

namespace {

// In-place attempt; returns false on a non-positive pivot.
bool try_cholesky(const DenseMatrix& M, double jitter, DenseMatrix& L) {
    const std::size_t n = M.rows;
    L = DenseMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = M(j, j) + jitter;
        for (std::size_t k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
        if (!(d > 0.0)) return false;
        const double ljj = std::sqrt(d);
        L(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = M(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            L(i, j) = s / ljj;
        }
    }
    return true;
}

}  // namespace

SpdFactor spd_factor(const DenseMatrix& M, const JitterPolicy& policy) {
    if (M.rows != M.cols) throw DimensionMismatch("spd_factor: matrix not square");
    double max_abs = 0.0, max_asym = 0.0;
    for (std::size_t i = 0; i < M.rows; ++i)
        for (std::size_t j = 0; j < M.cols; ++j) {
            max_abs = std::max(max_abs, std::abs(M(i, j)));
            max_asym = std::max(max_asym, std::abs(M(i, j) - M(j, i)));
        }
    if (max_asym > 1e-12 * std::max(max_abs, 1e-300))
        throw NotSymmetric("spd_factor: relative asymmetry " + std::to_string(max_asym));

    SpdFactor F;
    double jitter = 0.0;
    for (int attempt = 0; attempt <= policy.max_tries; ++attempt) {
        if (try_cholesky(M, jitter, F.lower)) {
            F.jitter_used = jitter;
            return F;
        }
        jitter = attempt == 0 ? policy.initial : jitter * policy.growth;
    }
    throw NotSpd("spd_factor: not positive definite after " +
                 std::to_string(policy.max_tries) + " jitter escalations");
}

SpdFactor spd_factor(const DenseMatrix& M) { return spd_factor(M, default_jitter_policy(M)); }

Vector spd_solve(const SpdFactor& F, const Vector& b) {
    const std::size_t n = F.dim();
    if (b.size() != n) throw DimensionMismatch("spd_solve: rhs size mismatch");
    const DenseMatrix& L = F.lower;
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * y[k];
        y[i] = s / L(i, i);
    }
    Vector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= L(k, ii) * x[k];
        x[ii] = s / L(ii, ii);
    }
    return x;
}

double operator_norm(const DenseMatrix& M, double tol, int max_iter, std::uint64_t seed) {
    if (M.rows == 0 || M.cols == 0) return 0.0;
    CounterRng rng(seed, 0x6f70u);  // dedicated substream for the start vector
    Vector v = gaussian_vector(rng, M.cols);
    double nv = norm2(v);
    if (nv == 0.0) v[0] = 1.0, nv = 1.0;
    for (double& x : v) x /= nv;

    double sigma_prev = -1.0;
    for (int it = 0; it < max_iter; ++it) {
        Vector w = matvec(M, v);
        const double sigma = norm2(w);
        if (sigma < 1e-300) return 0.0;
        if (sigma_prev >= 0.0 && std::abs(sigma - sigma_prev) <= tol * sigma) return sigma;
        sigma_prev = sigma;
        Vector z = adjoint_matvec(M, w);
        const double nz = norm2(z);
        for (std::size_t i = 0; i < z.size(); ++i) v[i] = z[i] / nz;
    }
    throw NoConvergence("operator_norm: Rayleigh quotient still moving after " +
                        std::to_string(max_iter) + " iterations");
}

}  // namespace ppds
