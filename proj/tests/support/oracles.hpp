#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here is deliberately written from scratch with different
// algorithms or loop orders than the production code.

#include "ppds/linalg.hpp"
#include "ppds/operators.hpp"

namespace ppds::testing {

// Column-major accumulation, unlike the library's row-major dot products.
Vector naive_matvec(const DenseMatrix& M, const Vector& v);
Vector naive_adjoint_matvec(const DenseMatrix& M, const Vector& v);

// Gaussian elimination with partial pivoting on a dense square system.
Vector gauss_solve(DenseMatrix A, Vector b);

// Largest singular value via a full cyclic-Jacobi eigendecomposition of M^T M.
double jacobi_spectral_norm(const DenseMatrix& M, double tol = 1e-13,
                            int max_sweeps = 60);

// Per-component minimizer of t|z| + (z - x)^2 / 2 by candidate enumeration.
double shrink_1d_oracle(double x, double t);

// Closed-form prox of the conjugate of g = (sigma/2)||. - a||^2, derived by
// hand: sigma (x - gamma a) / (sigma + gamma).
Vector quad_conj_prox_oracle(const Vector& a, double sigma, double gamma,
                             const Vector& x);

// One unprojected primal-dual iteration coded independently of step():
//   u+    = prox_binv(u + gamma (L xbar - dinv(u)), gamma)
//   x+    = prox_a(x - tau (L^T u+ + c(x)), tau)
//   xbar+ = x+ + theta (x+ - x)
struct RefState {
    Vector x, x_bar, u;
};
RefState ref_pd_step(const DenseMatrix& L, const ProxFn& prox_a, const ProxFn& prox_binv,
                     const MapFn& c_of_x, const MapFn& dinv_of_u, double tau, double gamma,
                     double theta, const RefState& s);

}  // namespace ppds::testing
