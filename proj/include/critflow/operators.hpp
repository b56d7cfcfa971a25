#pragma once

#include "critflow/mesh.hpp"

namespace critflow {

struct PoissonOptions {
  double rel_tol = 1e-12;   ///< target relative residual in the weighted norm
  double fail_tol = 1e-10;  ///< above this the solve is reported as failed
  long max_iter = 50000;
};

/// Second-order negative Laplacian. Radial meshes use the flux-form stencil
/// (exact on quadratics, symmetric under the quadrature weights); box meshes
/// use the standard 7-point stencil with zero Dirichlet values outside.
Field apply_neg_laplacian(const Field& u);

/// Inverse of apply_neg_laplacian: exact tridiagonal solve on radial meshes,
/// conjugate gradients on boxes. Throws SolverError if the relative residual
/// stays above fail_tol. `warm_start` seeds the box iteration.
Field poisson_solve(const Field& f, const PoissonOptions& opt = {},
                    const Field* warm_start = nullptr);

/// Weighted node product: sum_i w_i u_i v_i (the discrete L^2 product).
double dot_weighted(const Field& u, const Field& v);
double norm_l2(const Field& u);

/// H^1_0 scalar product computed through the operator form <L u, v>_w so
/// that discrete integration by parts is exact.
double inner_h1(const Field& u, const Field& v);
double norm_h1(const Field& u);

/// sum_i w_i coef_i |u_i|^p, p >= 1. Computed against the field maximum so
/// large amplitudes cannot overflow intermediate powers.
double integrate_power(const Field& coef, const Field& u, double p);
double integrate_power(double coef, const Field& u, double p);

// Small field helpers.
Field axpy(double a, const Field& x, const Field& y);  ///< a*x + y
Field scaled(const Field& x, double a);
Field abs_field(const Field& x);
double max_abs(const Field& x);
double min_value(const Field& x);

}  // namespace critflow
