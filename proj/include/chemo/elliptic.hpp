#pragma once

#include <cstddef>

#include "chemo/grid.hpp"

namespace chemo {

struct EllipticSolveReport {
  Field v;
  std::size_t iterations = 0;
  double residual = 0.0;  // max-norm of rhs - (shift - diffusion*Lap) v, over the diagonal
  bool converged = false;
};

/// Solves (shift*I - diffusion*Lap) x = rhs with the zero-flux Laplacian of
/// the operators module, by conjugate gradients in the trapezoid-weighted
/// inner product (in which the operator is symmetric positive definite).
///
/// Stops once the residual max-norm, divided by the operator diagonal
/// shift + 2*diffusion*sum(1/h^2), is <= tol. The unscaled max-norm cannot
/// drop below roughly eps*|v|*4/h^2 on fine grids. If `max_iterations` is hit
/// first, the report carries converged = false and the last residual.
EllipticSolveReport solve_shifted(const Field& rhs, const Field& initial, double shift,
                                  double diffusion, double tol,
                                  std::size_t max_iterations = 0);

/// Chemoattractant for tau = 0: (-Lap + I) v = u, starting from v = u.
EllipticSolveReport solve_helmholtz(const Field& u, double tol = 1e-10);

}  // namespace chemo
