#include "chemo/elliptic.hpp"

#include <cmath>
#include <stdexcept>

#include "chemo/operators.hpp"

namespace chemo {

namespace {

Field apply(const Field& x, double shift, double diffusion) {
  Field lap = laplacian(x);
  Field out(x.domain());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = shift * x[k] - diffusion * lap[k];
  return out;
}

double weighted_dot(const Field& a, const Field& b) {
  const DomainSpec& d = a.domain();
  double s = 0.0;
  for (std::size_t j = 0; j < d.counts[1]; ++j) {
    for (std::size_t i = 0; i < d.counts[0]; ++i) s += d.node_volume(i, j) * a(i, j) * b(i, j);
  }
  return s;
}

// Diagonal of the operator; identical at every node for the flux-form stencil.
double diagonal(const DomainSpec& d, double shift, double diffusion) {
  double inv_h2 = 0.0;
  for (int k = 0; k < d.n; ++k) inv_h2 += 1.0 / (d.h[k] * d.h[k]);
  return shift + 2.0 * diffusion * inv_h2;
}

}  // namespace

EllipticSolveReport solve_shifted(const Field& rhs, const Field& initial, double shift,
                                  double diffusion, double tol, std::size_t max_iterations) {
  if (!(tol > 0.0)) throw std::invalid_argument("solve_shifted: tol must be > 0");
  if (!(shift > 0.0) || !(diffusion >= 0.0)) {
    throw std::invalid_argument("solve_shifted: need shift > 0 and diffusion >= 0");
  }
  require_same_grid(rhs, initial);
  if (!rhs.all_finite()) throw std::domain_error("solve_shifted: non-finite right-hand side");
  if (max_iterations == 0) max_iterations = 10 * rhs.size() + 100;
  const double inv_diag = 1.0 / diagonal(rhs.domain(), shift, diffusion);

  EllipticSolveReport rep;
  rep.v = initial;
  Field r = combine(1.0, rhs, -1.0, apply(rep.v, shift, diffusion));
  rep.residual = r.max_abs() * inv_diag;
  if (rep.residual <= tol) {
    rep.converged = true;
    return rep;
  }
  Field p = r;
  double rr = weighted_dot(r, r);
  while (rep.iterations < max_iterations) {
    Field ap = apply(p, shift, diffusion);
    const double alpha = rr / weighted_dot(p, ap);
    for (std::size_t k = 0; k < p.size(); ++k) {
      rep.v[k] += alpha * p[k];
      r[k] -= alpha * ap[k];
    }
    ++rep.iterations;
    // Recompute the true residual periodically so round-off in the
    // recurrence cannot fake convergence.
    if (rep.iterations % 50 == 0) r = combine(1.0, rhs, -1.0, apply(rep.v, shift, diffusion));
    rep.residual = r.max_abs() * inv_diag;
    if (rep.residual <= tol) {
      Field check = combine(1.0, rhs, -1.0, apply(rep.v, shift, diffusion));
      rep.residual = check.max_abs() * inv_diag;
      if (rep.residual <= tol) {
        rep.converged = true;
        return rep;
      }
      r = std::move(check);
    }
    const double rr_new = weighted_dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = r[k] + beta * p[k];
  }
  return rep;
}

EllipticSolveReport solve_helmholtz(const Field& u, double tol) {
  return solve_shifted(u, u, 1.0, 1.0, tol);
}

}  // namespace chemo
