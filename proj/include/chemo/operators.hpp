#pragma once

#include "chemo/grid.hpp"
#include "chemo/params.hpp"

namespace chemo {

enum class AdvectionScheme { Central, Upwind };

/// Split of the source a u^rho - b (int u^beta)^delta - c |grad u|^gamma.
struct ReactionBreakdown {
  Field growth;
  double nonlocal_sink = 0.0;
  Field gradient_sink;
  Field total;
};

/// Five-point (three-point in 1D) Laplacian with zero-flux boundaries.
///
/// Written in flux form: face gradients (f_{i+1} - f_i)/h, boundary faces
/// carry zero flux and boundary nodes own half a cell. This is the same as the
/// central stencil with a reflected ghost node, and the trapezoidal integral
/// of the result telescopes to zero.
Field laplacian(const Field& f);

/// -chi div(u grad v) in conservative flux form with zero boundary flux.
///
/// Face flux is chi * u_face * (v_{i+1} - v_i)/h, where u_face is the
/// arithmetic mean (Central) or the upstream node value (Upwind).
Field chemo_divergence(const Field& u, const Field& v, double chi,
                       AdvectionScheme scheme = AdvectionScheme::Central);

/// |grad u|^gamma from central differences; the normal derivative is zero on
/// boundary nodes. Throws std::invalid_argument for gamma < 1.
Field grad_magnitude_pow(const Field& u, double gamma);

/// b (int max(u,0)^beta)^delta.
double nonlocal_term(const Field& u, double beta, double delta, double b);

/// Assembles every source term of the u-equation. Negative u is clamped to 0
/// inside the powers only.
ReactionBreakdown reaction(const Field& u, const ModelParams& params);

}  // namespace chemo
