#include "chemo/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chemo {

namespace {

// Visits every grid line along `axis`, handing the callback the flat index of
// the first node, the stride between neighbours and the line length.
template <typename F>
void for_each_line(const DomainSpec& d, std::size_t axis, F&& body) {
  const std::size_t nx = d.counts[0];
  const std::size_t ny = d.counts[1];
  if (axis == 0) {
    for (std::size_t j = 0; j < ny; ++j) body(j * nx, std::size_t{1}, nx);
  } else {
    for (std::size_t i = 0; i < nx; ++i) body(i, nx, ny);
  }
}

// out[node] -= (F_{+} - F_{-}) / V for face fluxes produced by `flux(k, k+1)`.
// Boundary faces have zero flux; boundary nodes own half a cell.
template <typename Flux>
void accumulate_flux_divergence(const DomainSpec& d, Field& out, Flux&& flux) {
  for (std::size_t axis = 0; axis < static_cast<std::size_t>(d.n); ++axis) {
    const double h = d.h[axis];
    for_each_line(d, axis, [&](std::size_t start, std::size_t stride, std::size_t len) {
      double left = 0.0;
      for (std::size_t m = 0; m < len; ++m) {
        const std::size_t k = start + m * stride;
        const double right = (m + 1 < len) ? flux(k, k + stride, h) : 0.0;
        const double vol = (m == 0 || m + 1 == len) ? 0.5 * h : h;
        out[k] -= (right - left) / vol;
        left = right;
      }
    });
  }
}

inline double clamped_pow(double x, double p) { return x > 0.0 ? std::pow(x, p) : 0.0; }

}  // namespace

Field laplacian(const Field& f) {
  Field out(f.domain(), 0.0);
  // Flux is minus the face gradient so that out = +div(grad f).
  accumulate_flux_divergence(f.domain(), out, [&](std::size_t k, std::size_t kp, double h) {
    return -(f[kp] - f[k]) / h;
  });
  return out;
}

Field chemo_divergence(const Field& u, const Field& v, double chi, AdvectionScheme scheme) {
  require_same_grid(u, v);
  Field out(u.domain(), 0.0);
  accumulate_flux_divergence(u.domain(), out, [&](std::size_t k, std::size_t kp, double h) {
    const double grad_v = (v[kp] - v[k]) / h;
    double u_face;
    if (scheme == AdvectionScheme::Upwind) {
      u_face = grad_v >= 0.0 ? u[k] : u[kp];
    } else {
      u_face = 0.5 * (u[k] + u[kp]);
    }
    return chi * u_face * grad_v;
  });
  return out;
}

Field grad_magnitude_pow(const Field& u, double gamma) {
  if (!(gamma >= 1.0)) throw std::invalid_argument("grad_magnitude_pow: gamma must be >= 1");
  const DomainSpec& d = u.domain();
  Field sq(d, 0.0);
  for (std::size_t axis = 0; axis < static_cast<std::size_t>(d.n); ++axis) {
    const double h = d.h[axis];
    for_each_line(d, axis, [&](std::size_t start, std::size_t stride, std::size_t len) {
      for (std::size_t m = 1; m + 1 < len; ++m) {
        const std::size_t k = start + m * stride;
        const double g = (u[k + stride] - u[k - stride]) / (2.0 * h);
        sq[k] += g * g;
      }
    });
  }
  Field out(d);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = gamma == 2.0 ? sq[k] : std::pow(std::sqrt(sq[k]), gamma);
  }
  return out;
}

double nonlocal_term(const Field& u, double beta, double delta, double b) {
  Field powered(u.domain());
  for (std::size_t k = 0; k < u.size(); ++k) powered[k] = clamped_pow(u[k], beta);
  const double integral = integrate(powered);
  return b * std::pow(integral, delta);
}

ReactionBreakdown reaction(const Field& u, const ModelParams& params) {
  ReactionBreakdown r;
  r.growth = Field(u.domain());
  for (std::size_t k = 0; k < u.size(); ++k) r.growth[k] = params.a * clamped_pow(u[k], params.rho);
  r.nonlocal_sink = nonlocal_term(u, params.beta, params.delta, params.b);
  r.gradient_sink = grad_magnitude_pow(u, params.gamma);
  for (double& g : r.gradient_sink.values()) g *= params.c;
  r.total = Field(u.domain());
  for (std::size_t k = 0; k < u.size(); ++k) {
    r.total[k] = r.growth[k] - r.nonlocal_sink - r.gradient_sink[k];
  }
  return r;
}

}  // namespace chemo
