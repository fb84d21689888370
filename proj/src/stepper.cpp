#include "chemo/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chemo/elliptic.hpp"

namespace chemo {

void StepControl::validate() const {
  if (!(dt_min > 0.0) || !(dt_min <= dt_init)) {
    throw std::invalid_argument("need 0 < dt_min <= dt_init");
  }
  if (!(cfl_safety > 0.0 && cfl_safety < 1.0)) {
    throw std::invalid_argument("cfl_safety must lie in (0, 1)");
  }
  if (!(blowup_threshold > 0.0)) throw std::invalid_argument("blowup_threshold must be > 0");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be > 0");
  if (!(elliptic_tol > 0.0)) throw std::invalid_argument("elliptic_tol must be > 0");
}

namespace {

constexpr double kTinyScale = 1e-300;

double max_face_gradient(const Field& v, std::size_t axis) {
  const DomainSpec& d = v.domain();
  const std::size_t stride = axis == 0 ? 1 : d.counts[0];
  double m = 0.0;
  for (std::size_t j = 0; j < d.counts[1]; ++j) {
    for (std::size_t i = 0; i < d.counts[0]; ++i) {
      const std::size_t idx = axis == 0 ? i : j;
      if (idx + 1 >= d.counts[axis]) continue;
      const std::size_t k = j * d.counts[0] + i;
      m = std::max(m, std::abs(v[k + stride] - v[k]) / d.h[axis]);
    }
  }
  return m;
}

StepSize stable_dt_with_source(const SimState& state, const ModelParams& params,
                               const StepControl& ctrl, const Field& source) {
  const DomainSpec& d = state.u.domain();
  double limit = std::numeric_limits<double>::infinity();
  Limiter which = Limiter::MaxStep;
  auto consider = [&](double candidate, Limiter l) {
    if (candidate < limit) {
      limit = candidate;
      which = l;
    }
  };

  if (!ctrl.implicit_diffusion) {
    double inv_h2 = 0.0;
    for (int k = 0; k < d.n; ++k) inv_h2 += 1.0 / (d.h[k] * d.h[k]);
    consider(1.0 / (2.0 * inv_h2), Limiter::Diffusion);
  }
  if (params.chi > 0.0) {
    for (std::size_t axis = 0; axis < static_cast<std::size_t>(d.n); ++axis) {
      const double g = max_face_gradient(state.v, axis);
      if (g > 0.0) consider(d.h[axis] / (params.chi * g), Limiter::Advection);
    }
  }
  const double source_max = source.max_abs();
  if (source_max > 0.0) {
    consider(std::max(state.u.max_abs(), kTinyScale) / source_max, Limiter::Reaction);
  }

  StepSize out;
  out.dt = ctrl.cfl_safety * limit;
  out.limiter = which;
  if (out.dt > ctrl.dt_init) {
    out.dt = ctrl.dt_init;
    out.limiter = Limiter::MaxStep;
  }
  if (out.dt < ctrl.dt_min) out.underflow = true;
  const double remaining = ctrl.t_end - state.t;
  if (out.dt >= remaining) {
    out.dt = remaining;
    out.limiter = Limiter::EndTime;
    out.underflow = false;
  }
  return out;
}

void require_finite(const Field& f, const char* what) {
  if (!f.all_finite()) throw NumericalCorruption(std::string("non-finite values in ") + what);
}

}  // namespace

StepSize stable_dt(const SimState& state, const ModelParams& params, const StepControl& ctrl) {
  return stable_dt_with_source(state, params, ctrl, reaction(state.u, params).total);
}

StepResult advance(const SimState& state, const ModelParams& params, const StepControl& ctrl,
                   double dt) {
  require_finite(state.u, "u");
  require_finite(state.v, "v");
  const Field& u = state.u;
  const Field& v = state.v;

  const ReactionBreakdown src = reaction(u, params);
  const Field transport = chemo_divergence(u, v, params.chi, ctrl.advection);

  StepResult out;
  out.reaction_integral = integrate(src.total);
  out.state.t = state.t + dt;
  out.state.step_count = state.step_count + 1;
  out.state.dt_last = dt;

  Field explicit_part(u.domain());
  for (std::size_t k = 0; k < u.size(); ++k) explicit_part[k] = transport[k] + src.total[k];

  Field v_rhs;
  if (params.tau == 1) {
    v_rhs = Field(v.domain());
    if (ctrl.implicit_diffusion) {
      for (std::size_t k = 0; k < v.size(); ++k) v_rhs[k] = v[k] + dt * u[k];
    } else {
      const Field lap_v = laplacian(v);
      for (std::size_t k = 0; k < v.size(); ++k) v_rhs[k] = v[k] + dt * (lap_v[k] - v[k] + u[k]);
    }
  }

  if (ctrl.implicit_diffusion) {
    Field rhs(u.domain());
    for (std::size_t k = 0; k < u.size(); ++k) rhs[k] = u[k] + dt * explicit_part[k];
    require_finite(rhs, "u right-hand side");
    auto solve = solve_shifted(rhs, u, 1.0, dt, ctrl.elliptic_tol);
    if (!solve.converged) throw NumericalCorruption("implicit diffusion solve did not converge");
    out.state.u = std::move(solve.v);
  } else {
    const Field lap_u = laplacian(u);
    out.state.u = Field(u.domain());
    for (std::size_t k = 0; k < u.size(); ++k) {
      out.state.u[k] = u[k] + dt * (lap_u[k] + explicit_part[k]);
    }
  }
  require_finite(out.state.u, "u");

  if (params.tau == 1) {
    if (ctrl.implicit_diffusion) {
      auto solve = solve_shifted(v_rhs, v, 1.0 + dt, dt, ctrl.elliptic_tol);
      if (!solve.converged) throw NumericalCorruption("implicit v solve did not converge");
      out.state.v = std::move(solve.v);
    } else {
      out.state.v = std::move(v_rhs);
    }
  } else {
    auto solve = solve_helmholtz(out.state.u, ctrl.elliptic_tol);
    if (!solve.converged) throw NumericalCorruption("elliptic solve did not converge");
    out.state.v = std::move(solve.v);
  }
  require_finite(out.state.v, "v");
  return out;
}

SimState step(const SimState& state, const ModelParams& params, const StepControl& ctrl) {
  const StepSize sz = stable_dt(state, params, ctrl);
  if (sz.underflow) throw NumericalCorruption("stable step fell below dt_min");
  return advance(state, params, ctrl, sz.dt).state;
}

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::ReachedTEnd: return "ReachedTEnd";
    case RunStatus::BlowUpSuspected: return "BlowUpSuspected";
    case RunStatus::StepUnderflow: return "StepUnderflow";
    case RunStatus::NumericalCorruption: return "NumericalCorruption";
  }
  return "Unknown";
}

RunOutcome run(const SimState& initial, const ModelParams& params, const StepControl& ctrl,
               const DiagnosticsCadence& diag) {
  params.validate();
  ctrl.validate();
  if (diag.every == 0) throw std::invalid_argument("diagnostics cadence must be >= 1");
  require_same_grid(initial.u, initial.v);

  RunOutcome out;
  SimState state = initial;
  state.dt_last = 0.0;
  auto finish = [&](RunStatus status, std::string message) {
    out.status = status;
    out.t_final = state.t;
    out.message = std::move(message);
    if (out.series.empty() || out.series.back().t < state.t) {
      try {
        out.series.append(record(state, params, diag.k_norm));
      } catch (const std::exception&) {
        // corrupted state: the last good row stays the final one
      }
    }
    out.final_state = std::move(state);
    return std::move(out);
  };

  try {
    require_finite(state.u, "initial u");
    if (params.tau == 0) {
      auto solve = solve_helmholtz(state.u, ctrl.elliptic_tol);
      if (!solve.converged) throw NumericalCorruption("initial elliptic solve did not converge");
      state.v = std::move(solve.v);
    }
    require_finite(state.v, "initial v");
    out.series.append(record(state, params, diag.k_norm));
  } catch (const std::exception& e) {
    return finish(RunStatus::NumericalCorruption, e.what());
  }
  if (state.u.max_abs() > ctrl.blowup_threshold) {
    return finish(RunStatus::BlowUpSuspected, "initial data above blow-up threshold");
  }

  double mass = integrate(state.u);
  while (state.t < ctrl.t_end) {
    StepResult next;
    StepSize sz;
    try {
      const ReactionBreakdown src = reaction(state.u, params);
      require_finite(src.total, "reaction");
      sz = stable_dt_with_source(state, params, ctrl, src.total);
      if (sz.underflow) {
        return finish(RunStatus::StepUnderflow, "stable step fell below dt_min");
      }
      next = advance(state, params, ctrl, sz.dt);
    } catch (const std::exception& e) {
      return finish(RunStatus::NumericalCorruption, e.what());
    }
    if (sz.limiter == Limiter::EndTime) next.state.t = ctrl.t_end;

    const double new_mass = integrate(next.state.u);
    if (!ctrl.implicit_diffusion) {
      const double residual = std::abs((new_mass - mass) - sz.dt * next.reaction_integral) /
                              std::max(1.0, std::abs(mass));
      out.max_budget_residual = std::max(out.max_budget_residual, residual);
    }
    mass = new_mass;
    out.dt_history.push_back(sz.dt);
    state = std::move(next.state);

    if (state.u.max_abs() > ctrl.blowup_threshold) {
      return finish(RunStatus::BlowUpSuspected, "L^inf norm crossed the blow-up threshold");
    }
    if (state.step_count % diag.every == 0) {
      try {
        out.series.append(record(state, params, diag.k_norm));
      } catch (const std::domain_error& e) {
        return finish(RunStatus::NumericalCorruption, e.what());
      }
    }
  }
  return finish(RunStatus::ReachedTEnd, "");
}

}  // namespace chemo
