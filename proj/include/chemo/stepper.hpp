#pragma once

#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "chemo/diagnostics.hpp"
#include "chemo/operators.hpp"
#include "chemo/params.hpp"
#include "chemo/state.hpp"

namespace chemo {

/// Time-step and termination controls.
struct StepControl {
  double dt_init = 1e-2;  // largest step ever taken
  double dt_min = 1e-12;
  double cfl_safety = 0.4;
  double blowup_threshold = 1e8;
  double t_end = 1.0;
  /// Diffusion of u (and of v when tau = 1) is taken implicitly. Lifts the
  /// diffusive limit; the per-step mass budget is then only approximate.
  bool implicit_diffusion = false;
  AdvectionScheme advection = AdvectionScheme::Central;
  double elliptic_tol = 1e-10;

  void validate() const;
  bool operator==(const StepControl&) const = default;
};

enum class Limiter { Diffusion, Advection, Reaction, MaxStep, EndTime };

struct StepSize {
  double dt = 0.0;
  Limiter limiter = Limiter::MaxStep;
  bool underflow = false;  // stability demanded dt < dt_min
};

/// Largest stable explicit step: cfl_safety times the minimum of the
/// diffusive limit 1/(2 sum_k h_k^-2), the advective limit
/// min_k h_k/(chi max|d_k v|) and the reaction limit max(||u||_inf, tiny)/max|source|,
/// capped by dt_init and clipped so that t never passes t_end.
StepSize stable_dt(const SimState& state, const ModelParams& params, const StepControl& ctrl);

/// A step produced NaN/Inf, or an inner solve failed.
class NumericalCorruption : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StepResult {
  SimState state;
  double reaction_integral = 0.0;  // integral of the total source at the old state
};

/// Advances by exactly dt. All right-hand sides are taken from `state` before
/// anything is written. Throws NumericalCorruption on non-finite output.
StepResult advance(const SimState& state, const ModelParams& params, const StepControl& ctrl,
                   double dt);

/// advance() with dt = stable_dt(...). Throws NumericalCorruption on underflow as well.
SimState step(const SimState& state, const ModelParams& params, const StepControl& ctrl);

enum class RunStatus { ReachedTEnd, BlowUpSuspected, StepUnderflow, NumericalCorruption };

std::string_view to_string(RunStatus s);

struct DiagnosticsCadence {
  std::size_t every = 10;  // steps between recorded rows
  double k_norm = kDefaultNormExponent;
};

struct RunOutcome {
  RunStatus status = RunStatus::ReachedTEnd;
  double t_final = 0.0;
  TimeSeries series;
  std::vector<double> dt_history;
  SimState final_state;
  /// Largest per-step |dMass - dt * int(source)| / max(1, |mass|); explicit mode only.
  double max_budget_residual = 0.0;
  std::string message;
};

/// Steps from `initial` until t_end, an L^inf crossing of blowup_threshold,
/// step underflow or corruption. For tau = 0 the initial v is recomputed
/// from the initial u.
RunOutcome run(const SimState& initial, const ModelParams& params, const StepControl& ctrl,
               const DiagnosticsCadence& diag = {});

}  // namespace chemo
