#pragma once

#include <cstddef>

#include "chemo/grid.hpp"

namespace chemo {

/// Simulation snapshot: time, both unknowns and step bookkeeping.
struct SimState {
  double t = 0.0;
  Field u;
  Field v;
  std::size_t step_count = 0;
  double dt_last = 0.0;
};

}  // namespace chemo
