#pragma once

namespace chemo {

/// Coefficients and exponents of the chemotaxis-growth system
///
///   u_t   = Lap u - chi div(u grad v) + a u^rho - b (int u^beta)^delta - c |grad u|^gamma
///   tau v_t = Lap v - v + u
///
/// with zero-flux boundaries. `test_mode` relaxes the strict positivity of
/// chi, a, b, c to nonnegativity so that individual terms can be switched off.
struct ModelParams {
  double chi = 1.0;
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
  double rho = 1.0;
  double beta = 1.0;
  double delta = 1.0;
  double gamma = 1.0;
  int tau = 1;
  bool test_mode = false;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

}  // namespace chemo
