#pragma once

#include <span>
#include <vector>

namespace chemo::oracle {

/// Scalar reduction of the u-equation on spatially constant states.
struct HomogeneousParams {
  double a = 1.0;
  double b = 1.0;
  double rho = 1.0;
  double beta = 1.0;
  double delta = 1.0;
  double omega_measure = 1.0;
};

/// a u^rho - b (|Omega| u^beta)^delta. Throws std::invalid_argument for u < 0.
double homogeneous_rhs(double u, const HomogeneousParams& p);

/// Positive root of homogeneous_rhs when beta*delta != rho.
double homogeneous_equilibrium(const HomogeneousParams& p);

struct Trajectory {
  std::vector<double> t;
  std::vector<double> y;  // y[0] is the initial value
  bool blew_up = false;   // value exceeded the blow-up threshold; trajectory stops there
};

/// Explicit Euler over the given step sequence.
Trajectory integrate_homogeneous(double u0, const HomogeneousParams& p,
                                 std::span<const double> dt_sequence,
                                 double blowup_threshold = 1e8);

/// Same system on a uniform dt until t_end (last step clipped).
Trajectory integrate_homogeneous_uniform(double u0, const HomogeneousParams& p, double dt,
                                         double t_end, double blowup_threshold = 1e8);

struct ComparisonResult {
  Trajectory trajectory;
  double equilibrium = 0.0;
  bool monotone = true;  // every increment had the sign of (equilibrium - y)
};

/// Explicit Euler for the equality case y' = c_d - c_g y^exponent.
ComparisonResult mass_comparison(double y0, double c_d, double c_g, double exponent,
                                 double dt, double t_end);

/// Re-integrates at dt/10 over the same horizon and returns the largest
/// relative deviation at the coarse output times.
double self_check_homogeneous(double u0, const HomogeneousParams& p, double dt, double t_end);

}  // namespace chemo::oracle
