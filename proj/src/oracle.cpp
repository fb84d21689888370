#include "chemo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chemo::oracle {

namespace {
constexpr double kNoThreshold = std::numeric_limits<double>::infinity();
}  // namespace

double homogeneous_rhs(double u, const HomogeneousParams& p) {
  if (u < 0.0) throw std::invalid_argument("homogeneous_rhs: u must be >= 0");
  return p.a * std::pow(u, p.rho) - p.b * std::pow(p.omega_measure * std::pow(u, p.beta), p.delta);
}

double homogeneous_equilibrium(const HomogeneousParams& p) {
  const double power = p.beta * p.delta - p.rho;
  if (power == 0.0) throw std::invalid_argument("no isolated equilibrium when beta*delta == rho");
  return std::pow(p.a / (p.b * std::pow(p.omega_measure, p.delta)), 1.0 / power);
}

Trajectory integrate_homogeneous(double u0, const HomogeneousParams& p,
                                 std::span<const double> dt_sequence, double blowup_threshold) {
  if (u0 < 0.0) throw std::invalid_argument("integrate_homogeneous: u0 must be >= 0");
  Trajectory tr;
  tr.t.push_back(0.0);
  tr.y.push_back(u0);
  double t = 0.0;
  double y = u0;
  for (double dt : dt_sequence) {
    // Euler can undershoot below zero; the rhs is evaluated on the clamped value
    // exactly as the PDE reaction clamps inside its powers.
    const double f = p.a * (y > 0.0 ? std::pow(y, p.rho) : 0.0) -
                     p.b * std::pow(p.omega_measure * (y > 0.0 ? std::pow(y, p.beta) : 0.0), p.delta);
    y = y + dt * f;
    t += dt;
    tr.t.push_back(t);
    tr.y.push_back(y);
    if (!(std::abs(y) <= blowup_threshold)) {
      tr.blew_up = true;
      break;
    }
  }
  return tr;
}

Trajectory integrate_homogeneous_uniform(double u0, const HomogeneousParams& p, double dt,
                                         double t_end, double blowup_threshold) {
  std::vector<double> steps;
  double t = 0.0;
  while (t < t_end) {
    const double h = std::min(dt, t_end - t);
    steps.push_back(h);
    t += h;
    if (t_end - t < 1e-14 * t_end) break;
  }
  return integrate_homogeneous(u0, p, steps, blowup_threshold);
}

ComparisonResult mass_comparison(double y0, double c_d, double c_g, double exponent, double dt,
                                 double t_end) {
  if (y0 < 0.0 || c_d < 0.0 || !(c_g > 0.0) || !(exponent >= 1.0)) {
    throw std::invalid_argument("mass_comparison: need y0 >= 0, c_d >= 0, c_g > 0, exponent >= 1");
  }
  ComparisonResult res;
  res.equilibrium = std::pow(c_d / c_g, 1.0 / exponent);
  Trajectory& tr = res.trajectory;
  tr.t.push_back(0.0);
  tr.y.push_back(y0);
  double t = 0.0;
  double y = y0;
  while (t < t_end && t_end - t > 1e-14 * t_end) {
    const double h = std::min(dt, t_end - t);
    const double next = y + h * (c_d - c_g * std::pow(std::max(y, 0.0), exponent));
    const double step = next - y;
    const double gap = res.equilibrium - y;
    if ((step > 0.0 && gap < 0.0) || (step < 0.0 && gap > 0.0)) res.monotone = false;
    y = next;
    t += h;
    tr.t.push_back(t);
    tr.y.push_back(y);
  }
  return res;
}

double self_check_homogeneous(double u0, const HomogeneousParams& p, double dt, double t_end) {
  const Trajectory coarse = integrate_homogeneous_uniform(u0, p, dt, t_end, kNoThreshold);
  const Trajectory fine = integrate_homogeneous_uniform(u0, p, dt / 10.0, t_end, kNoThreshold);
  double worst = 0.0;
  for (std::size_t k = 0; k < coarse.y.size(); ++k) {
    const std::size_t kf = std::min(10 * k, fine.y.size() - 1);
    const double scale = std::max(std::abs(fine.y[kf]), 1e-300);
    worst = std::max(worst, std::abs(coarse.y[k] - fine.y[kf]) / scale);
  }
  return worst;
}

}  // namespace chemo::oracle
