#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace chemo {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Uniform node-centred box grid over Omega = [0, L_0] x [0, L_1].
///
/// Axes beyond `n` are inert: count 1, extent 1, spacing 1. Node (i, j) lives
/// at (i*h_0, j*h_1) and is stored at flat index j*count[0] + i.
struct DomainSpec {
  int n = 1;
  std::array<double, 2> extents{1.0, 1.0};
  std::array<std::size_t, 2> counts{3, 1};
  std::array<double, 2> h{0.5, 1.0};

  std::size_t size() const { return counts[0] * counts[1]; }
  double measure() const;
  double coordinate(int axis, std::size_t index) const {
    return static_cast<double>(index) * h[static_cast<std::size_t>(axis)];
  }
  /// Trapezoidal control-volume weight of a node (h per axis, halved on the boundary).
  double node_volume(std::size_t i, std::size_t j) const;

  bool operator==(const DomainSpec&) const = default;
};

/// Builds a grid. Throws std::invalid_argument on n outside {1, 2},
/// non-positive extents or fewer than 3 nodes per axis.
DomainSpec make_grid(int n, std::span<const double> extents,
                     std::span<const std::size_t> cells_per_axis);

/// Scalar samples at every node of a domain.
class Field {
 public:
  Field() = default;
  explicit Field(const DomainSpec& domain, double fill = 0.0);
  Field(const DomainSpec& domain, std::vector<double> values);

  /// Samples f(x, y) at the nodes (y = 0 in 1D).
  static Field from_function(const DomainSpec& domain,
                             const std::function<double(double, double)>& f);

  const DomainSpec& domain() const { return domain_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double& operator()(std::size_t i, std::size_t j = 0) {
    return values_[j * domain_.counts[0] + i];
  }
  double operator()(std::size_t i, std::size_t j = 0) const {
    return values_[j * domain_.counts[0] + i];
  }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

  bool all_finite() const;
  double max_abs() const;
  double min() const;
  double max() const;

 private:
  DomainSpec domain_;
  std::vector<double> values_;
};

/// Throws std::invalid_argument if the two fields live on different grids.
void require_same_grid(const Field& a, const Field& b);

/// Trapezoidal quadrature over Omega. Throws std::domain_error on NaN/Inf.
double integrate(const Field& f);

/// (integral of |f|^p)^(1/p), or max |f| for p = infinity. Requires p >= 1.
double lp_norm(const Field& f, double p);

/// Componentwise a*f + b*g.
Field combine(double a, const Field& f, double b, const Field& g);

}  // namespace chemo
