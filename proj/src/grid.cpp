#include "chemo/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace chemo {

double DomainSpec::measure() const {
  double m = 1.0;
  for (int k = 0; k < n; ++k) m *= extents[static_cast<std::size_t>(k)];
  return m;
}

double DomainSpec::node_volume(std::size_t i, std::size_t j) const {
  const std::array<std::size_t, 2> idx{i, j};
  double vol = 1.0;
  for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
    const bool edge = idx[k] == 0 || idx[k] + 1 == counts[k];
    vol *= edge ? 0.5 * h[k] : h[k];
  }
  return vol;
}

DomainSpec make_grid(int n, std::span<const double> extents,
                     std::span<const std::size_t> cells_per_axis) {
  if (n != 1 && n != 2) {
    throw std::invalid_argument("dimension must be 1 or 2, got " + std::to_string(n));
  }
  if (extents.size() != static_cast<std::size_t>(n) ||
      cells_per_axis.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("need exactly n extents and n node counts");
  }
  DomainSpec d;
  d.n = n;
  for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
    if (!(extents[k] > 0.0) || !std::isfinite(extents[k])) {
      throw std::invalid_argument("extents must be positive and finite");
    }
    if (cells_per_axis[k] < 3) {
      throw std::invalid_argument("each axis needs at least 3 nodes");
    }
    d.extents[k] = extents[k];
    d.counts[k] = cells_per_axis[k];
    d.h[k] = extents[k] / static_cast<double>(cells_per_axis[k] - 1);
  }
  if (n == 1) {
    d.extents[1] = 1.0;
    d.counts[1] = 1;
    d.h[1] = 1.0;
  }
  return d;
}

Field::Field(const DomainSpec& domain, double fill)
    : domain_(domain), values_(domain.size(), fill) {}

Field::Field(const DomainSpec& domain, std::vector<double> values)
    : domain_(domain), values_(std::move(values)) {
  if (values_.size() != domain_.size()) {
    throw std::invalid_argument("field length does not match the grid");
  }
}

Field Field::from_function(const DomainSpec& domain,
                           const std::function<double(double, double)>& f) {
  Field out(domain);
  for (std::size_t j = 0; j < domain.counts[1]; ++j) {
    const double y = domain.n == 2 ? domain.coordinate(1, j) : 0.0;
    for (std::size_t i = 0; i < domain.counts[0]; ++i) {
      out(i, j) = f(domain.coordinate(0, i), y);
    }
  }
  return out;
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double x) { return std::isfinite(x); });
}

double Field::max_abs() const {
  double m = 0.0;
  for (double x : values_) m = std::max(m, std::abs(x));
  return m;
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.domain() == b.domain())) {
    throw std::invalid_argument("fields live on different grids");
  }
}

namespace {

template <typename F>
double weighted_sum(const Field& f, F&& transform) {
  const DomainSpec& d = f.domain();
  double total = 0.0;
  for (std::size_t j = 0; j < d.counts[1]; ++j) {
    for (std::size_t i = 0; i < d.counts[0]; ++i) {
      total += d.node_volume(i, j) * transform(f(i, j));
    }
  }
  return total;
}

}  // namespace

double integrate(const Field& f) {
  if (!f.all_finite()) throw std::domain_error("integrate: non-finite field value");
  return weighted_sum(f, [](double x) { return x; });
}

double lp_norm(const Field& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: exponent must be >= 1");
  if (!f.all_finite()) throw std::domain_error("lp_norm: non-finite field value");
  if (std::isinf(p)) return f.max_abs();
  if (p == 1.0) return weighted_sum(f, [](double x) { return std::abs(x); });
  const double m = f.max_abs();
  if (m == 0.0) return 0.0;
  const double s = weighted_sum(f, [p, m](double x) { return std::pow(std::abs(x) / m, p); });
  return m * std::pow(s, 1.0 / p);
}

Field combine(double a, const Field& f, double b, const Field& g) {
  require_same_grid(f, g);
  Field out(f.domain());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a * f[k] + b * g[k];
  return out;
}

}  // namespace chemo
