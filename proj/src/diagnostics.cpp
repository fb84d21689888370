#include "chemo/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chemo/operators.hpp"

namespace chemo {

void TimeSeries::append(const SeriesRow& row) {
  if (!rows_.empty() && !(row.t > rows_.back().t)) {
    throw std::invalid_argument("time series rows must have strictly increasing t");
  }
  rows_.push_back(row);
}

double TimeSeries::max_mass() const {
  double m = -kInfinity;
  for (const auto& r : rows_) m = std::max(m, r.mass);
  return m;
}

double TimeSeries::max_linf() const {
  double m = 0.0;
  for (const auto& r : rows_) m = std::max(m, r.linf);
  return m;
}

SeriesRow record(const SimState& state, const ModelParams& params, double k) {
  const Field& u = state.u;
  SeriesRow row;
  row.t = state.t;
  row.dt = state.dt_last;
  row.mass = integrate(u);
  row.l_beta = lp_norm(u, params.beta);
  row.l_k = lp_norm(u, k);
  row.linf = lp_norm(u, kInfinity);
  row.min_u = u.min();
  const ReactionBreakdown r = reaction(u, params);
  row.nonlocal = r.nonlocal_sink;
  row.reaction_integral = integrate(r.total);
  const auto negatives = std::count_if(u.values().begin(), u.values().end(),
                                       [](double x) { return x < 0.0; });
  row.neg_fraction = static_cast<double>(negatives) / static_cast<double>(u.size());
  row.v_linf = state.v.size() == 0 ? 0.0 : lp_norm(state.v, kInfinity);
  return row;
}

double mass_budget_residual(const SeriesRow& prev, const SeriesRow& next) {
  const double change = next.mass - prev.mass;
  const double predicted = next.dt * prev.reaction_integral;
  return std::abs(change - predicted) / std::max(1.0, std::abs(prev.mass));
}

std::string_view to_string(Verdict v) {
  return v == Verdict::ApparentlyBounded ? "ApparentlyBounded" : "ApparentlyGrowing";
}

Verdict boundedness_verdict(const TimeSeries& series, const VerdictOptions& opts) {
  if (!(opts.tail_fraction > 0.0 && opts.tail_fraction < 1.0)) {
    throw std::invalid_argument("tail_fraction must lie in (0, 1)");
  }
  const auto& rows = series.rows();
  const auto tail = static_cast<std::size_t>(
      std::ceil(opts.tail_fraction * static_cast<double>(rows.size())));
  if (tail < 10) throw std::invalid_argument("series too short: fewer than 10 rows in the tail");
  const std::size_t first = rows.size() - tail;

  double mean_t = 0.0;
  double mean_y = 0.0;
  double peak = 0.0;
  for (std::size_t k = first; k < rows.size(); ++k) {
    mean_t += rows[k].t;
    mean_y += rows[k].linf;
    peak = std::max(peak, rows[k].linf);
  }
  mean_t /= static_cast<double>(tail);
  mean_y /= static_cast<double>(tail);
  double sty = 0.0;
  double stt = 0.0;
  for (std::size_t k = first; k < rows.size(); ++k) {
    const double dt = rows[k].t - mean_t;
    sty += dt * (rows[k].linf - mean_y);
    stt += dt * dt;
  }
  const double slope = stt > 0.0 ? sty / stt : 0.0;
  const bool flat = slope <= opts.slope_slack * std::max(1.0, mean_y);
  const bool small = peak < opts.blowup_threshold / 10.0;
  return flat && small ? Verdict::ApparentlyBounded : Verdict::ApparentlyGrowing;
}

}  // namespace chemo
