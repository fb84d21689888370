#pragma once

#include <string_view>
#include <vector>

#include "chemo/params.hpp"
#include "chemo/state.hpp"

namespace chemo {

/// One sample of the monitored quantities.
struct SeriesRow {
  double t = 0.0;
  double dt = 0.0;
  double mass = 0.0;                // integral of u
  double l_beta = 0.0;              // ||u||_{L^beta}
  double l_k = 0.0;                 // ||u||_{L^k}
  double linf = 0.0;                // ||u||_{L^inf}
  double min_u = 0.0;
  double nonlocal = 0.0;            // b (int u^beta)^delta
  double reaction_integral = 0.0;   // integral of the total source
  double neg_fraction = 0.0;        // share of nodes with u < 0
  double v_linf = 0.0;
};

/// Column names, in the order of SeriesRow.
inline constexpr std::string_view kSeriesHeader =
    "t,dt,mass,l_beta,l_k,linf,min_u,nonlocal,reaction_integral,neg_fraction,v_linf";

/// Append-only record with strictly increasing t.
class TimeSeries {
 public:
  /// Throws std::invalid_argument if row.t does not exceed the last t.
  void append(const SeriesRow& row);
  const std::vector<SeriesRow>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }
  std::size_t size() const { return rows_.size(); }
  const SeriesRow& back() const { return rows_.back(); }
  double max_mass() const;
  double max_linf() const;

 private:
  std::vector<SeriesRow> rows_;
};

inline constexpr double kDefaultNormExponent = 4.0;

SeriesRow record(const SimState& state, const ModelParams& params, double k = kDefaultNormExponent);

/// |(mass_next - mass_prev) - dt_next * reaction_integral_prev| / max(1, |mass_prev|)
/// for two rows taken on consecutive explicit steps.
double mass_budget_residual(const SeriesRow& prev, const SeriesRow& next);

enum class Verdict { ApparentlyBounded, ApparentlyGrowing };

std::string_view to_string(Verdict v);

struct VerdictOptions {
  double tail_fraction = 0.5;
  /// Allowed positive slope of linf, relative to max(1, mean tail linf), per unit time.
  double slope_slack = 1e-3;
  double blowup_threshold = 1e8;
};

/// Least-squares trend of linf over the trailing rows. Throws
/// std::invalid_argument when fewer than 10 rows fall in the tail.
Verdict boundedness_verdict(const TimeSeries& series, const VerdictOptions& opts = {});

}  // namespace chemo
