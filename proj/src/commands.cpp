#include "chemo/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "chemo/elliptic.hpp"

namespace chemo {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::size_t> refined(const std::vector<std::size_t>& cells, std::size_t factor) {
  std::vector<std::size_t> out;
  for (std::size_t c : cells) out.push_back((c - 1) * factor + 1);
  return out;
}

double cosine_product(const DomainSpec& d, double x, double y) {
  double v = std::cos(M_PI * x / d.extents[0]);
  if (d.n == 2) v *= std::cos(M_PI * y / d.extents[1]);
  return v;
}

double neumann_eigenvalue(const DomainSpec& d) {
  double lambda = 0.0;
  for (int k = 0; k < d.n; ++k) lambda += M_PI * M_PI / (d.extents[k] * d.extents[k]);
  return lambda;
}

}  // namespace

int exit_code_for(RunStatus status) {
  switch (status) {
    case RunStatus::ReachedTEnd: return kExitReachedTEnd;
    case RunStatus::BlowUpSuspected: return kExitBlowUp;
    case RunStatus::StepUnderflow: return kExitUnderflow;
    case RunStatus::NumericalCorruption: return kExitCorruption;
  }
  return kExitFailure;
}

regime::RegimeReport regime_report_for(const RunConfig& cfg) {
  const DomainSpec d = cfg.domain();
  if (cfg.cgn) return regime::classify(cfg.params, cfg.n, d.measure(), cfg.cgn, regime::CgnSource::Supplied);
  if (cfg.cgn_estimate) {
    const auto est = regime::estimate_cgn(d, cfg.params.rho, cfg.params.beta, cfg.params.gamma, cfg.seed);
    return regime::classify(cfg.params, cfg.n, d.measure(), est.lower_bound,
                            regime::CgnSource::EstimatedLowerBound);
  }
  return regime::classify(cfg.params, cfg.n, d.measure(), std::nullopt);
}

SimulateResult simulate(const RunConfig& cfg) {
  SimulateResult res;
  res.report = regime_report_for(cfg);
  const SimState initial = make_initial_state(cfg);
  res.outcome = run(initial, cfg.params, cfg.control, DiagnosticsCadence{cfg.diag_every, cfg.k_norm});
  res.exit_code = exit_code_for(res.outcome.status);
  return res;
}

void write_series_csv(std::ostream& os, const TimeSeries& series) {
  os << kSeriesHeader << '\n';
  for (const SeriesRow& r : series.rows()) {
    os << fmt(r.t) << ',' << fmt(r.dt) << ',' << fmt(r.mass) << ',' << fmt(r.l_beta) << ','
       << fmt(r.l_k) << ',' << fmt(r.linf) << ',' << fmt(r.min_u) << ',' << fmt(r.nonlocal) << ','
       << fmt(r.reaction_integral) << ',' << fmt(r.neg_fraction) << ',' << fmt(r.v_linf) << '\n';
  }
}

void write_field_csv(std::ostream& os, const Field& f) {
  const DomainSpec& d = f.domain();
  for (std::size_t j = 0; j < d.counts[1]; ++j) {
    for (std::size_t i = 0; i < d.counts[0]; ++i) {
      if (i) os << ',';
      os << fmt(f(i, j));
    }
    os << '\n';
  }
}

int cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  const SimulateResult res = simulate(cfg);
  const RunOutcome& out = res.outcome;

  auto open = [&](const std::string& suffix) {
    std::ofstream f(cfg.out_prefix + suffix);
    if (!f) throw std::runtime_error("cannot write " + cfg.out_prefix + suffix);
    return f;
  };
  try {
    {
      auto f = open("_series.csv");
      write_series_csv(f, out.series);
      if (!f) throw std::runtime_error("write failed: series");
    }
    {
      auto f = open("_final_u.csv");
      write_field_csv(f, out.final_state.u);
    }
    {
      auto f = open("_final_v.csv");
      write_field_csv(f, out.final_state.v);
    }
    {
      auto f = open("_report.txt");
      f << "status = " << to_string(out.status) << '\n';
      f << "t_final = " << fmt(out.t_final) << '\n';
      f << "steps = " << out.dt_history.size() << '\n';
      f << "max_budget_residual = " << fmt(out.max_budget_residual) << '\n';
      if (!out.message.empty()) f << "message = " << out.message << '\n';
      try {
        VerdictOptions opts;
        opts.tail_fraction = cfg.verdict_tail;
        opts.blowup_threshold = cfg.control.blowup_threshold;
        f << "verdict = " << to_string(boundedness_verdict(out.series, opts)) << '\n';
      } catch (const std::invalid_argument&) {
        f << "verdict = n/a  # too few recorded rows\n";
      }
      f << regime::to_text(res.report);
      if (!f) throw std::runtime_error("write failed: report");
    }
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  log << "status = " << to_string(out.status) << ", t_final = " << fmt(out.t_final) << ", steps = "
      << out.dt_history.size() << '\n';
  return res.exit_code;
}

std::string cmd_classify(const RunConfig& cfg) { return regime::to_text(regime_report_for(cfg)); }

std::string sweep_csv_header(const std::vector<SweepAxis>& axes) {
  std::string h;
  for (const auto& a : axes) h += a.key + ",";
  return h + "classification,status,max_mass,max_linf";
}

std::vector<SweepPoint> cmd_sweep(const RunConfig& cfg, const std::vector<SweepAxis>& axes,
                                  bool simulate_points, bool write_csv) {
  if (axes.empty() || axes.size() > 2) throw std::invalid_argument("sweep needs one or two axes");
  for (const auto& axis : axes) {
    ModelParams probe;
    set_numeric_param(probe, axis.key, 1.0);  // rejects non-numeric keys
    if (axis.values.empty()) throw std::invalid_argument("sweep axis " + axis.key + " has no values");
  }

  std::vector<std::vector<double>> grid;
  for (double v0 : axes[0].values) {
    if (axes.size() == 1) {
      grid.push_back({v0});
    } else {
      for (double v1 : axes[1].values) grid.push_back({v0, v1});
    }
  }

  auto evaluate = [&](const std::vector<double>& values) {
    SweepPoint pt;
    pt.values = values;
    RunConfig local = cfg;
    for (std::size_t k = 0; k < axes.size(); ++k) set_numeric_param(local.params, axes[k].key, values[k]);
    try {
      local.params.validate();
    } catch (const std::invalid_argument&) {
      pt.classification = "Invalid";
      pt.status = "InvalidParams";
      pt.max_mass = pt.max_linf = std::nan("");
      return pt;
    }
    pt.classification = std::string(regime::to_string(regime_report_for(local).classification));
    if (simulate_points) {
      const SimulateResult res = simulate(local);
      pt.status = std::string(to_string(res.outcome.status));
      pt.max_mass = res.outcome.series.max_mass();
      pt.max_linf = res.outcome.series.max_linf();
    } else {
      pt.status = "NotRun";
      pt.max_mass = pt.max_linf = std::nan("");
    }
    return pt;
  };

  std::vector<SweepPoint> points(grid.size());
  if (simulate_points) {
    // Simulations share nothing, so points run on independent threads.
    const std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < grid.size(); start += workers) {
      std::vector<std::future<SweepPoint>> batch;
      const std::size_t stop = std::min(grid.size(), start + workers);
      for (std::size_t k = start; k < stop; ++k) {
        batch.push_back(std::async(std::launch::async, evaluate, grid[k]));
      }
      for (std::size_t k = start; k < stop; ++k) points[k] = batch[k - start].get();
    }
  } else {
    for (std::size_t k = 0; k < grid.size(); ++k) points[k] = evaluate(grid[k]);
  }

  if (write_csv) {
    std::ofstream f(cfg.out_prefix + "_sweep.csv");
    if (!f) throw std::runtime_error("cannot write " + cfg.out_prefix + "_sweep.csv");
    f << sweep_csv_header(axes) << '\n';
    for (const auto& pt : points) {
      for (double v : pt.values) f << fmt(v) << ',';
      f << pt.classification << ',' << pt.status << ',' << fmt(pt.max_mass) << ',' << fmt(pt.max_linf)
        << '\n';
    }
  }
  return points;
}

ConvergenceTable cmd_convergence(const RunConfig& cfg, const std::string& case_name) {
  if (case_name != "heat_cosine" && case_name != "helmholtz_cosine") {
    throw std::invalid_argument("unknown convergence case '" + case_name +
                                "'; valid cases: heat_cosine, helmholtz_cosine");
  }
  ConvergenceTable table;
  table.case_name = case_name;
  for (std::size_t factor : {1u, 2u, 4u}) {
    const DomainSpec d = make_grid(cfg.n, cfg.extents, refined(cfg.cells, factor));
    const double lambda = neumann_eigenvalue(d);
    double err = 0.0;
    if (case_name == "heat_cosine") {
      ModelParams pure;
      pure.test_mode = true;
      pure.chi = pure.a = pure.b = pure.c = 0.0;
      pure.tau = 1;
      StepControl ctrl = cfg.control;
      ctrl.implicit_diffusion = false;
      ctrl.dt_init = ctrl.t_end;
      ctrl.dt_min = std::min(ctrl.dt_min, ctrl.t_end);
      SimState s;
      s.u = Field::from_function(d, [&](double x, double y) { return cosine_product(d, x, y); });
      s.v = Field(d, 0.0);
      const RunOutcome out = run(s, pure, ctrl, DiagnosticsCadence{1000000, 2.0});
      if (out.status != RunStatus::ReachedTEnd) throw std::runtime_error("heat_cosine run failed");
      const double decay = std::exp(-lambda * ctrl.t_end);
      const Field exact = Field::from_function(d, [&](double x, double y) { return decay * cosine_product(d, x, y); });
      err = combine(1.0, out.final_state.u, -1.0, exact).max_abs();
    } else {
      const Field u = Field::from_function(d, [&](double x, double y) { return 1.0 + cosine_product(d, x, y); });
      const auto sol = solve_shifted(u, u, 1.0, 1.0, 1e-13);
      if (!sol.converged) throw std::runtime_error("helmholtz_cosine solve failed");
      const Field exact = Field::from_function(
          d, [&](double x, double y) { return 1.0 + cosine_product(d, x, y) / (1.0 + lambda); });
      err = combine(1.0, sol.v, -1.0, exact).max_abs();
    }
    table.h.push_back(d.h[0]);
    table.errors.push_back(err);
  }
  for (std::size_t k = 0; k + 1 < table.errors.size(); ++k) {
    table.orders.push_back(std::log2(table.errors[k] / table.errors[k + 1]));
  }
  return table;
}

std::string to_text(const ConvergenceTable& t) {
  std::ostringstream os;
  os << "case = " << t.case_name << '\n';
  os << "h,max_error,observed_order\n";
  for (std::size_t k = 0; k < t.h.size(); ++k) {
    os << fmt(t.h[k]) << ',' << fmt(t.errors[k]) << ',';
    if (k > 0) os << fmt(t.orders[k - 1]);
    os << '\n';
  }
  return os.str();
}

}  // namespace chemo
