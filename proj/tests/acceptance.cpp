// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chemo/commands.hpp"
#include "chemo/config.hpp"
#include "chemo/diagnostics.hpp"
#include "chemo/elliptic.hpp"
#include "chemo/operators.hpp"
#include "chemo/oracle.hpp"
#include "chemo/regime.hpp"
#include "chemo/stepper.hpp"
#include "test_support.hpp"

using namespace chemo;
using chemo::testing::box;
using chemo::testing::line;
using chemo::testing::random_field;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

SimState initial(Field u, Field v) {
  SimState s;
  s.u = std::move(u);
  s.v = std::move(v);
  return s;
}

ModelParams corollary_params() {
  ModelParams p;
  p.chi = 1.0;
  p.a = 1.0;
  p.b = 3.1;
  p.c = 1.0;
  p.rho = 2.0;
  p.beta = 1.0;
  p.delta = 2.0;
  p.gamma = 2.0;
  return p;
}

Outcome divergence_theorem() {
  Outcome v;
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (const DomainSpec& d : {line(101), box(41, 41)}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Field f = random_field(d, rng);
      const Field g = random_field(d, rng, 0.0, 2.0);
      const double chi = 0.1 + 2.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const Field lap = laplacian(f);
      const double lap_scale = lap.max_abs() * d.measure();
      const double lap_err = std::abs(integrate(lap)) / lap_scale;
      for (auto scheme : {AdvectionScheme::Central, AdvectionScheme::Upwind}) {
        const Field div = chemo_divergence(g, f, chi, scheme);
        const double div_scale = div.max_abs() * d.measure();
        worst = std::max(worst, std::abs(integrate(div)) / div_scale);
      }
      worst = std::max(worst, lap_err);
    }
  }
  v.require(worst <= 1e-12, "relative integral " + num(worst));
  v.detail = v.ok ? "max relative integral " + num(worst) : v.detail;
  return v;
}

Outcome mass_budget() {
  Outcome v;
  const DomainSpec d = line(101);
  ModelParams p;
  p.chi = 0.7;
  p.a = 1.3;
  p.b = 0.9;
  p.c = 0.4;
  p.rho = 1.8;
  p.beta = 1.2;
  p.delta = 1.5;
  p.gamma = 1.6;
  StepControl ctrl;
  ctrl.t_end = 1e9;
  SimState s = initial(Field::from_function(d, [](double x, double) { return 1.0 + 0.5 * std::cos(M_PI * x); }),
                       Field::from_function(d, [](double x, double) { return 1.0 - 0.3 * std::cos(2 * M_PI * x); }));
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const StepSize sz = stable_dt(s, p, ctrl);
    const StepResult next = advance(s, p, ctrl, sz.dt);
    const double before = integrate(s.u);
    const double after = integrate(next.state.u);
    const double residual = std::abs((after - before) - sz.dt * next.reaction_integral) /
                            std::max(1.0, std::abs(before));
    worst = std::max(worst, residual);
    s = next.state;
  }
  v.require(worst <= 1e-11, "residual " + num(worst));
  if (v.ok) v.detail = "max residual " + num(worst) + " over 1000 steps";
  return v;
}

Outcome homogeneous_equivalence() {
  Outcome v;
  struct Case {
    ModelParams p;
    double u0;
    double t_end;
  };
  std::vector<Case> cases;
  ModelParams cor = corollary_params();
  cor.tau = 0;
  cases.push_back({cor, 1.0, 2.0});
  cases.push_back({cor, 0.2, 2.0});
  ModelParams grow = cor;
  grow.b = 0.5;
  grow.rho = 1.5;
  grow.beta = 1.0;
  grow.delta = 1.0;
  cases.push_back({grow, 0.3, 2.0});
  ModelParams fast = grow;
  fast.a = 2.0;
  fast.rho = 2.0;
  fast.beta = 1.4;
  fast.delta = 1.2;
  fast.b = 0.1;
  cases.push_back({fast, 0.8, 1.0});
  ModelParams decay = cor;
  decay.a = 0.5;
  decay.b = 4.0;
  decay.rho = 1.2;
  decay.beta = 2.0;
  decay.delta = 1.5;
  cases.push_back({decay, 3.0, 2.0});

  double worst = 0.0;
  std::size_t rows = 0;
  for (const Case& c : cases) {
    const DomainSpec d = line(11, 1.7);
    StepControl ctrl;
    ctrl.t_end = c.t_end;
    const RunOutcome out = run(initial(Field(d, c.u0), Field(d, c.u0)), c.p, ctrl, DiagnosticsCadence{1, 4.0});
    oracle::HomogeneousParams hp{c.p.a, c.p.b, c.p.rho, c.p.beta, c.p.delta, d.measure()};
    const oracle::Trajectory traj =
        oracle::integrate_homogeneous(c.u0, hp, out.dt_history, ctrl.blowup_threshold);
    v.require(out.series.size() == traj.y.size(), "row count mismatch");
    if (!v.ok) return v;
    for (std::size_t k = 0; k < traj.y.size(); ++k) {
      const SeriesRow& r = out.series.rows()[k];
      const double ref = traj.y[k];
      const double err = std::max(std::abs(r.linf - ref), std::abs(r.min_u - ref)) / std::abs(ref);
      worst = std::max(worst, err);
      ++rows;
    }
  }
  v.require(worst <= 1e-10, "relative deviation " + num(worst));
  if (v.ok) v.detail = std::to_string(cases.size()) + " sets, " + std::to_string(rows) + " rows, max rel " + num(worst);
  return v;
}

Outcome blow_up() {
  Outcome v;
  std::ostringstream times;
  for (double a : {0.5, 1.0, 2.0}) {
    ModelParams p;
    p.test_mode = true;
    p.chi = p.b = p.c = 0.0;
    p.a = a;
    p.rho = 2.0;
    StepControl ctrl;
    ctrl.t_end = 10.0 / a;
    const DomainSpec d = line(21);
    const RunOutcome out = run(initial(Field(d, 1.0), Field(d, 1.0)), p, ctrl);
    const double T = 1.0 / a;
    v.require(out.status == RunStatus::BlowUpSuspected, "a=" + num(a) + " status " + std::string(to_string(out.status)));
    v.require(std::abs(out.t_final - T) <= 0.1 * T, "a=" + num(a) + " t_final " + num(out.t_final));
    times << " a=" << a << ":" << num(out.t_final);
  }
  if (v.ok) v.detail = "t_final" + times.str();
  return v;
}

Outcome corollary_regime() {
  Outcome v;
  const auto report = regime::classify(corollary_params(), 1, 1.0, 1.0);
  v.require(report.classification == regime::Classification::BoundednessGuaranteedCorollary, "classification");

  for (InitialKind kind : {InitialKind::Constant, InitialKind::CosineBump}) {
    RunConfig cfg;
    cfg.n = 1;
    cfg.extents = {1.0};
    cfg.cells = {51};
    cfg.params = corollary_params();
    cfg.cgn = 1.0;
    cfg.control.t_end = 5.0;
    cfg.ic_kind = kind;
    cfg.ic_amplitude = 1.0;
    cfg.ic_base = 0.5;
    const SimState s0 = make_initial_state(cfg);
    if (kind == InitialKind::CosineBump) {
      const double m1 = integrate(s0.u);
      Field sq = s0.u;
      for (double& x : sq.values()) x *= x;
      v.require(integrate(sq) < 3.1 * m1 * m1, "bump violates the L2 admissibility bound");
    }
    const SimulateResult res = simulate(cfg);
    const auto& rows = res.outcome.series.rows();
    v.require(res.outcome.status == RunStatus::ReachedTEnd, "status " + std::string(to_string(res.outcome.status)));
    for (std::size_t k = 1; k < rows.size(); ++k) {
      v.require(rows[k].mass <= rows[k - 1].mass + 1e-8, "mass increased at t=" + num(rows[k].t));
    }
    v.require(boundedness_verdict(res.outcome.series) == chemo::Verdict::ApparentlyBounded, "verdict not bounded");
  }
  if (v.ok) v.detail = "constant and cosine bump: mass nonincreasing, ApparentlyBounded";
  return v;
}

Outcome tangent_property() {
  Outcome v;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> coef(0.1, 10.0);
  std::uniform_real_distribution<double> expo(1.0, 4.0);
  double worst_slack = -INFINITY;
  double worst_identity = 0.0;
  for (int draw = 0; draw < 200; ++draw) {
    const double a = coef(rng);
    const double b = coef(rng);
    double rho = expo(rng);
    double beta = expo(rng);
    if (beta < rho) std::swap(beta, rho);
    if (beta - rho < 0.05) beta = rho + 0.05;
    const regime::TangentConstants tc = regime::tangent_constants(a, b, rho, beta);
    auto psi = [&](double s) { return a * std::pow(s, rho) - b * std::pow(s, beta); };
    const double scale = tc.C0 + tc.C1;
    const double s_max = 10.0 * std::pow(a / b, 1.0 / (beta - rho));
    for (int k = 1; k <= 10000; ++k) {
      const double s = s_max * k / 10000.0;
      worst_slack = std::max(worst_slack, (psi(s) - (tc.C0 - tc.C1 * s)) / scale);
    }
    const double at = psi(tc.c_m);
    worst_identity = std::max(worst_identity, std::abs(at - (tc.C0 - tc.C1 * tc.c_m)) / std::max(1.0, std::abs(at)));
    v.require(tc.C0 > 0.0 && tc.C1 > 0.0, "non-positive constants");
  }
  v.require(worst_slack <= 1e-9, "domination slack " + num(worst_slack));
  v.require(worst_identity <= 1e-12, "tangency identity " + num(worst_identity));
  if (v.ok) v.detail = "max slack/(C0+C1) " + num(worst_slack) + ", identity " + num(worst_identity);
  return v;
}

Outcome classifier_table() {
  Outcome v;
  ModelParams p;
  p.chi = p.a = p.b = p.c = 1.0;
  p.beta = 1.0;
  p.rho = 2.5;
  p.gamma = 2.0;
  p.delta = 4.5;
  v.require(regime::check_mt1(p, 2).satisfied, "MT1 at delta 4.5");
  v.require(regime::classify(p, 2, 1.0, std::nullopt).classification ==
                regime::Classification::BoundednessGuaranteedMT1,
            "MT1 label");
  p.delta = 4.0;
  v.require(!regime::check_mt1(p, 2).satisfied, "MT1 at delta 4.0");

  p.rho = 2.0;
  p.delta = 2.5;
  v.require(regime::check_mt2(p, 2).satisfied, "MT2 at delta 2.5");
  v.require(regime::mass_theta(p, 2) == 0.5, "theta " + num(regime::mass_theta(p, 2)));
  v.require(regime::delta_threshold(p, 2) == 2.0, "delta threshold");

  v.require(regime::classify(corollary_params(), 1, 1.0, 1.0).classification ==
                regime::Classification::BoundednessGuaranteedCorollary,
            "corollary label");

  ModelParams low = p;
  low.beta = 2.0;
  low.rho = 1.5;
  low.delta = 3.0;
  const auto rep = regime::classify(low, 2, 1.0, std::nullopt);
  v.require(rep.classification == regime::Classification::OutOfTheoremScope, "rho < beta label");
  v.require(!rep.remark.empty(), "rho < beta remark");
  if (v.ok) v.detail = "six examples reproduced";
  return v;
}

Outcome convergence_orders() {
  Outcome v;
  std::ostringstream orders;
  for (const char* name : {"heat_cosine", "helmholtz_cosine"}) {
    for (int n : {1, 2}) {
      RunConfig cfg;
      cfg.n = n;
      cfg.extents = n == 1 ? std::vector<double>{1.0} : std::vector<double>{1.0, 1.0};
      cfg.cells = n == 1 ? std::vector<std::size_t>{21} : std::vector<std::size_t>{11, 11};
      cfg.control.t_end = 0.05;
      const ConvergenceTable t = cmd_convergence(cfg, name);
      for (double o : t.orders) {
        v.require(o >= 1.9, std::string(name) + " " + std::to_string(n) + "D order " + num(o));
        orders << ' ' << num(o);
      }
    }
  }
  if (v.ok) v.detail = "orders" + orders.str();
  return v;
}

Outcome sweep_flip() {
  Outcome v;
  RunConfig cfg;
  cfg.n = 1;
  cfg.params = corollary_params();
  cfg.cgn = 1.0;
  const double thr = regime::b_threshold(1.0, 1.0, 2.0, 1.0, 1, 1.0, 1.0);
  const std::vector<double> bs{thr - 0.5, std::nextafter(thr, 0.0), thr, thr + 1e-9, thr + 1.0};
  const auto pts = cmd_sweep(cfg, {SweepAxis{"b", bs}}, false, false);
  const std::string cor = "BoundednessGuaranteedCorollary";
  v.require(pts[0].classification != cor && pts[1].classification != cor, "corollary below threshold");
  v.require(pts[2].classification == cor && pts[3].classification == cor && pts[4].classification == cor,
            "no corollary at or above threshold");

  RunConfig two;
  two.n = 2;
  two.extents = {1.0, 1.0};
  two.cells = {3, 3};
  two.params = corollary_params();
  two.params.b = 1.0;
  const double dthr = regime::delta_threshold(two.params, 2);
  const std::vector<double> deltas{dthr - 0.5, dthr, std::nextafter(dthr, 10.0), dthr + 0.5};
  const auto dpts = cmd_sweep(two, {SweepAxis{"delta", deltas}}, false, false);
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    ModelParams q = two.params;
    q.delta = deltas[k];
    const bool mt2 = regime::check_mt2(q, 2).satisfied;
    v.require(mt2 == (deltas[k] > dthr), "MT2 flag at delta " + num(deltas[k]));
    const bool labelled = dpts[k].classification == "BoundednessGuaranteedMT2" ||
                          dpts[k].classification == "BoundednessGuaranteedMT1";
    v.require(labelled == (deltas[k] > dthr), "sweep label at delta " + num(deltas[k]));
  }
  if (v.ok) v.detail = "b flips at " + num(thr) + ", MT2 flips at delta " + num(dthr);
  return v;
}

Outcome elliptic_solver() {
  Outcome v;
  for (double k : {0.0, 1.0, 3.7}) {
    for (const DomainSpec& d : {line(101), box(21, 17)}) {
      const auto rep = solve_helmholtz(Field(d, k));
      v.require(rep.converged && rep.residual <= 1e-10, "residual " + num(rep.residual));
      double dev = 0.0;
      for (double x : rep.v.values()) dev = std::max(dev, std::abs(x - k));
      v.require(dev <= 1e-10 * std::max(1.0, k), "constant solution deviates by " + num(dev));
    }
  }
  std::mt19937_64 rng(10);
  double worst_mean = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const DomainSpec d = trial % 2 ? box(25, 19, 1.0, 0.7) : line(81, 1.5);
    const Field u = random_field(d, rng, 0.0, 3.0);
    const auto rep = solve_helmholtz(u);
    v.require(rep.converged, "not converged");
    const double mean_err = std::abs(integrate(rep.v) - integrate(u)) / d.measure();
    worst_mean = std::max(worst_mean, mean_err);
    v.require(mean_err <= 1e-10 * std::max(1.0, u.max_abs()), "mean error " + num(mean_err));
    const double slack = 1e-10 * u.max_abs();
    v.require(rep.v.min() >= u.min() - slack && rep.v.max() <= u.max() + slack, "maximum principle");
  }
  if (v.ok) v.detail = "50 random sources, max mean error " + num(worst_mean);
  return v;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "discrete divergence theorem", 5.0, divergence_theorem},
      {2, "mass budget", 10.0, mass_budget},
      {3, "homogeneous reduction", 10.0, homogeneous_equivalence},
      {4, "blow-up detection", 10.0, blow_up},
      {5, "corollary regime simulation", 30.0, corollary_regime},
      {6, "tangent-line property", 5.0, tangent_property},
      {7, "classifier table", 1.0, classifier_table},
      {8, "convergence orders", 30.0, convergence_orders},
      {9, "sweep threshold flip", 5.0, sweep_flip},
      {10, "elliptic solver", 10.0, elliptic_solver},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.ok && secs > c.budget_s) {
      v.ok = false;
      v.detail = "over time budget of " + num(c.budget_s) + " s";
    }
    failures += v.ok ? 0 : 1;
    std::printf("criterion %2d %-30s %s  (%.2f s)  %s\n", c.id, c.name, v.ok ? "PASS" : "FAIL", secs,
                v.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
