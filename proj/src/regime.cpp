#include "chemo/regime.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "chemo/operators.hpp"

namespace chemo::regime {

namespace {

constexpr double kEqualityTolerance = 1e-12;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Clause make_clause(std::string name, bool ok, std::string detail) {
  return Clause{std::move(name), ok, std::move(detail)};
}

ConditionCheck finish(std::vector<Clause> clauses) {
  ConditionCheck c;
  c.satisfied = std::all_of(clauses.begin(), clauses.end(), [](const Clause& x) { return x.ok; });
  c.clauses = std::move(clauses);
  return c;
}

Clause coefficients_clause(const ModelParams& p) {
  const bool ok = p.chi > 0.0 && p.a > 0.0 && p.b > 0.0 && p.c > 0.0;
  return make_clause("coefficients_positive", ok, "chi, a, b, c > 0");
}

Clause delta_clause(const ModelParams& p, int n) {
  const double thr = delta_threshold(p, n);
  return make_clause("delta_above_threshold", p.delta > thr,
                     "delta=" + fmt(p.delta) + " > " + fmt(thr));
}

}  // namespace

TangentConstants tangent_constants(double a, double b, double rho, double beta) {
  if (!(beta > rho) || !(rho >= 1.0)) {
    throw std::invalid_argument("tangent_constants: need beta > rho >= 1");
  }
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("tangent_constants: need a, b > 0");
  const double gap = beta - rho;
  auto psi = [&](double s) { return a * std::pow(s, rho) - b * std::pow(s, beta); };
  auto dpsi = [&](double s) {
    return a * rho * std::pow(s, rho - 1.0) - b * beta * std::pow(s, beta - 1.0);
  };
  TangentConstants tc;
  tc.c_m = 0.5 * (std::pow(a / b, 1.0 / gap) + std::pow(a * rho / (b * beta), 1.0 / gap));
  tc.c_t = psi(tc.c_m);
  const double slope = dpsi(tc.c_m);
  tc.C0 = tc.c_t - slope * tc.c_m;
  tc.C1 = -slope;
  if (!(tc.C1 > 0.0)) throw std::logic_error("tangent_constants: slope at c_m is not negative");
  return tc;
}

double delta_threshold(const ModelParams& p, int n) {
  const double nn = n;
  const double num = nn * p.gamma - nn * p.rho + p.rho * p.gamma;
  const double den = nn * p.gamma - nn * p.rho + p.beta * p.gamma;
  const double first = den > 0.0 ? num / den : kInfinity;
  return std::max(first, p.rho / p.beta);
}

double mass_theta(const ModelParams& p, int n) {
  return (1.0 / p.beta - 1.0 / p.rho) / (1.0 / p.beta + 1.0 / n - 1.0 / p.gamma);
}

MassLemmaResult mass_lemma_check(const ModelParams& p, int n) {
  MassLemmaResult r;
  r.theta = mass_theta(p, n);
  r.delta_threshold = delta_threshold(p, n);
  const double gamma_bound = n * p.rho / (n + p.beta);
  r.detail = finish({
      make_clause("rho_above_beta", p.rho > p.beta && p.beta >= 1.0,
                  "rho=" + fmt(p.rho) + " > beta=" + fmt(p.beta) + " >= 1"),
      make_clause("gamma_above_bound", p.gamma > gamma_bound,
                  "gamma=" + fmt(p.gamma) + " > n*rho/(n+beta)=" + fmt(gamma_bound)),
      delta_clause(p, n),
  });
  r.satisfied = r.detail.satisfied;
  return r;
}

ConditionCheck check_mt1(const ModelParams& p, int n) {
  const double cap = 2.0 * (n + 1) / n;
  const double gamma_low = n * p.rho / (n + 1.0);
  return finish({
      coefficients_clause(p),
      make_clause("beta_range", p.beta >= 1.0 && p.beta < cap,
                  "1 <= beta=" + fmt(p.beta) + " < 2(n+1)/n=" + fmt(cap)),
      make_clause("rho_range", std::max(2.0, p.beta) < p.rho && p.rho < cap,
                  "max{2,beta}=" + fmt(std::max(2.0, p.beta)) + " < rho=" + fmt(p.rho) +
                      " < " + fmt(cap)),
      make_clause("gamma_range", gamma_low < p.gamma && p.gamma <= 2.0,
                  "n*rho/(n+1)=" + fmt(gamma_low) + " < gamma=" + fmt(p.gamma) + " <= 2"),
      delta_clause(p, n),
  });
}

ConditionCheck check_mt2(const ModelParams& p, int n) {
  const double gamma_low = 2.0 * n / (n + 1.0);
  return finish({
      coefficients_clause(p),
      make_clause("beta_rho_range", 1.0 <= p.beta && p.beta < p.rho && p.rho <= 2.0,
                  "1 <= beta=" + fmt(p.beta) + " < rho=" + fmt(p.rho) + " <= 2"),
      make_clause("gamma_range", gamma_low < p.gamma && p.gamma <= 2.0,
                  "2n/(n+1)=" + fmt(gamma_low) + " < gamma=" + fmt(p.gamma) + " <= 2"),
      delta_clause(p, n),
  });
}

double b_threshold(double a, double c, double rho, double beta, int n, double omega_measure,
                   double cgn) {
  if (!(rho > beta)) throw std::invalid_argument("b_threshold: need rho > beta");
  if (!(cgn > 0.0) || !(omega_measure > 0.0)) {
    throw std::invalid_argument("b_threshold: need cgn > 0 and |Omega| > 0");
  }
  const double nn = n;
  const double lead = a * std::pow(2.0, rho - 1.0) * std::pow(cgn, rho);
  const double denom = nn * rho + beta * rho - nn * beta;
  const double base = lead * nn * (rho - beta) / (c * denom);
  const double bracket = (beta * rho / denom) * std::pow(base, nn * (rho - beta) / (beta * rho)) + 1.0;
  return lead / omega_measure * bracket;
}

namespace {

double quasi_norm(const Field& f, double p) {
  if (std::isinf(p)) return f.max_abs();
  const DomainSpec& d = f.domain();
  double s = 0.0;
  for (std::size_t j = 0; j < d.counts[1]; ++j) {
    for (std::size_t i = 0; i < d.counts[0]; ++i) {
      s += d.node_volume(i, j) * std::pow(std::abs(f(i, j)), p);
    }
  }
  return std::pow(s, 1.0 / p);
}

double gn_theta(double p, double q, double r, int n) {
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  return (1.0 / q - inv_p) / (1.0 / q + 1.0 / n - 1.0 / r);
}

// Nonnegative, Neumann-compatible field exp(sum_k c_k cos(k pi x / L) ...).
Field cosine_series_field(const DomainSpec& d, const std::vector<double>& coeffs, std::size_t modes) {
  return Field::from_function(d, [&](double x, double y) {
    double s = 0.0;
    for (std::size_t k = 0; k < modes; ++k) {
      const double kx = std::cos(static_cast<double>(k + 1) * M_PI * x / d.extents[0]);
      s += coeffs[k] * kx;
      if (d.n == 2) {
        const double ky = std::cos(static_cast<double>(k + 1) * M_PI * y / d.extents[1]);
        s += coeffs[modes + k] * ky;
      }
    }
    return std::exp(s);
  });
}

}  // namespace

double gn_quotient(const Field& f, double p, double q, double r) {
  const DomainSpec& d = f.domain();
  const double theta = gn_theta(p, q, r, d.n);
  const double fp = quasi_norm(f, p);
  const double fq = quasi_norm(f, q);
  const double grad = lp_norm(grad_magnitude_pow(f, 1.0), r);
  // a flat field has no gradient term, also when theta = 0
  const double lead = grad > 0.0 ? std::pow(grad, theta) * std::pow(fq, 1.0 - theta) : 0.0;
  const double denom = lead + fq;
  return denom > 0.0 ? fp / denom : 0.0;
}

CgnEstimate estimate_cgn(const DomainSpec& domain, double p, double q, double r,
                         std::uint64_t seed, std::size_t refinement_rounds) {
  if (!(r >= 1.0) || !(q > 0.0) || !(q <= p)) {
    throw std::invalid_argument("estimate_cgn: need r >= 1 and 0 < q <= p");
  }
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  if (!(1.0 / r <= 1.0 / domain.n + inv_p)) {
    throw std::invalid_argument("estimate_cgn: need 1/r <= 1/n + 1/p");
  }

  CgnEstimate best;
  best.theta = gn_theta(p, q, r, domain.n);
  auto offer = [&](Field f) {
    ++best.trials;
    const double qv = gn_quotient(f, p, q, r);
    if (std::isfinite(qv) && qv > best.lower_bound) {
      best.lower_bound = qv;
      best.witness = std::move(f);
    }
  };

  offer(Field(domain, 1.0));
  for (int k = 1; k <= 8; ++k) {
    for (double amp : {0.5, 0.9, 1.0}) {
      offer(Field::from_function(domain, [&](double x, double y) {
        double s = std::cos(k * M_PI * x / domain.extents[0]);
        if (domain.n == 2) s *= std::cos(k * M_PI * y / domain.extents[1]);
        return 1.0 + amp * s;
      }));
    }
  }
  const double diam = *std::max_element(domain.extents.begin(), domain.extents.begin() + domain.n);
  for (double rel_width : {0.5, 0.25, 0.1, 0.05, 0.02}) {
    const double w = rel_width * diam;
    for (double cx : {0.0, 0.5}) {
      offer(Field::from_function(domain, [&](double x, double y) {
        const double dx = x - cx * domain.extents[0];
        const double dy = domain.n == 2 ? y - cx * domain.extents[1] : 0.0;
        return std::exp(-(dx * dx + dy * dy) / (2.0 * w * w));
      }));
    }
  }

  // Coordinate ascent on the log-coefficients of a cosine series.
  constexpr std::size_t kModes = 6;
  const std::size_t ncoef = kModes * static_cast<std::size_t>(domain.n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> coeffs(ncoef);
  for (double& c : coeffs) c = normal(rng);
  double current = gn_quotient(cosine_series_field(domain, coeffs, kModes), p, q, r);
  offer(cosine_series_field(domain, coeffs, kModes));
  double step = 0.5;
  for (std::size_t round = 0; round < refinement_rounds; ++round) {
    const std::size_t k = round % ncoef;
    bool improved = false;
    for (double sign : {1.0, -1.0}) {
      std::vector<double> trial = coeffs;
      trial[k] += sign * step;
      Field f = cosine_series_field(domain, trial, kModes);
      const double qv = gn_quotient(f, p, q, r);
      if (std::isfinite(qv) && qv > current) {
        coeffs = std::move(trial);
        current = qv;
        offer(std::move(f));
        improved = true;
        break;
      }
    }
    if (!improved && k + 1 == ncoef) step *= 0.7;
  }
  return best;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::BoundednessGuaranteedMT1: return "BoundednessGuaranteedMT1";
    case Classification::BoundednessGuaranteedMT2: return "BoundednessGuaranteedMT2";
    case Classification::BoundednessGuaranteedCorollary: return "BoundednessGuaranteedCorollary";
    case Classification::MassBoundOnly: return "MassBoundOnly";
    case Classification::OutOfTheoremScope: return "OutOfTheoremScope";
  }
  return "Unknown";
}

RegimeReport classify(const ModelParams& p, int n, double omega_measure,
                      std::optional<double> cgn, CgnSource source) {
  RegimeReport rep;
  rep.mt1 = check_mt1(p, n);
  rep.mt2 = check_mt2(p, n);
  rep.mass_lemma = mass_lemma_check(p, n);
  rep.theta = rep.mass_lemma.theta;
  rep.delta_threshold = rep.mass_lemma.delta_threshold;
  rep.cgn = cgn;
  rep.cgn_source = cgn ? source : CgnSource::None;

  if (cgn && p.rho > p.beta && *cgn > 0.0 && omega_measure > 0.0 && p.c > 0.0) {
    rep.b_threshold = b_threshold(p.a, p.c, p.rho, p.beta, n, omega_measure, *cgn);
  }
  const bool delta_eq = std::abs(p.delta - p.rho / p.beta) <= kEqualityTolerance;
  const bool gamma_eq = std::abs(p.gamma - p.rho) <= kEqualityTolerance;
  const double rho_low = std::max(p.beta, 2.0 * n / (n + 1.0));
  const bool b_ok = rep.b_threshold && p.b >= *rep.b_threshold;
  rep.corollary = finish({
      coefficients_clause(p),
      make_clause("delta_equals_rho_over_beta", delta_eq,
                  "delta=" + fmt(p.delta) + " == rho/beta=" + fmt(p.rho / p.beta)),
      make_clause("gamma_equals_rho", gamma_eq, "gamma=" + fmt(p.gamma) + " == rho=" + fmt(p.rho)),
      make_clause("rho_range", rho_low < p.rho && p.rho <= 2.0,
                  "max{beta,2n/(n+1)}=" + fmt(rho_low) + " < rho=" + fmt(p.rho) + " <= 2"),
      make_clause("b_above_threshold", b_ok,
                  rep.b_threshold ? "b=" + fmt(p.b) + " >= " + fmt(*rep.b_threshold)
                                  : std::string("no C_GN supplied or rho <= beta"))});
  rep.cond_b_satisfied = delta_eq && gamma_eq && p.rho > p.beta && b_ok;

  if (rep.mt1.satisfied) {
    rep.classification = Classification::BoundednessGuaranteedMT1;
  } else if (rep.mt2.satisfied) {
    rep.classification = Classification::BoundednessGuaranteedMT2;
  } else if (rep.corollary.satisfied) {
    rep.classification = Classification::BoundednessGuaranteedCorollary;
  } else if (rep.mass_lemma.satisfied || rep.cond_b_satisfied) {
    rep.classification = Classification::MassBoundOnly;
  } else {
    rep.classification = Classification::OutOfTheoremScope;
  }

  if (p.rho <= p.beta) {
    rep.remark =
        "rho <= beta: growth never outpaces the beta-sink, so the mass is bounded by the "
        "tangent-line argument without extra conditions; the boundedness theorems here "
        "address rho > beta only";
  }
  if (rep.cgn_source == CgnSource::EstimatedLowerBound) {
    if (!rep.remark.empty()) rep.remark += "; ";
    rep.remark +=
        "corollary check conditional on supplied C_GN (numerical lower bound, not a certified "
        "upper bound)";
  }
  return rep;
}

namespace {

void emit_check(std::ostringstream& os, const std::string& prefix, const ConditionCheck& c) {
  os << prefix << ".satisfied = " << (c.satisfied ? "true" : "false") << '\n';
  for (const Clause& cl : c.clauses) {
    os << prefix << '.' << cl.name << " = " << (cl.ok ? "pass" : "fail") << "  # " << cl.detail
       << '\n';
  }
}

std::string_view to_string(CgnSource s) {
  switch (s) {
    case CgnSource::None: return "none";
    case CgnSource::Supplied: return "supplied";
    case CgnSource::EstimatedLowerBound: return "estimated_lower_bound";
  }
  return "none";
}

}  // namespace

std::string to_text(const RegimeReport& r) {
  std::ostringstream os;
  os << "classification = " << to_string(r.classification) << '\n';
  os << "theta = " << fmt(r.theta) << '\n';
  os << "delta_threshold = " << fmt(r.delta_threshold) << '\n';
  os << "b_threshold = " << (r.b_threshold ? fmt(*r.b_threshold) : std::string("n/a")) << '\n';
  os << "cgn = " << (r.cgn ? fmt(*r.cgn) : std::string("n/a")) << '\n';
  os << "cgn_source = " << to_string(r.cgn_source) << '\n';
  emit_check(os, "mt1", r.mt1);
  emit_check(os, "mt2", r.mt2);
  emit_check(os, "mass_lemma", r.mass_lemma.detail);
  emit_check(os, "corollary", r.corollary);
  os << "cond_b.satisfied = " << (r.cond_b_satisfied ? "true" : "false") << '\n';
  if (!r.remark.empty()) os << "remark = " << r.remark << '\n';
  return os.str();
}

}  // namespace chemo::regime
