#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chemo/grid.hpp"
#include "chemo/params.hpp"

namespace chemo::regime {

/// Affine majorant C0 - C1 s of psi(s) = a s^rho - b s^beta, touching psi at c_m.
struct TangentConstants {
  double c_m = 0.0;
  double c_t = 0.0;
  double C0 = 0.0;
  double C1 = 0.0;
};

/// Requires beta > rho >= 1 and a, b > 0; throws std::invalid_argument otherwise.
TangentConstants tangent_constants(double a, double b, double rho, double beta);

struct Clause {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct ConditionCheck {
  bool satisfied = false;
  std::vector<Clause> clauses;
};

/// max{(n gamma - n rho + rho gamma)/(n gamma - n rho + beta gamma), rho/beta};
/// +inf when the first denominator is not positive.
double delta_threshold(const ModelParams& p, int n);

/// Interpolation exponent (1/beta - 1/rho)/(1/beta + 1/n - 1/gamma).
double mass_theta(const ModelParams& p, int n);

struct MassLemmaResult {
  bool satisfied = false;
  double theta = 0.0;
  double delta_threshold = 0.0;
  ConditionCheck detail;
};

MassLemmaResult mass_lemma_check(const ModelParams& p, int n);

ConditionCheck check_mt1(const ModelParams& p, int n);
ConditionCheck check_mt2(const ModelParams& p, int n);

/// Right-hand side of the explicit lower bound on b. Requires rho > beta,
/// cgn > 0 and omega_measure > 0.
double b_threshold(double a, double c, double rho, double beta, int n, double omega_measure,
                   double cgn);

struct CgnEstimate {
  double lower_bound = 0.0;
  double theta = 0.0;
  Field witness;
  std::size_t trials = 0;
};

/// Gagliardo-Nirenberg quotient ||f||_p / (||grad f||_r^theta ||f||_q^(1-theta) + ||f||_q)
/// of a nonnegative trial field; q may lie in (0, 1).
double gn_quotient(const Field& f, double p, double q, double r);

/// Numerical lower bound on C_GN(p, q, r, Omega): the best quotient over
/// constants, cosine modes, localized bumps and coordinate-ascent refinements
/// of random cosine series. Throws std::invalid_argument for inadmissible
/// exponents (need r >= 1, 0 < q <= p, 1/r <= 1/n + 1/p).
CgnEstimate estimate_cgn(const DomainSpec& domain, double p, double q, double r,
                         std::uint64_t seed = 1, std::size_t refinement_rounds = 200);

enum class Classification {
  BoundednessGuaranteedMT1,
  BoundednessGuaranteedMT2,
  BoundednessGuaranteedCorollary,
  MassBoundOnly,
  OutOfTheoremScope,
};

std::string_view to_string(Classification c);

enum class CgnSource { None, Supplied, EstimatedLowerBound };

struct RegimeReport {
  ConditionCheck mt1;
  ConditionCheck mt2;
  MassLemmaResult mass_lemma;
  ConditionCheck corollary;
  bool cond_b_satisfied = false;  // delta = rho/beta, gamma = rho, rho > beta, b above threshold
  double theta = 0.0;
  double delta_threshold = 0.0;
  std::optional<double> b_threshold;
  CgnSource cgn_source = CgnSource::None;
  std::optional<double> cgn;
  Classification classification = Classification::OutOfTheoremScope;
  std::string remark;

  bool mt1_satisfied() const { return mt1.satisfied; }
  bool mt2_satisfied() const { return mt2.satisfied; }
  bool mass_lemma_satisfied() const { return mass_lemma.satisfied; }
  bool corollary_applicable() const { return corollary.satisfied; }
};

/// Runs every check. The label prefers MT1 over MT2 over the corollary; all
/// flags stay in the report.
RegimeReport classify(const ModelParams& p, int n, double omega_measure,
                      std::optional<double> cgn, CgnSource source = CgnSource::Supplied);

/// Flat `key = value` lines, one per flag, clause and threshold.
std::string to_text(const RegimeReport& report);

}  // namespace chemo::regime
