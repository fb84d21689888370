#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "chemo/config.hpp"
#include "chemo/regime.hpp"
#include "chemo/stepper.hpp"

namespace chemo {

/// Process exit codes of the `simulate` command.
enum ExitCode : int {
  kExitReachedTEnd = 0,
  kExitFailure = 1,
  kExitBlowUp = 2,
  kExitUnderflow = 3,
  kExitCorruption = 4,
};

int exit_code_for(RunStatus status);

/// Regime report for the configured parameters. Uses the supplied cgn, or an
/// estimated lower bound (p = rho, q = beta, r = gamma) when cgn_estimate is set.
regime::RegimeReport regime_report_for(const RunConfig& cfg);

struct SimulateResult {
  RunOutcome outcome;
  regime::RegimeReport report;
  int exit_code = kExitReachedTEnd;
};

/// Runs the configured simulation in memory.
SimulateResult simulate(const RunConfig& cfg);

/// simulate() plus <prefix>_series.csv, _final_u.csv, _final_v.csv and
/// _report.txt. Returns the process exit code (1 on I/O failure).
int cmd_simulate(const RunConfig& cfg, std::ostream& log);

std::string cmd_classify(const RunConfig& cfg);

struct SweepAxis {
  std::string key;
  std::vector<double> values;
};

struct SweepPoint {
  std::vector<double> values;
  std::string classification;
  std::string status;  // RunStatus name, "NotRun" or "InvalidParams"
  double max_mass = 0.0;
  double max_linf = 0.0;
};

/// Cartesian product over up to two axes. Classification always runs;
/// simulations run concurrently when `simulate` is set. Writes
/// <prefix>_sweep.csv unless `write_csv` is false.
std::vector<SweepPoint> cmd_sweep(const RunConfig& cfg, const std::vector<SweepAxis>& axes,
                                  bool simulate, bool write_csv = true);

std::string sweep_csv_header(const std::vector<SweepAxis>& axes);

struct ConvergenceTable {
  std::string case_name;
  std::vector<double> h;       // spacing along axis 0
  std::vector<double> errors;  // max-norm error against the closed form
  std::vector<double> orders;  // log2(e_k / e_{k+1})
};

/// Three refinements (h, h/2, h/4) of a manufactured case: heat_cosine or
/// helmholtz_cosine. Throws std::invalid_argument naming the valid cases.
ConvergenceTable cmd_convergence(const RunConfig& cfg, const std::string& case_name);

std::string to_text(const ConvergenceTable& table);

/// Writes t,dt,... rows with 17 significant digits.
void write_series_csv(std::ostream& os, const TimeSeries& series);

/// Row-major node values, one line per grid line along axis 0.
void write_field_csv(std::ostream& os, const Field& f);

}  // namespace chemo
