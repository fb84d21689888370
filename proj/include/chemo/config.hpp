#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chemo/grid.hpp"
#include "chemo/params.hpp"
#include "chemo/state.hpp"
#include "chemo/stepper.hpp"

namespace chemo {

enum class InitialKind { Constant, CosineBump, GaussianBump, TwoBumps };
enum class VInit { Elliptic, Copy };

/// Everything a run needs, as read from a `key = value` file.
struct RunConfig {
  int n = 1;
  std::vector<double> extents{1.0};
  std::vector<std::size_t> cells{101};
  ModelParams params;
  StepControl control;
  InitialKind ic_kind = InitialKind::Constant;
  double ic_amplitude = 1.0;
  double ic_base = 0.0;
  std::vector<double> ic_center{0.5};
  std::vector<double> ic_center2{0.75};
  double ic_width = 0.1;
  VInit v_init = VInit::Elliptic;
  std::optional<double> cgn;
  bool cgn_estimate = false;
  std::size_t diag_every = 10;
  double k_norm = kDefaultNormExponent;
  std::string out_prefix = "run";
  std::uint64_t seed = 1;
  double verdict_tail = 0.5;

  DomainSpec domain() const;
  bool operator==(const RunConfig&) const = default;
};

/// Parse failure; the message names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ConfigUse {
  Simulate,  // every required key must be present
  Classify,  // grid, t_end and ic_kind may be omitted
};

/// Line-based `key = value` with `#` comments. Keys are case-sensitive and
/// unknown keys are rejected.
RunConfig parse_config(std::string_view text, ConfigUse use = ConfigUse::Simulate);

/// Reads and parses a file. Throws ConfigError (also for unreadable files).
RunConfig load_config(const std::string& path, ConfigUse use = ConfigUse::Simulate);

/// Canonical text; parse_config(to_config_text(c)) == c.
std::string to_config_text(const RunConfig& cfg);

/// Sets one of chi, a, b, c, rho, beta, delta, gamma. Throws ConfigError for any other key.
void set_numeric_param(ModelParams& p, std::string_view key, double value);

std::string_view to_string(InitialKind k);

/// Initial u from the configured preset (all presets have zero normal
/// derivative on the boundary) and the matching v.
SimState make_initial_state(const RunConfig& cfg);

}  // namespace chemo
