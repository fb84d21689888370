#include "chemo/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "chemo/elliptic.hpp"

namespace chemo {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string key_error(std::string_view key, std::string_view what) {
  return std::string(key) + " " + std::string(what);
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(key_error(key, "expects a number, got '" + std::string(text) + "'"));
  }
  return value;
}

long long parse_integer(std::string_view key, std::string_view text) {
  text = trim(text);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(key_error(key, "expects an integer, got '" + std::string(text) + "'"));
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "1" || text == "true") return true;
  if (text == "0" || text == "false") return false;
  throw ConfigError(key_error(key, "expects 0/1 or true/false"));
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_double(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_list(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) s += ",";
    s += fmt(xs[k]);
  }
  return s;
}

// Neumann-compatible Gaussian: the image sum about both walls is even
// through x = 0 and x = L.
double reflected_gaussian(double x, double center, double length, double width) {
  double s = 0.0;
  for (int m = -2; m <= 2; ++m) {
    for (double c : {center, -center}) {
      const double d = x - (2.0 * m * length + c);
      s += std::exp(-d * d / (2.0 * width * width));
    }
  }
  return s;
}

const std::set<std::string, std::less<>> kRequired = {
    "n", "extents", "cells", "chi", "a", "b", "c", "rho", "beta", "delta", "gamma", "t_end", "ic_kind"};
const std::set<std::string, std::less<>> kOptionalForClassify = {"n", "extents", "cells", "t_end",
                                                                  "ic_kind"};

}  // namespace

DomainSpec RunConfig::domain() const { return make_grid(n, extents, cells); }

std::string_view to_string(InitialKind k) {
  switch (k) {
    case InitialKind::Constant: return "constant";
    case InitialKind::CosineBump: return "cosine_bump";
    case InitialKind::GaussianBump: return "gaussian_bump";
    case InitialKind::TwoBumps: return "two_bumps";
  }
  return "constant";
}

void set_numeric_param(ModelParams& p, std::string_view key, double value) {
  if (key == "chi") p.chi = value;
  else if (key == "a") p.a = value;
  else if (key == "b") p.b = value;
  else if (key == "c") p.c = value;
  else if (key == "rho") p.rho = value;
  else if (key == "beta") p.beta = value;
  else if (key == "delta") p.delta = value;
  else if (key == "gamma") p.gamma = value;
  else throw ConfigError(std::string(key) + " is not a numeric model parameter");
}

RunConfig parse_config(std::string_view text, ConfigUse use) {
  RunConfig cfg;
  bool extents_given = false;
  std::set<std::string, std::less<>> seen;

  using Setter = std::function<void(std::string_view key, std::string_view value)>;
  auto number = [&](double& slot) {
    return Setter([&slot](std::string_view k, std::string_view v) { slot = parse_double(k, v); });
  };
  auto param = [&](std::string_view) {
    return Setter([&cfg](std::string_view k, std::string_view v) {
      set_numeric_param(cfg.params, k, parse_double(k, v));
    });
  };
  auto flag = [&](bool& slot) {
    return Setter([&slot](std::string_view k, std::string_view v) { slot = parse_bool(k, v); });
  };
  auto point = [&](std::vector<double>& slot) {
    return Setter([&slot](std::string_view k, std::string_view v) { slot = parse_list(k, v); });
  };

  const std::map<std::string, Setter, std::less<>> setters = {
      {"n", [&](auto k, auto v) { cfg.n = static_cast<int>(parse_integer(k, v)); }},
      {"extents", [&](auto k, auto v) { cfg.extents = parse_list(k, v); extents_given = true; }},
      {"cells",
       [&](auto k, auto v) {
         cfg.cells.clear();
         for (double x : parse_list(k, v)) {
           if (x < 0 || x != std::floor(x)) throw ConfigError("cells must be whole numbers");
           cfg.cells.push_back(static_cast<std::size_t>(x));
         }
       }},
      {"chi", param("chi")}, {"a", param("a")}, {"b", param("b")}, {"c", param("c")},
      {"rho", param("rho")}, {"beta", param("beta")}, {"delta", param("delta")},
      {"gamma", param("gamma")},
      {"tau", [&](auto k, auto v) { cfg.params.tau = static_cast<int>(parse_integer(k, v)); }},
      {"test_mode", flag(cfg.params.test_mode)},
      {"dt_init", number(cfg.control.dt_init)},
      {"dt_min", number(cfg.control.dt_min)},
      {"cfl_safety", number(cfg.control.cfl_safety)},
      {"blowup_threshold", number(cfg.control.blowup_threshold)},
      {"t_end", number(cfg.control.t_end)},
      {"implicit_diffusion", flag(cfg.control.implicit_diffusion)},
      {"elliptic_tol", number(cfg.control.elliptic_tol)},
      {"advection",
       [&](auto k, auto v) {
         v = trim(v);
         if (v == "central") cfg.control.advection = AdvectionScheme::Central;
         else if (v == "upwind") cfg.control.advection = AdvectionScheme::Upwind;
         else throw ConfigError(key_error(k, "must be central or upwind"));
       }},
      {"ic_kind",
       [&](auto k, auto v) {
         v = trim(v);
         if (v == "constant") cfg.ic_kind = InitialKind::Constant;
         else if (v == "cosine_bump") cfg.ic_kind = InitialKind::CosineBump;
         else if (v == "gaussian_bump") cfg.ic_kind = InitialKind::GaussianBump;
         else if (v == "two_bumps") cfg.ic_kind = InitialKind::TwoBumps;
         else throw ConfigError(key_error(k, "must be constant, cosine_bump, gaussian_bump or two_bumps"));
       }},
      {"ic_amplitude", number(cfg.ic_amplitude)},
      {"ic_base", number(cfg.ic_base)},
      {"ic_center", point(cfg.ic_center)},
      {"ic_center2", point(cfg.ic_center2)},
      {"ic_width", number(cfg.ic_width)},
      {"v_init",
       [&](auto k, auto v) {
         v = trim(v);
         if (v == "elliptic") cfg.v_init = VInit::Elliptic;
         else if (v == "copy") cfg.v_init = VInit::Copy;
         else throw ConfigError(key_error(k, "must be elliptic or copy"));
       }},
      {"cgn", [&](auto k, auto v) { cfg.cgn = parse_double(k, v); }},
      {"cgn_estimate", flag(cfg.cgn_estimate)},
      {"diag_every",
       [&](auto k, auto v) {
         const long long x = parse_integer(k, v);
         if (x < 1) throw ConfigError("diag_every must be >= 1");
         cfg.diag_every = static_cast<std::size_t>(x);
       }},
      {"k_norm", number(cfg.k_norm)},
      {"out_prefix", [&](auto, auto v) { cfg.out_prefix = std::string(trim(v)); }},
      {"seed",
       [&](auto k, auto v) {
         const long long x = parse_integer(k, v);
         if (x < 0) throw ConfigError("seed must be >= 0");
         cfg.seed = static_cast<std::uint64_t>(x);
       }},
      {"verdict_tail", number(cfg.verdict_tail)},
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown key " + std::string(key));
    if (!seen.insert(std::string(key)).second) throw ConfigError("duplicate key " + std::string(key));
    if (value.empty()) throw ConfigError(std::string(key) + " has no value");
    it->second(key, value);
  }

  for (const auto& key : kRequired) {
    if (seen.contains(key)) continue;
    if (use == ConfigUse::Classify && kOptionalForClassify.contains(key)) continue;
    throw ConfigError("missing required key " + key);
  }
  if (use == ConfigUse::Classify) {
    if (!extents_given) cfg.extents.assign(static_cast<std::size_t>(std::max(cfg.n, 1)), 1.0);
    if (!seen.contains("cells")) cfg.cells.assign(static_cast<std::size_t>(std::max(cfg.n, 1)), 3);
  }

  // Invariants, reported against the key that breaks them.
  if (cfg.n != 1 && cfg.n != 2) throw ConfigError("n must be 1 or 2");
  if (cfg.extents.size() != static_cast<std::size_t>(cfg.n)) throw ConfigError("extents needs n entries");
  if (cfg.cells.size() != static_cast<std::size_t>(cfg.n)) throw ConfigError("cells needs n entries");
  for (double e : cfg.extents) {
    if (!(e > 0.0)) throw ConfigError("extents must be > 0");
  }
  for (std::size_t c : cfg.cells) {
    if (c < 3) throw ConfigError("cells must be >= 3");
  }
  try {
    cfg.params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (use == ConfigUse::Simulate) {
    try {
      cfg.control.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (cfg.cgn && !(*cfg.cgn > 0.0)) throw ConfigError("cgn must be > 0");
  if (!(cfg.k_norm >= 1.0)) throw ConfigError("k_norm must be >= 1");
  if (!(cfg.ic_width > 0.0)) throw ConfigError("ic_width must be > 0");
  if (!(cfg.verdict_tail > 0.0 && cfg.verdict_tail < 1.0)) throw ConfigError("verdict_tail must lie in (0, 1)");
  if (cfg.ic_center.size() != static_cast<std::size_t>(cfg.n)) cfg.ic_center.resize(static_cast<std::size_t>(cfg.n), cfg.ic_center.back());
  if (cfg.ic_center2.size() != static_cast<std::size_t>(cfg.n)) cfg.ic_center2.resize(static_cast<std::size_t>(cfg.n), cfg.ic_center2.back());
  return cfg;
}

RunConfig load_config(const std::string& path, ConfigUse use) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), use);
}

std::string to_config_text(const RunConfig& cfg) {
  std::ostringstream os;
  const ModelParams& p = cfg.params;
  const StepControl& c = cfg.control;
  std::vector<double> cells(cfg.cells.begin(), cfg.cells.end());
  os << "n = " << cfg.n << '\n'
     << "extents = " << fmt_list(cfg.extents) << '\n'
     << "cells = " << fmt_list(cells) << '\n'
     << "chi = " << fmt(p.chi) << '\n'
     << "a = " << fmt(p.a) << '\n'
     << "b = " << fmt(p.b) << '\n'
     << "c = " << fmt(p.c) << '\n'
     << "rho = " << fmt(p.rho) << '\n'
     << "beta = " << fmt(p.beta) << '\n'
     << "delta = " << fmt(p.delta) << '\n'
     << "gamma = " << fmt(p.gamma) << '\n'
     << "tau = " << p.tau << '\n'
     << "test_mode = " << (p.test_mode ? 1 : 0) << '\n'
     << "dt_init = " << fmt(c.dt_init) << '\n'
     << "dt_min = " << fmt(c.dt_min) << '\n'
     << "cfl_safety = " << fmt(c.cfl_safety) << '\n'
     << "blowup_threshold = " << fmt(c.blowup_threshold) << '\n'
     << "t_end = " << fmt(c.t_end) << '\n'
     << "implicit_diffusion = " << (c.implicit_diffusion ? 1 : 0) << '\n'
     << "elliptic_tol = " << fmt(c.elliptic_tol) << '\n'
     << "advection = " << (c.advection == AdvectionScheme::Upwind ? "upwind" : "central") << '\n'
     << "ic_kind = " << to_string(cfg.ic_kind) << '\n'
     << "ic_amplitude = " << fmt(cfg.ic_amplitude) << '\n'
     << "ic_base = " << fmt(cfg.ic_base) << '\n'
     << "ic_center = " << fmt_list(cfg.ic_center) << '\n'
     << "ic_center2 = " << fmt_list(cfg.ic_center2) << '\n'
     << "ic_width = " << fmt(cfg.ic_width) << '\n'
     << "v_init = " << (cfg.v_init == VInit::Copy ? "copy" : "elliptic") << '\n';
  if (cfg.cgn) os << "cgn = " << fmt(*cfg.cgn) << '\n';
  os << "cgn_estimate = " << (cfg.cgn_estimate ? 1 : 0) << '\n'
     << "diag_every = " << cfg.diag_every << '\n'
     << "k_norm = " << fmt(cfg.k_norm) << '\n'
     << "out_prefix = " << cfg.out_prefix << '\n'
     << "seed = " << cfg.seed << '\n'
     << "verdict_tail = " << fmt(cfg.verdict_tail) << '\n';
  return os.str();
}

SimState make_initial_state(const RunConfig& cfg) {
  const DomainSpec d = cfg.domain();
  SimState s;
  auto shape = [&](double x, double y) -> double {
    const std::array<double, 2> pos{x, y};
    switch (cfg.ic_kind) {
      case InitialKind::Constant:
        return 1.0;
      case InitialKind::CosineBump: {
        double prod = 1.0;
        for (std::size_t k = 0; k < static_cast<std::size_t>(d.n); ++k) {
          prod *= 0.5 * (1.0 + std::cos(M_PI * pos[k] / d.extents[k]));
        }
        return prod;
      }
      case InitialKind::GaussianBump:
      case InitialKind::TwoBumps: {
        auto bump = [&](const std::vector<double>& center) {
          double prod = 1.0;
          for (std::size_t k = 0; k < static_cast<std::size_t>(d.n); ++k) {
            prod *= reflected_gaussian(pos[k], center[k], d.extents[k], cfg.ic_width);
          }
          return prod;
        };
        double v = bump(cfg.ic_center);
        if (cfg.ic_kind == InitialKind::TwoBumps) v += bump(cfg.ic_center2);
        return v;
      }
    }
    return 0.0;
  };
  if (cfg.ic_kind == InitialKind::Constant) {
    s.u = Field(d, cfg.ic_amplitude);
  } else {
    s.u = Field::from_function(d, [&](double x, double y) { return cfg.ic_base + cfg.ic_amplitude * shape(x, y); });
  }
  if (cfg.v_init == VInit::Copy) {
    s.v = s.u;
  } else {
    auto solve = solve_helmholtz(s.u, cfg.control.elliptic_tol);
    s.v = std::move(solve.v);
  }
  return s;
}

}  // namespace chemo
