// Command-line front end: simulate, classify, sweep, convergence.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chemo/commands.hpp"
#include "chemo/config.hpp"

namespace {

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad sweep value '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chemotaxis-growth simulator and parameter-regime classifier"};
  app.require_subcommand(1);

  std::string config_path;
  auto* simulate = app.add_subcommand("simulate", "Integrate the system and write CSV/report files");
  simulate->add_option("--config", config_path, "Config file")->required();

  auto* classify = app.add_subcommand("classify", "Evaluate the boundedness conditions");
  classify->add_option("--config", config_path, "Config file")->required();

  std::vector<std::string> sweep_keys;
  std::vector<std::string> sweep_values;
  bool sweep_simulate = false;
  auto* sweep = app.add_subcommand("sweep", "Classify (and optionally simulate) over a parameter grid");
  sweep->add_option("--config", config_path, "Config file")->required();
  sweep->add_option("--key", sweep_keys, "Swept parameter (repeat for a second axis)")->required();
  sweep->add_option("--values", sweep_values, "Comma-separated values, one list per --key")->required();
  sweep->add_flag("--simulate", sweep_simulate, "Also run a simulation per point");

  std::string case_name;
  auto* convergence = app.add_subcommand("convergence", "Observed spatial order on a manufactured case");
  convergence->add_option("--case", case_name, "heat_cosine or helmholtz_cosine")->required();
  convergence->add_option("--config", config_path, "Config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return chemo::cmd_simulate(chemo::load_config(config_path), std::cout);
    }
    if (classify->parsed()) {
      std::cout << chemo::cmd_classify(chemo::load_config(config_path, chemo::ConfigUse::Classify));
      return 0;
    }
    if (sweep->parsed()) {
      if (sweep_keys.size() != sweep_values.size()) {
        std::cerr << "error: give one --values list per --key\n";
        return 1;
      }
      const auto cfg = chemo::load_config(
          config_path, sweep_simulate ? chemo::ConfigUse::Simulate : chemo::ConfigUse::Classify);
      std::vector<chemo::SweepAxis> axes;
      for (std::size_t k = 0; k < sweep_keys.size(); ++k) {
        axes.push_back({sweep_keys[k], parse_values(sweep_values[k])});
      }
      const auto points = chemo::cmd_sweep(cfg, axes, sweep_simulate);
      std::cout << "wrote " << cfg.out_prefix << "_sweep.csv (" << points.size() << " points)\n";
      return 0;
    }
    if (convergence->parsed()) {
      const auto cfg = chemo::load_config(config_path);
      std::cout << chemo::to_text(chemo::cmd_convergence(cfg, case_name));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
