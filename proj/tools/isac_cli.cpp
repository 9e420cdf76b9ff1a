#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "isac/config.hpp"
#include "isac/experiments.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kInfeasible = 3, kNumerical = 4 };

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string mode;
};

isac::ExperimentConfig load(const Overrides& o, bool single_mode) {
  isac::ExperimentConfig cfg = isac::load_config(o.config);
  if (o.seed) cfg.experiment.seed = *o.seed;
  if (!o.out.empty()) cfg.experiment.output = o.out;
  if (!o.mode.empty()) {
    cfg.experiment.mode = o.mode;
    if (!single_mode) cfg.experiment.modes = {o.mode};
  }
  cfg.validate();
  return cfg;
}

template <class Fn>
void emit(const isac::ExperimentConfig& cfg, Fn&& write) {
  if (cfg.experiment.output.empty() || cfg.experiment.output == "-") {
    write(std::cout);
    return;
  }
  std::ofstream f(cfg.experiment.output);
  if (!f) {
    throw isac::ConfigError("cannot write '" + cfg.experiment.output + "'");
  }
  write(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-function radar/communication beamforming experiments"};
  app.require_subcommand(1);

  Overrides o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "INI config file")->required();
    sub->add_option("--seed", o.seed, "override experiment.seed");
    sub->add_option("--out", o.out, "output CSV path (default stdout)");
    sub->add_option("--mode", o.mode,
                    "sgcdf | sensing_only | no_dedicated_stream | "
                    "omnidirectional");
  };
  auto* design = app.add_subcommand("design", "run one design, print its record");
  auto* sweep_power =
      app.add_subcommand("sweep-power", "CRLB/RMSE/gain over the power grid");
  auto* sweep_delta =
      app.add_subcommand("sweep-delta", "CRLB/RMSE/rate over the overload grid");
  auto* beampattern =
      app.add_subcommand("beampattern", "transmit beampattern per mode");
  auto* timing = app.add_subcommand("timing", "wall time per mode and stage");
  for (auto* sub : {design, sweep_power, sweep_delta, beampattern, timing}) {
    add_common(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (design->parsed()) {
      const auto cfg = load(o, true);
      const auto rec = isac::cmd_design(cfg);
      emit(cfg, [&](std::ostream& os) { isac::write_design(rec, os); });
    } else if (sweep_power->parsed()) {
      const auto cfg = load(o, false);
      const auto rows = isac::cmd_sweep_power(cfg);
      emit(cfg, [&](std::ostream& os) { isac::write_power_sweep(rows, os); });
    } else if (sweep_delta->parsed()) {
      const auto cfg = load(o, false);
      const auto rows = isac::cmd_sweep_delta(cfg);
      emit(cfg, [&](std::ostream& os) { isac::write_delta_sweep(rows, os); });
    } else if (beampattern->parsed()) {
      const auto cfg = load(o, false);
      const auto trace = isac::cmd_beampattern(cfg);
      emit(cfg, [&](std::ostream& os) { isac::write_beampattern(trace, os); });
    } else if (timing->parsed()) {
      const auto cfg = load(o, false);
      const auto rows = isac::cmd_timing(cfg);
      emit(cfg, [&](std::ostream& os) { isac::write_timing(rows, os); });
    }
  } catch (const isac::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const isac::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const isac::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const isac::DegenerateGeometryError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const isac::Error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfig;
  }
  return kOk;
}
