#include <CLI11.hpp>

#include <map>
#include <string>

#include "commands.hpp"
#include "rwp/error.hpp"

namespace rwp::cli {

namespace {

const std::map<std::string, std::string>& flag_help() {
  static const std::map<std::string, std::string> help = {
      {"Z", "nuclear charge"},
      {"l", "orbital angular momentum (>= 1)"},
      {"n-av", "mean principal quantum number"},
      {"sigma", "Gaussian width in n"},
      {"a", "spin-up amplitude"},
      {"b", "spin-down amplitude"},
      {"n-min", "lowest n (packet truncation / energies table)"},
      {"n-max", "highest n (packet truncation / energies table)"},
      {"t-max", "end time, in --t-unit"},
      {"t-unit", "au|s|tcl|tls"},
      {"samples", "number of time samples"},
      {"grid-points", "radial points (odd >= 501 for density; any >= 2 for carpet)"},
      {"grid-mapping", "sqrt|uniform quadrature grid"},
      {"r-max", "radial extent override, bohr"},
      {"times", "comma-separated density times in --t-unit, or 'auto'"},
      {"scan", "n_av range FROM:TO for timescales"},
      {"sigmas", "comma-separated sigma values, one output each"},
      {"z-values", "comma-separated Z values, one output each"},
      {"figure", "figure preset 1..6"},
      {"format", "csv|pgm"},
      {"out", "output path, prefix for multi-file output, - for stdout"},
  };
  return help;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin-carrying radial wave packets in hydrogenic ions", "rwp"};
  std::string command;
  std::string config_path;
  app.add_option("command", command, "energies|timescales|observables|density|carpet")->required();
  app.add_option("--config", config_path, "key = value configuration file");

  std::map<std::string, std::string> raw;
  std::map<std::string, CLI::Option*> options;
  for (const auto& key : config_keys()) {
    if (key == "au") continue;
    options[key] = app.add_option("--" + key, raw[key], flag_help().at(key));
  }
  bool au = false;
  CLI::Option* au_flag = app.add_flag("--au", au, "timescales: also emit atomic-unit columns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "rwp: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    const Command cmd = parse_command(command);
    KeyValues flags;
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) flags[key] = raw[key];
    }
    if (au_flag->count() > 0) flags["au"] = au ? "true" : "false";
    const KeyValues file = config_path.empty() ? KeyValues{} : read_config_file(config_path);
    const RunConfig cfg = resolve_layers(cmd, file, flags);
    dispatch(cfg, {out, err});
  } catch (const UsageError& e) {
    err << "rwp: usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "rwp: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "rwp: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace rwp::cli
