#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rwp::cli {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

int to_int(const std::string& key, const std::string& text) {
  int value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw UsageError("--" + key + ": expected an integer, got '" + text + "'");
  return value;
}

double to_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw UsageError("--" + key + ": expected a number, got '" + text + "'");
  }
  return value;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw UsageError("--" + key + ": expected true/false, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

template <typename T, typename Convert>
std::vector<T> to_list(const std::string& key, const std::string& text, Convert convert) {
  std::vector<T> values;
  for (const auto& item : split_list(text)) values.push_back(convert(key, item));
  return values;
}

std::pair<int, int> to_scan(const std::string& key, const std::string& text) {
  auto sep = text.find(':');
  std::size_t width = 1;
  if (sep == std::string::npos) {
    sep = text.find("..");
    width = 2;
  }
  if (sep == std::string::npos) throw UsageError("--" + key + ": expected FROM:TO, got '" + text + "'");
  const int from = to_int(key, trim(text.substr(0, sep)));
  const int to = to_int(key, trim(text.substr(sep + width)));
  if (to < from) throw UsageError("--" + key + ": empty scan range");
  return {from, to};
}

TimeUnit to_time_unit(const std::string& text) {
  if (text == "au") return TimeUnit::au;
  if (text == "s") return TimeUnit::seconds;
  if (text == "tcl") return TimeUnit::t_cl;
  if (text == "tls") return TimeUnit::t_ls;
  throw UsageError("--t-unit: expected au|s|tcl|tls, got '" + text + "'");
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "energies") return Command::energies;
  if (name == "timescales") return Command::timescales;
  if (name == "observables") return Command::observables;
  if (name == "density") return Command::density;
  if (name == "carpet") return Command::carpet;
  throw UsageError("unknown command '" + name + "'");
}

const char* command_name(Command command) noexcept {
  switch (command) {
    case Command::energies: return "energies";
    case Command::timescales: return "timescales";
    case Command::observables: return "observables";
    case Command::density: return "density";
    case Command::carpet: return "carpet";
  }
  return "?";
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "Z",       "l",        "n-av",    "sigma",       "a",          "b",      "n-min",
      "n-max",   "t-max",    "t-unit",  "samples",     "grid-points", "grid-mapping",
      "r-max",   "times",    "scan",    "au",          "sigmas",     "z-values", "figure",
      "format",  "out"};
  return keys;
}

KeyValues parse_config_text(std::istream& in, const std::string& origin) {
  KeyValues values;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(origin + ":" + std::to_string(number) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    bool known = false;
    for (const auto& k : config_keys()) known = known || k == key;
    if (!known) throw UsageError(origin + ":" + std::to_string(number) + ": unknown key '" + key + "'");
    values[key] = trim(line.substr(eq + 1));
  }
  return values;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  return parse_config_text(in, path);
}

KeyValues builtin_defaults() {
  return {{"l", "1"},          {"n-av", "80"},        {"sigma", "2"},
          {"a", "0"},          {"b", "1"},            {"t-max", "1"},
          {"t-unit", "tcl"},   {"samples", "201"},    {"grid-points", "4001"},
          {"grid-mapping", "sqrt"}, {"times", "0"},   {"au", "false"},
          {"format", "csv"}};
}

KeyValues figure_preset(int figure, Command command) {
  static const char* const kEqual = "0.70710678118654752";
  KeyValues preset;
  Command owner;
  switch (figure) {
    case 1:
      owner = Command::density;
      preset = {{"Z", "92"}, {"n-av", "80"}, {"sigma", "2"}, {"a", "0"}, {"b", "1"},
                {"t-unit", "tcl"}, {"times", "0,0.25,0.5,0.75,1,1.25"}, {"out", "fig1.csv"}};
      break;
    case 2:
      owner = Command::observables;
      preset = {{"Z", "92"}, {"n-av", "80"}, {"sigmas", "1,2"}, {"a", "0"}, {"b", "1"},
                {"t-unit", "tcl"}, {"t-max", "3"}, {"samples", "151"}, {"out", "fig2.csv"}};
      break;
    case 3:
      owner = Command::timescales;
      preset = {{"z-values", "1,47,92"}, {"scan", "20:150"}, {"out", "fig3.csv"}};
      break;
    case 4:
      owner = Command::observables;
      preset = {{"Z", "92"}, {"n-av", "80"}, {"l", "1"}, {"sigma", "2"}, {"a", kEqual}, {"b", kEqual},
                {"t-unit", "tls"}, {"t-max", "35"}, {"samples", "7001"}, {"out", "fig4.csv"}};
      break;
    case 5:
      owner = Command::density;
      preset = {{"Z", "92"}, {"n-av", "80"}, {"l", "1"}, {"sigma", "2"}, {"a", kEqual}, {"b", kEqual},
                {"t-unit", "tls"}, {"t-max", "35"}, {"times", "auto"}, {"out", "fig5.csv"}};
      break;
    case 6:
      owner = Command::carpet;
      preset = {{"Z", "92"}, {"n-av", "80"}, {"l", "1"}, {"sigma", "2"}, {"a", "0"}, {"b", "1"},
                {"t-unit", "tls"}, {"t-max", "2"}, {"samples", "201"}, {"grid-points", "801"},
                {"format", "pgm"}, {"out", "fig6"}};
      break;
    default:
      throw UsageError("--figure: expected 1..6, got " + std::to_string(figure));
  }
  if (owner != command) {
    throw UsageError("figure " + std::to_string(figure) + " is produced by '" + command_name(owner) +
                     "', not '" + command_name(command) + "'");
  }
  return preset;
}

RunConfig resolve(Command command, const std::vector<KeyValues>& layers) {
  KeyValues merged;
  for (const auto& layer : layers) {
    if (layer.count("sigma") && !layer.count("sigmas")) merged.erase("sigmas");
    if (layer.count("Z") && !layer.count("z-values")) merged.erase("z-values");
    for (const auto& [key, value] : layer) merged[key] = value;
  }
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = merged.find(key);
    return it == merged.end() ? nullptr : &it->second;
  };

  RunConfig cfg;
  cfg.command = command;
  if (auto v = get("z-values")) cfg.z_values = to_list<int>("z-values", *v, to_int);
  if (auto v = get("Z")) {
    cfg.params.Z = to_int("Z", *v);
  } else if (!cfg.z_values.empty()) {
    cfg.params.Z = cfg.z_values.front();
  } else {
    throw UsageError("--Z is required (flag, config file or figure preset)");
  }
  if (auto v = get("l")) cfg.params.l = to_int("l", *v);
  if (auto v = get("n-av")) cfg.spec.n_av = to_int("n-av", *v);
  if (auto v = get("sigma")) cfg.spec.sigma = to_double("sigma", *v);
  if (auto v = get("sigmas")) cfg.sigmas = to_list<double>("sigmas", *v, to_double);
  if (auto v = get("a")) cfg.spec.a = to_double("a", *v);
  if (auto v = get("b")) cfg.spec.b = to_double("b", *v);
  if (auto v = get("n-min")) cfg.n_min = to_int("n-min", *v);
  if (auto v = get("n-max")) cfg.n_max = to_int("n-max", *v);
  cfg.spec.n_min = cfg.n_min;
  cfg.spec.n_max = cfg.n_max;
  if (auto v = get("grid-points")) cfg.grid_points = to_int("grid-points", *v);
  if (auto v = get("grid-mapping")) {
    if (*v == "sqrt") {
      cfg.mapping = GridMapping::sqrt;
    } else if (*v == "uniform") {
      cfg.mapping = GridMapping::uniform;
    } else {
      throw UsageError("--grid-mapping: expected sqrt|uniform, got '" + *v + "'");
    }
  }
  if (auto v = get("r-max")) cfg.r_max = to_double("r-max", *v);
  if (auto v = get("t-max")) cfg.t_max = to_double("t-max", *v);
  if (auto v = get("t-unit")) cfg.t_unit = to_time_unit(*v);
  if (auto v = get("samples")) cfg.samples = to_int("samples", *v);
  if (auto v = get("times")) {
    if (*v == "auto") {
      cfg.auto_times = true;
    } else {
      cfg.times = to_list<double>("times", *v, to_double);
    }
  }
  if (auto v = get("scan")) cfg.scan = to_scan("scan", *v);
  if (auto v = get("au")) cfg.au = to_bool("au", *v);
  if (auto v = get("figure")) cfg.figure = to_int("figure", *v);
  if (auto v = get("format")) {
    if (*v == "csv") {
      cfg.format = OutputFormat::csv;
    } else if (*v == "pgm") {
      cfg.format = OutputFormat::pgm;
    } else {
      throw UsageError("--format: expected csv|pgm, got '" + *v + "'");
    }
  }
  if (auto v = get("out")) cfg.out = *v == "-" ? std::string() : *v;

  if (cfg.samples < 1) throw UsageError("--samples must be >= 1");
  if (cfg.grid_points < 2) throw UsageError("--grid-points must be >= 2");
  if (cfg.format == OutputFormat::pgm && command != Command::carpet) {
    throw UsageError("--format pgm is only available for 'carpet'");
  }
  if (!cfg.auto_times && cfg.times.empty()) throw UsageError("--times: at least one time required");
  return cfg;
}

RunConfig resolve_layers(Command command, const KeyValues& config_file, const KeyValues& flags) {
  std::optional<int> figure;
  for (const KeyValues* layer : {&config_file, &flags}) {
    if (auto it = layer->find("figure"); it != layer->end()) figure = to_int("figure", it->second);
  }
  std::vector<KeyValues> layers{builtin_defaults()};
  if (figure) layers.push_back(figure_preset(*figure, command));
  layers.push_back(config_file);
  layers.push_back(flags);
  return resolve(command, layers);
}

double time_unit_in_au(TimeUnit unit, const PhysicalParams& params, int n_av) {
  switch (unit) {
    case TimeUnit::au: return 1.0;
    case TimeUnit::seconds: return 1.0 / kAtomicTimeSeconds;
    case TimeUnit::t_cl: return time_scale_k(params, n_av, 1);
    case TimeUnit::t_ls: return t_ls(params, n_av);
  }
  return 1.0;
}

}  // namespace rwp::cli
