#pragma once

#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rwp/packet.hpp"
#include "rwp/physics.hpp"
#include "rwp/radial.hpp"

namespace rwp::cli {

// Bad flags, bad config keys or values: exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { energies, timescales, observables, density, carpet };
enum class TimeUnit { au, seconds, t_cl, t_ls };
enum class OutputFormat { csv, pgm };

Command parse_command(const std::string& name);
const char* command_name(Command command) noexcept;

using KeyValues = std::map<std::string, std::string>;

// Keys accepted both as --flags and as config-file entries.
const std::vector<std::string>& config_keys();

// `key = value` lines; '#' and ';' start comments; blank lines ignored.
KeyValues parse_config_text(std::istream& in, const std::string& origin = "config");
KeyValues read_config_file(const std::string& path);

KeyValues builtin_defaults();

// Preset values for --figure N; throws UsageError for an unknown figure or
// when the figure belongs to another command.
KeyValues figure_preset(int figure, Command command);

struct RunConfig {
  Command command = Command::energies;
  PhysicalParams params;
  PacketSpec spec;
  std::optional<int> n_min;
  std::optional<int> n_max;
  int grid_points = kDefaultGridPoints;
  GridMapping mapping = GridMapping::sqrt;
  std::optional<double> r_max;
  double t_max = 1.0;
  TimeUnit t_unit = TimeUnit::t_cl;
  int samples = 201;
  std::vector<double> times;   // density snapshots, in t_unit
  bool auto_times = false;     // density at t=0 plus the strongest |A|^2 revivals
  int auto_peaks = 4;
  std::optional<std::pair<int, int>> scan;
  bool au = false;
  std::vector<double> sigmas;  // one output per value when non-empty
  std::vector<int> z_values;   // one output per value when non-empty
  std::optional<int> figure;
  OutputFormat format = OutputFormat::csv;
  std::string out;
};

// Merges layers in order of increasing precedence and converts to a RunConfig.
// A layer that sets `sigma` or `Z` clears `sigmas` / `z-values` inherited from
// lower layers, so a single explicit value always wins over a preset list.
RunConfig resolve(Command command, const std::vector<KeyValues>& layers);

// Builtins < figure preset < config file < flags.
RunConfig resolve_layers(Command command, const KeyValues& config_file, const KeyValues& flags);

// Length of one `unit` in atomic time units (T_cl and T_ls taken at n_av).
double time_unit_in_au(TimeUnit unit, const PhysicalParams& params, int n_av);

}  // namespace rwp::cli
