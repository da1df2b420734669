#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "config.hpp"
#include "rwp/observables.hpp"

namespace rwp::cli {

// 17 significant digits, '.' decimal separator regardless of locale.
std::string format_double(double value);

// `stem + suffix + "." + ext`, where a trailing ".ext" on `out` is dropped first.
std::string derive_path(const std::string& out, const std::string& suffix, const std::string& ext);

void write_csv_row(std::ostream& os, std::span<const double> values);

// Plain-text P2, width = cols, height = rows, pixel = round(255 * v / scale).
void write_pgm(std::ostream& os, std::span<const double> values, std::size_t rows, std::size_t cols,
               double scale);

struct Streams {
  std::ostream& out;  // single-output commands without --out
  std::ostream& err;  // progress notes ("wrote PATH")
};

void cmd_energies(const RunConfig& cfg, Streams io);
void cmd_timescales(const RunConfig& cfg, Streams io);
void cmd_observables(const RunConfig& cfg, Streams io);
void cmd_density(const RunConfig& cfg, Streams io);
void cmd_carpet(const RunConfig& cfg, Streams io);

void dispatch(const RunConfig& cfg, Streams io);

// Density snapshot times (atomic units) used by --times auto: t = 0 followed by
// the `count` highest |A|^2 revival peaks in (0, t_max_au], in time order.
std::vector<double> revival_times(const Packet& packet, const EnergyTable& energies, double t_max_au,
                                  int count);

// Full command line entry point. Returns the process exit status:
// 0 success, 2 usage error, 1 domain or I/O error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rwp::cli
