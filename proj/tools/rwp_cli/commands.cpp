#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "rwp/error.hpp"

namespace rwp::cli {

namespace {

std::string compact(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

// Runs `write` against --out, or against the default stream when no path is set.
void emit(const std::string& path, Streams io, const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(io.out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
  io.err << "wrote " << path << '\n';
}

std::vector<double> linspace(double from, double to, int count) {
  std::vector<double> v(static_cast<std::size_t>(count));
  if (count == 1) {
    v[0] = from;
    return v;
  }
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = from + (to - from) * i / (count - 1);
  return v;
}

struct Model {
  Packet packet;
  EnergyTable energies;
  double unit_au;
};

Model build_model(const RunConfig& cfg, const PacketSpec& spec) {
  cfg.params.validate();
  Packet packet = build_packet(spec, cfg.params.l);
  EnergyTable energies = energy_table(cfg.params, packet.n_min(), packet.n_max());
  const double unit = time_unit_in_au(cfg.t_unit, cfg.params, static_cast<int>(std::lround(spec.n_av)));
  return {std::move(packet), std::move(energies), unit};
}

double default_r_max(const RunConfig& cfg, int n_max) {
  return cfg.r_max.value_or(kGridExtentFactor * n_max * static_cast<double>(n_max) / cfg.params.Z);
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string derive_path(const std::string& out, const std::string& suffix, const std::string& ext) {
  std::string stem = out.empty() ? std::string("rwp") : out;
  const std::string dotted = "." + ext;
  if (stem.size() > dotted.size() && stem.compare(stem.size() - dotted.size(), dotted.size(), dotted) == 0) {
    stem.erase(stem.size() - dotted.size());
  }
  return stem + suffix + dotted;
}

void write_csv_row(std::ostream& os, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << format_double(values[i]);
  }
  os << '\n';
}

void write_pgm(std::ostream& os, std::span<const double> values, std::size_t rows, std::size_t cols,
               double scale) {
  os << "P2\n" << cols << ' ' << rows << "\n255\n";
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = scale > 0.0 ? values[i * cols + j] / scale : 0.0;
      const long pixel = std::clamp(std::lround(255.0 * v), 0L, 255L);
      if (j) os << ' ';
      os << pixel;
    }
    os << '\n';
  }
}

void cmd_energies(const RunConfig& cfg, Streams io) {
  cfg.params.validate();
  int n_min = 0;
  int n_max = 0;
  if (cfg.n_min && cfg.n_max) {
    n_min = *cfg.n_min;
    n_max = *cfg.n_max;
  } else {
    const Packet packet = build_packet(cfg.spec, cfg.params.l);
    n_min = cfg.n_min.value_or(packet.n_min());
    n_max = cfg.n_max.value_or(packet.n_max());
  }
  const EnergyTable table = energy_table(cfg.params, n_min, n_max);
  emit(cfg.out, io, [&](std::ostream& os) {
    os << "n,eps_plus_au,eps_minus_au,delta_au,omega_au\n";
    for (const auto& row : table.rows()) {
      os << row.n << ',';
      write_csv_row(os, std::vector<double>{row.eps_plus, row.eps_minus, row.omega * kHbar, row.omega});
    }
  });
}

void cmd_timescales(const RunConfig& cfg, Streams io) {
  std::vector<int> charges = cfg.z_values.empty() ? std::vector<int>{cfg.params.Z} : cfg.z_values;
  const auto [from, to] = cfg.scan.value_or(std::pair{static_cast<int>(cfg.spec.n_av),
                                                      static_cast<int>(cfg.spec.n_av)});
  for (int Z : charges) {
    PhysicalParams params = cfg.params;
    params.Z = Z;
    params.validate();
    const std::string path =
        charges.size() > 1 ? derive_path(cfg.out, "_Z" + std::to_string(Z), "csv") : cfg.out;
    emit(path, io, [&](std::ostream& os) {
      os << "n_av,T_cl_s,T_rev_s,T_ls_s,T_ls2_s,T_ls_lowest_order_s";
      if (cfg.au) os << ",T_cl_au,T_rev_au,T_ls_au,T_ls2_au,T_ls_lowest_order_au";
      os << '\n';
      for (int n = from; n <= to; ++n) {
        const TimeScales au = time_scales(params, n);
        const TimeScales s = au.in_seconds();
        const double lowest = t_ls_lowest_order(params, n);
        std::vector<double> row{s.t_cl, s.t_rev, s.t_ls, s.t_ls2, lowest * kAtomicTimeSeconds};
        if (cfg.au) row.insert(row.end(), {au.t_cl, au.t_rev, au.t_ls, au.t_ls2, lowest});
        os << n << ',';
        write_csv_row(os, row);
      }
    });
  }
}

void cmd_observables(const RunConfig& cfg, Streams io) {
  const std::vector<double> sigmas = cfg.sigmas.empty() ? std::vector<double>{cfg.spec.sigma} : cfg.sigmas;
  for (double sigma : sigmas) {
    PacketSpec spec = cfg.spec;
    spec.sigma = sigma;
    const Model model = build_model(cfg, spec);
    const std::vector<double> t_unit = linspace(0.0, cfg.t_max, cfg.samples);
    std::vector<double> t_au(t_unit.size());
    std::transform(t_unit.begin(), t_unit.end(), t_au.begin(), [&](double t) { return t * model.unit_au; });
    const ObservableSeries s = observable_series(model.packet, model.energies, t_au);
    const std::string path = sigmas.size() > 1 ? derive_path(cfg.out, "_sigma" + compact(sigma), "csv") : cfg.out;
    emit(path, io, [&](std::ostream& os) {
      os << "t,re_A,im_A,asq,sx,sy,sz,slen,N1,N2\n";
      for (std::size_t i = 0; i < s.size(); ++i) {
        write_csv_row(os, std::vector<double>{t_unit[i], s.A[i].real(), s.A[i].imag(), s.asq[i], s.sx[i],
                                              s.sy[i], s.sz[i], s.slen[i], s.N1[i], s.N2[i]});
      }
    });
  }
}

std::vector<double> revival_times(const Packet& packet, const EnergyTable& energies, double t_max_au,
                                  int count) {
  // T_ls / 200 sampling resolves both the Kepler oscillation and the spin envelope.
  const double n_av = packet.spec().n_av;
  const double dt = std::min(t_ls(energies.params(), static_cast<int>(std::lround(n_av))) / 200.0,
                             time_scale_k(energies.params(), n_av, 1) / 50.0);
  const int samples = static_cast<int>(std::ceil(t_max_au / dt)) + 1;
  const std::vector<double> times = linspace(0.0, t_max_au, std::max(samples, 3));
  const ObservableSeries series = observable_series(packet, energies, times);
  std::vector<Peak> peaks = detect_revivals(series, 0.0, t_max_au);
  std::sort(peaks.begin(), peaks.end(), [](const Peak& x, const Peak& y) { return x.value > y.value; });
  if (peaks.size() > static_cast<std::size_t>(count)) peaks.resize(static_cast<std::size_t>(count));
  std::vector<double> result{0.0};
  for (const auto& p : peaks) result.push_back(p.t);
  std::sort(result.begin(), result.end());
  return result;
}

void cmd_density(const RunConfig& cfg, Streams io) {
  const Model model = build_model(cfg, cfg.spec);
  const RadialGrid grid = make_grid_extent(default_r_max(cfg, model.packet.n_max()), cfg.grid_points, cfg.mapping);
  const RadialTable table = radial_table(cfg.params, model.packet.n_min(), model.packet.n_max(), grid);

  std::vector<double> t_au;
  if (cfg.auto_times) {
    t_au = revival_times(model.packet, model.energies, cfg.t_max * model.unit_au, cfg.auto_peaks);
  } else {
    for (double t : cfg.times) t_au.push_back(t * model.unit_au);
  }
  for (std::size_t k = 0; k < t_au.size(); ++k) {
    const DensitySnapshot snap = densities(amplitudes_at(model.packet, model.energies, t_au[k]), table, grid);
    const std::string path = t_au.size() > 1 ? derive_path(cfg.out, "_t" + std::to_string(k), "csv") : cfg.out;
    emit(path, io, [&](std::ostream& os) {
      os << "r,rho1,rho2,rho\n";
      for (std::size_t i = 0; i < grid.size(); ++i) {
        write_csv_row(os, std::vector<double>{grid.r[i], snap.rho1[i], snap.rho2[i], snap.rho1[i] + snap.rho2[i]});
      }
    });
  }
}

void cmd_carpet(const RunConfig& cfg, Streams io) {
  const Model model = build_model(cfg, cfg.spec);
  const RadialGrid axis = make_display_axis(default_r_max(cfg, model.packet.n_max()), cfg.grid_points);
  const RadialTable table = radial_table(cfg.params, model.packet.n_min(), model.packet.n_max(), axis);
  const std::vector<double> t_unit = linspace(0.0, cfg.t_max, cfg.samples);
  std::vector<double> t_au(t_unit.size());
  std::transform(t_unit.begin(), t_unit.end(), t_au.begin(), [&](double t) { return t * model.unit_au; });
  const CarpetGrid grid = carpet(model.packet, model.energies, table, axis, t_au);

  const struct {
    const char* name;
    const std::vector<double>& values;
  } components[] = {{"_rho1", grid.rho1}, {"_rho2", grid.rho2}};

  if (cfg.format == OutputFormat::pgm) {
    double scale = 0.0;
    for (const auto& c : components) {
      for (double v : c.values) scale = std::max(scale, v);
    }
    for (const auto& c : components) {
      emit(derive_path(cfg.out, c.name, "pgm"), io,
           [&](std::ostream& os) { write_pgm(os, c.values, grid.rows(), grid.cols(), scale); });
    }
    return;
  }
  for (const auto& c : components) {
    emit(derive_path(cfg.out, c.name, "csv"), io, [&](std::ostream& os) {
      os << "t\\r";
      for (double r : grid.r_axis) os << ',' << format_double(r);
      os << '\n';
      for (std::size_t i = 0; i < grid.rows(); ++i) {
        os << format_double(t_unit[i]);
        for (std::size_t j = 0; j < grid.cols(); ++j) os << ',' << format_double(c.values[i * grid.cols() + j]);
        os << '\n';
      }
    });
  }
}

void dispatch(const RunConfig& cfg, Streams io) {
  switch (cfg.command) {
    case Command::energies: return cmd_energies(cfg, io);
    case Command::timescales: return cmd_timescales(cfg, io);
    case Command::observables: return cmd_observables(cfg, io);
    case Command::density: return cmd_density(cfg, io);
    case Command::carpet: return cmd_carpet(cfg, io);
  }
}

}  // namespace rwp::cli
