#include "rwp/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rwp/error.hpp"
#include "rwp/parallel.hpp"

namespace rwp {

namespace {

void check_coverage(const Packet& packet, const EnergyTable& energies) {
  if (!energies.covers(packet.n_min(), packet.n_max())) {
    throw Error(ErrorCode::RangeMismatch, "energy table does not cover the packet range");
  }
}

void check_table(int n_min, int n_max, int l, const RadialTable& table, const RadialGrid& grid) {
  if (!table.covers(n_min, n_max) || table.l() != l) {
    throw Error(ErrorCode::RangeMismatch, "radial table does not match the packet range or l");
  }
  if (table.points() != grid.size()) {
    throw Error(ErrorCode::RangeMismatch, "radial table and grid sizes differ");
  }
}

void fill_densities(const SpinorAmplitudes& amps, const RadialTable& table, const RadialGrid& grid,
                    double* rho1, double* rho2) {
  const std::size_t count = amps.size();
  std::vector<std::span<const double>> rows;
  rows.reserve(count);
  for (std::size_t k = 0; k < count; ++k) rows.push_back(table.row(amps.n_min + static_cast<int>(k)));

  for (std::size_t i = 0; i < grid.size(); ++i) {
    cplx up{}, up_rotated{}, down{};
    for (std::size_t k = 0; k < count; ++k) {
      const double radial = rows[k][i];
      up += amps.c1[k] * radial;
      up_rotated += amps.d1[k] * radial;
      down += amps.c2[k] * radial;
    }
    // |nll> and |nl,l-1> carry orthogonal angular parts, so the two Psi_1 channels add in probability.
    const double r2 = grid.r[i] * grid.r[i];
    rho1[i] = r2 * (std::norm(up) + std::norm(up_rotated));
    rho2[i] = r2 * std::norm(down);
  }
}

double parabola_vertex(double x0, double y0, double y1, double x2, double y2, double& value) {
  const double det = x0 * x2 * (x0 - x2);
  const double A = ((y0 - y1) * x2 - (y2 - y1) * x0) / det;
  const double B = ((y2 - y1) * x0 * x0 - (y0 - y1) * x2 * x2) / det;
  if (!(A < 0.0)) {
    value = y1;
    return 0.0;
  }
  const double x = -B / (2.0 * A);
  if (x < x0 || x > x2) {
    value = y1;
    return 0.0;
  }
  value = y1 - B * B / (4.0 * A);
  return x;
}

}  // namespace

DensitySnapshot densities(const SpinorAmplitudes& amps, const RadialTable& table, const RadialGrid& grid) {
  check_table(amps.n_min, amps.n_min + static_cast<int>(amps.size()) - 1, amps.l, table, grid);
  DensitySnapshot snap;
  snap.t = amps.t;
  snap.rho1.resize(grid.size());
  snap.rho2.resize(grid.size());
  fill_densities(amps, table, grid, snap.rho1.data(), snap.rho2.data());
  return snap;
}

cplx autocorrelation(const Packet& packet, const EnergyTable& energies, double t) {
  check_coverage(packet, energies);
  const double inv = 1.0 / (2.0 * packet.l() + 1.0);
  const double a2 = std::norm(packet.a());
  const double b2 = std::norm(packet.b());
  const double plus_weight = a2 + b2 * inv;
  const double minus_weight = b2 * 2.0 * packet.l() * inv;
  cplx sum{};
  for (std::size_t k = 0; k < packet.size(); ++k) {
    const auto& e = energies.at(packet.n_min() + static_cast<int>(k));
    const double w2 = packet.weights()[k] * packet.weights()[k];
    sum += w2 * std::polar(1.0, -e.eps_plus * t / kHbar) *
           (plus_weight + minus_weight * std::polar(1.0, e.omega * t));
  }
  return sum;
}

double spin_length(double sx, double sy, double sz) { return std::sqrt(sx * sx + sy * sy + sz * sz); }

SpinVector spin_expectations(const SpinorAmplitudes& amps, int l) {
  if (l != amps.l) throw Error(ErrorCode::InvalidQuantumNumbers, "l differs from the amplitudes' l");
  cplx overlap{};
  double sz = 0.0;
  for (std::size_t k = 0; k < amps.size(); ++k) {
    overlap += std::conj(amps.c1[k]) * amps.c2[k];
    sz += std::norm(amps.c1[k]) + std::norm(amps.d1[k]) - std::norm(amps.c2[k]);
  }
  return {2.0 * overlap.real(), 2.0 * overlap.imag(), sz};
}

ComponentNorms component_norms(const Packet& packet, const EnergyTable& energies, double t, int l) {
  if (l != packet.l()) throw Error(ErrorCode::InvalidQuantumNumbers, "l differs from the packet's l");
  check_coverage(packet, energies);
  const double l2 = 2.0 * l;
  double sum = 0.0;
  for (std::size_t k = 0; k < packet.size(); ++k) {
    const auto& e = energies.at(packet.n_min() + static_cast<int>(k));
    const double w2 = packet.weights()[k] * packet.weights()[k];
    sum += w2 * (1.0 + l2 * l2 + 2.0 * l2 * std::cos(e.omega * t));
  }
  const double n2 = std::norm(packet.b()) / ((l2 + 1.0) * (l2 + 1.0)) * sum;
  return {1.0 - n2, n2};
}

ObservableSeries observable_series(const Packet& packet, const EnergyTable& energies,
                                   std::span<const double> times) {
  check_coverage(packet, energies);
  ObservableSeries s;
  const std::size_t count = times.size();
  s.t.assign(times.begin(), times.end());
  s.A.resize(count);
  s.asq.resize(count);
  s.sx.resize(count);
  s.sy.resize(count);
  s.sz.resize(count);
  s.slen.resize(count);
  s.N1.resize(count);
  s.N2.resize(count);
  parallel_for(count, [&](std::size_t i) {
    const double t = times[i];
    s.A[i] = autocorrelation(packet, energies, t);
    s.asq[i] = std::norm(s.A[i]);
    const SpinVector spin = spin_expectations(amplitudes_at(packet, energies, t), packet.l());
    s.sx[i] = spin.x;
    s.sy[i] = spin.y;
    s.sz[i] = spin.z;
    s.slen[i] = spin_length(spin);
    const ComponentNorms norms = component_norms(packet, energies, t, packet.l());
    s.N1[i] = norms.n1;
    s.N2[i] = norms.n2;
  });
  return s;
}

CarpetGrid carpet(const Packet& packet, const EnergyTable& energies, const RadialTable& table,
                  const RadialGrid& grid, std::span<const double> t_grid) {
  check_coverage(packet, energies);
  check_table(packet.n_min(), packet.n_max(), packet.l(), table, grid);
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) {
    throw Error(ErrorCode::InvalidRange, "carpet time grid must be ascending");
  }
  CarpetGrid c;
  c.t_axis.assign(t_grid.begin(), t_grid.end());
  c.r_axis = grid.r;
  const std::size_t cols = grid.size();
  c.rho1.resize(c.rows() * cols);
  c.rho2.resize(c.rows() * cols);
  parallel_for(c.rows(), [&](std::size_t i) {
    fill_densities(amplitudes_at(packet, energies, t_grid[i]), table, grid, c.rho1.data() + i * cols,
                   c.rho2.data() + i * cols);
  });
  return c;
}

std::vector<Peak> detect_peaks(std::span<const double> t, std::span<const double> y, double t_from,
                               double t_to, double prominence) {
  if (t.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "t and y lengths differ");
  const auto first = static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), t_from) - t.begin());
  const auto last = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), t_to) - t.begin());
  if (!(t_from <= t_to) || first >= last) {
    throw Error(ErrorCode::EmptyWindow, "no samples in [" + std::to_string(t_from) + ", " +
                                            std::to_string(t_to) + "]");
  }
  std::vector<Peak> peaks;
  for (std::size_t i = first + 1; i + 1 < last; ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;

    double left_min = y[i];
    for (std::size_t j = i; j-- > first && y[j] <= y[i];) left_min = std::min(left_min, y[j]);
    double right_min = y[i];
    for (std::size_t j = i + 1; j < last && y[j] <= y[i]; ++j) right_min = std::min(right_min, y[j]);
    if (y[i] - std::max(left_min, right_min) < prominence) continue;

    double value = y[i];
    const double shift =
        parabola_vertex(t[i - 1] - t[i], y[i - 1], y[i], t[i + 1] - t[i], y[i + 1], value);
    peaks.push_back({t[i] + shift, value});
  }
  return peaks;
}

std::vector<Peak> detect_revivals(const ObservableSeries& series, double t_from, double t_to,
                                  PeakSignal signal, double prominence) {
  const auto& y = signal == PeakSignal::asq ? series.asq : series.slen;
  return detect_peaks(series.t, y, t_from, t_to, prominence);
}

}  // namespace rwp
