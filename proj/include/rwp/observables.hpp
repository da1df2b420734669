#pragma once

#include <complex>
#include <span>
#include <vector>

#include "rwp/packet.hpp"
#include "rwp/physics.hpp"
#include "rwp/radial.hpp"

namespace rwp {

inline constexpr double kDefaultProminence = 0.1;

// Radial probability densities of the two spinor components, per bohr.
struct DensitySnapshot {
  double t = 0.0;
  std::vector<double> rho1;
  std::vector<double> rho2;
};

DensitySnapshot densities(const SpinorAmplitudes& amps, const RadialTable& table, const RadialGrid& grid);

// <Psi(0)|Psi(t)>, evaluated from the weights and energies alone.
cplx autocorrelation(const Packet& packet, const EnergyTable& energies, double t);

struct SpinVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double spin_length(double sx, double sy, double sz);
inline double spin_length(const SpinVector& s) { return spin_length(s.x, s.y, s.z); }

// Pauli expectation values of the evolved spinor.
SpinVector spin_expectations(const SpinorAmplitudes& amps, int l);

struct ComponentNorms {
  double n1 = 0.0;
  double n2 = 0.0;
};

// Closed form N2(t) = |b|^2/(2l+1)^2 sum_n w_n^2 (1 + 4l^2 + 4l cos(omega_n t)), N1 = 1 - N2.
ComponentNorms component_norms(const Packet& packet, const EnergyTable& energies, double t, int l);

struct ObservableSeries {
  std::vector<double> t;
  std::vector<cplx> A;
  std::vector<double> asq;
  std::vector<double> sx, sy, sz;
  std::vector<double> slen;
  std::vector<double> N1, N2;

  std::size_t size() const noexcept { return t.size(); }
};

ObservableSeries observable_series(const Packet& packet, const EnergyTable& energies,
                                   std::span<const double> times);

// (time x radius) densities, rows in t_grid order.
struct CarpetGrid {
  std::vector<double> t_axis;
  std::vector<double> r_axis;
  std::vector<double> rho1;  // row-major, rows() x cols()
  std::vector<double> rho2;

  std::size_t rows() const noexcept { return t_axis.size(); }
  std::size_t cols() const noexcept { return r_axis.size(); }
  double rho1_at(std::size_t i, std::size_t j) const { return rho1[i * cols() + j]; }
  double rho2_at(std::size_t i, std::size_t j) const { return rho2[i * cols() + j]; }
};

CarpetGrid carpet(const Packet& packet, const EnergyTable& energies, const RadialTable& table,
                  const RadialGrid& grid, std::span<const double> t_grid);

struct Peak {
  double t;
  double value;
};

enum class PeakSignal { asq, slen };

// Local maxima of y on samples with t in [t_from, t_to] whose topographic
// prominence is at least `prominence`, refined by a 3-point parabola.
std::vector<Peak> detect_peaks(std::span<const double> t, std::span<const double> y, double t_from,
                               double t_to, double prominence = kDefaultProminence);

std::vector<Peak> detect_revivals(const ObservableSeries& series, double t_from, double t_to,
                                  PeakSignal signal = PeakSignal::asq,
                                  double prominence = kDefaultProminence);

}  // namespace rwp
