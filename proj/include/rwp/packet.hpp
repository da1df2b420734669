#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "rwp/physics.hpp"

namespace rwp {

using cplx = std::complex<double>;

inline constexpr double kSpinorTolerance = 1e-9;
inline constexpr double kTruncationSigmas = 5.0;

struct PacketSpec {
  double n_av = 80.0;
  double sigma = 2.0;
  cplx a{0.0, 0.0};
  cplx b{1.0, 0.0};
  // Defaults to [max(l+1, round(n_av - 5 sigma)), round(n_av + 5 sigma)].
  std::optional<int> n_min;
  std::optional<int> n_max;
};

// w_n = (-1)^n exp(-(n - n_av)^2 / 4 sigma^2), renormalized to sum w_n^2 = 1.
std::vector<double> gaussian_weights(double n_av, double sigma, int n_min, int n_max);

// Initial state sum_n w_n |n l l> (a, b)^T. Immutable once built.
class Packet {
 public:
  Packet(PacketSpec spec, int l, int n_min, int n_max, std::vector<double> weights);

  const PacketSpec& spec() const noexcept { return spec_; }
  int l() const noexcept { return l_; }
  int n_min() const noexcept { return n_min_; }
  int n_max() const noexcept { return n_max_; }
  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double weight(int n) const { return weights_.at(static_cast<std::size_t>(n - n_min_)); }
  cplx a() const noexcept { return spec_.a; }
  cplx b() const noexcept { return spec_.b; }

 private:
  PacketSpec spec_;
  int l_;
  int n_min_;
  int n_max_;
  std::vector<double> weights_;
};

Packet build_packet(const PacketSpec& spec, int l);

// Per-n coefficients of the evolved spinor:
//   Psi_1 = sum_n c1_n |n l l> + d1_n |n l l-1>,  Psi_2 = sum_n c2_n |n l l>.
struct SpinorAmplitudes {
  double t = 0.0;
  int n_min = 0;
  int l = 1;
  std::vector<cplx> c1;
  std::vector<cplx> d1;
  std::vector<cplx> c2;

  std::size_t size() const noexcept { return c1.size(); }
  double norm() const noexcept;
};

SpinorAmplitudes amplitudes_at(const Packet& packet, const EnergyTable& energies, double t);

}  // namespace rwp
