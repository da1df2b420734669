#include "rwp/packet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rwp/error.hpp"

namespace rwp {

std::vector<double> gaussian_weights(double n_av, double sigma, int n_min, int n_max) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidRange, "sigma must be positive");
  if (n_max < n_min) {
    throw Error(ErrorCode::EmptyRange,
                "empty range [" + std::to_string(n_min) + ", " + std::to_string(n_max) + "]");
  }
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  double sum = 0.0;
  for (int n = n_min; n <= n_max; ++n) {
    const double x = (n - n_av) / sigma;
    const double g = std::exp(-0.25 * x * x);
    w.push_back(n % 2 == 0 ? g : -g);
    sum += g * g;
  }
  if (!(sum > 0.0)) throw Error(ErrorCode::EmptyRange, "weights vanish on the range");
  const double scale = 1.0 / std::sqrt(sum);
  for (double& v : w) v *= scale;
  return w;
}

Packet::Packet(PacketSpec spec, int l, int n_min, int n_max, std::vector<double> weights)
    : spec_(spec), l_(l), n_min_(n_min), n_max_(n_max), weights_(std::move(weights)) {}

Packet build_packet(const PacketSpec& spec, int l) {
  if (l < 1) throw Error(ErrorCode::InvalidQuantumNumbers, "l must be >= 1");
  const double spin_norm = std::norm(spec.a) + std::norm(spec.b);
  if (!(std::abs(spin_norm - 1.0) <= kSpinorTolerance)) {
    throw Error(ErrorCode::NonNormalizedSpinor, "|a|^2 + |b|^2 = " + std::to_string(spin_norm));
  }
  if (!(spec.sigma > 0.0)) throw Error(ErrorCode::InvalidRange, "sigma must be positive");
  const int n_min = spec.n_min.value_or(
      std::max(l + 1, static_cast<int>(std::lround(spec.n_av - kTruncationSigmas * spec.sigma))));
  const int n_max =
      spec.n_max.value_or(static_cast<int>(std::lround(spec.n_av + kTruncationSigmas * spec.sigma)));
  if (n_min < l + 1 || n_max < n_min || spec.n_av < n_min || spec.n_av > n_max) {
    throw Error(ErrorCode::InvalidRange, "need l+1 <= n_min <= n_av <= n_max, got [" +
                                             std::to_string(n_min) + ", " + std::to_string(n_max) + "]");
  }
  PacketSpec resolved = spec;
  resolved.n_min = n_min;
  resolved.n_max = n_max;
  return Packet(resolved, l, n_min, n_max, gaussian_weights(spec.n_av, spec.sigma, n_min, n_max));
}

double SpinorAmplitudes::norm() const noexcept {
  double sum = 0.0;
  for (std::size_t k = 0; k < c1.size(); ++k) sum += std::norm(c1[k]) + std::norm(d1[k]) + std::norm(c2[k]);
  return sum;
}

// In the |n l j m_j> basis the initial state is
//   a |j>, j> + b (sqrt(1/(2l+1)) |j>, j<> + sqrt(2l/(2l+1)) |j<, j<>),
// each term picking up exp(-i eps t) of its own j. Projecting back onto
// spin up/down gives the three channel amplitudes below.
SpinorAmplitudes amplitudes_at(const Packet& packet, const EnergyTable& energies, double t) {
  if (!energies.covers(packet.n_min(), packet.n_max())) {
    throw Error(ErrorCode::RangeMismatch, "energy table does not cover the packet range");
  }
  if (energies.params().l != packet.l()) {
    throw Error(ErrorCode::RangeMismatch, "energy table l differs from packet l");
  }
  const double l2 = 2.0 * packet.l();
  const double inv = 1.0 / (l2 + 1.0);
  const double mix = std::sqrt(l2) * inv;

  SpinorAmplitudes amps;
  amps.t = t;
  amps.n_min = packet.n_min();
  amps.l = packet.l();
  const std::size_t size = packet.size();
  amps.c1.resize(size);
  amps.d1.resize(size);
  amps.c2.resize(size);
  for (std::size_t k = 0; k < size; ++k) {
    const auto& e = energies.at(packet.n_min() + static_cast<int>(k));
    const double w = packet.weights()[k];
    // exp(-i eps- t) = exp(-i eps+ t) exp(i omega t): the relative phase comes from the
    // splitting directly, so spin observables never see rounding of the large eps+ t.
    const cplx plus = std::polar(1.0, -e.eps_plus * t / kHbar);
    const cplx relative = std::polar(1.0, e.omega * t);
    amps.c1[k] = w * packet.a() * plus;
    amps.d1[k] = w * packet.b() * mix * plus * (1.0 - relative);
    amps.c2[k] = w * packet.b() * inv * plus * (1.0 + l2 * relative);
  }
  return amps;
}

}  // namespace rwp
