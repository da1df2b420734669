#include "rwp/physics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rwp/error.hpp"

namespace rwp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Denominator bracket of the Dirac level formula, n - j - 1/2 + sqrt((j+1/2)^2 - (Z alpha)^2).
// The energy is E = m0 c^2 u / sqrt(u^2 + (Z alpha)^2); n enters only through u.
double bracket(const PhysicalParams& params, double n, double j) {
  const double kappa = j + 0.5;
  const double za = params.z_alpha();
  if (kappa * kappa <= za * za) {
    throw Error(ErrorCode::SupercriticalCharge,
                "(j+1/2)^2 <= (Z alpha)^2 for Z=" + std::to_string(params.Z));
  }
  return n - kappa + std::sqrt(kappa * kappa - za * za);
}

// E - m0 c^2 = -Z^2 / (w (w + u)) with w = sqrt(u^2 + (Z alpha)^2); no large cancellation.
double reduced_energy(const PhysicalParams& params, double u) {
  const double za = params.z_alpha();
  const double w = std::sqrt(u * u + za * za);
  const double z2 = static_cast<double>(params.Z) * params.Z;
  return -z2 / (w * (w + u));
}

void check_level(const PhysicalParams& params, int n) {
  if (n < params.l + 1) {
    throw Error(ErrorCode::InvalidQuantumNumbers,
                "n=" + std::to_string(n) + " requires n >= l+1=" + std::to_string(params.l + 1));
  }
}

}  // namespace

void PhysicalParams::validate() const {
  if (Z < 1) throw Error(ErrorCode::InvalidQuantumNumbers, "Z must be >= 1");
  if (l < 1) throw Error(ErrorCode::InvalidQuantumNumbers, "l must be >= 1");
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidQuantumNumbers, "alpha must be positive");
  if (z_alpha() >= 1.0) {
    throw Error(ErrorCode::SupercriticalCharge,
                "Z alpha = " + std::to_string(z_alpha()) + " >= 1 for Z=" + std::to_string(Z));
  }
}

double dirac_energy(const PhysicalParams& params, int n, HalfInteger j) {
  params.validate();
  if (j != branch_j(params.l, Branch::plus) && j != branch_j(params.l, Branch::minus)) {
    throw Error(ErrorCode::InvalidQuantumNumbers, "j must be l +- 1/2");
  }
  check_level(params, n);
  return reduced_energy(params, bracket(params, n, j.value()));
}

double branch_energy(const PhysicalParams& params, double n, Branch branch) {
  params.validate();
  return reduced_energy(params, bracket(params, n, branch_j(params.l, branch).value()));
}

double branch_energy_derivative(const PhysicalParams& params, double n, Branch branch, int k) {
  params.validate();
  const double u = bracket(params, n, branch_j(params.l, branch).value());
  const double za2 = params.z_alpha() * params.z_alpha();
  const double q = u * u + za2;
  const double z2 = static_cast<double>(params.Z) * params.Z;
  switch (k) {
    case 1: return z2 / (q * std::sqrt(q));
    case 2: return -3.0 * z2 * u / (q * q * std::sqrt(q));
    case 3: return 3.0 * z2 * (4.0 * u * u - za2) / (q * q * q * std::sqrt(q));
    default:
      throw Error(ErrorCode::UnsupportedOrder, "derivative order " + std::to_string(k) + " not in 1..3");
  }
}

double fine_structure_splitting(const PhysicalParams& params, int n) {
  params.validate();
  check_level(params, n);
  const int l = params.l;
  const double za2 = params.z_alpha() * params.z_alpha();
  const double root_plus = std::sqrt((l + 1.0) * (l + 1.0) - za2);
  const double root_minus = std::sqrt(static_cast<double>(l) * l - za2);
  const double u_plus = n - l - 1.0 + root_plus;
  const double u_minus = n - l + root_minus;
  // u+ - u- = (2l+1 - root+ - root-) / (root+ + root-), numerator expanded term by term.
  const double deficit = za2 / (l + 1.0 + root_plus) + za2 / (l + root_minus);
  const double du = deficit / (root_plus + root_minus);
  const double w_plus = std::sqrt(u_plus * u_plus + za2);
  const double w_minus = std::sqrt(u_minus * u_minus + za2);
  const double z2 = static_cast<double>(params.Z) * params.Z;
  return z2 * du * (u_plus + u_minus) / ((u_plus * w_minus + u_minus * w_plus) * w_plus * w_minus);
}

EnergyTable::EnergyTable(PhysicalParams params, std::vector<EnergyPair> rows)
    : params_(params), rows_(std::move(rows)) {}

const EnergyPair& EnergyTable::at(int n) const {
  if (rows_.empty() || n < n_min() || n > n_max()) {
    throw Error(ErrorCode::RangeMismatch, "energy table does not cover n=" + std::to_string(n));
  }
  return rows_[static_cast<std::size_t>(n - n_min())];
}

EnergyTable energy_table(const PhysicalParams& params, int n_min, int n_max) {
  params.validate();
  if (n_min < params.l + 1 || n_max < n_min) {
    throw Error(ErrorCode::InvalidQuantumNumbers,
                "table range [" + std::to_string(n_min) + ", " + std::to_string(n_max) + "] invalid");
  }
  std::vector<EnergyPair> rows;
  rows.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (int n = n_min; n <= n_max; ++n) {
    rows.push_back({n, dirac_energy(params, n, branch_j(params.l, Branch::plus)),
                    dirac_energy(params, n, branch_j(params.l, Branch::minus)),
                    fine_structure_splitting(params, n) / kHbar});
  }
  return EnergyTable(params, std::move(rows));
}

double time_scale_k(const PhysicalParams& params, double n_av, int k, Branch branch) {
  if (k < 1 || k > 3) {
    throw Error(ErrorCode::UnsupportedOrder, "time scale order " + std::to_string(k) + " not in 1..3");
  }
  if (n_av < params.l + 1) {
    throw Error(ErrorCode::InvalidQuantumNumbers, "n_av must be >= l+1");
  }
  const double factorial = k == 3 ? 6.0 : static_cast<double>(k);
  return kTwoPi * kHbar / std::abs(branch_energy_derivative(params, n_av, branch, k) / factorial);
}

double t_ls(const PhysicalParams& params, int n_av) {
  return kTwoPi * kHbar / std::abs(fine_structure_splitting(params, n_av));
}

double t_ls_lowest_order(const PhysicalParams& params, double n_av) {
  params.validate();
  const double l = params.l;
  const double t_cl = kTwoPi * n_av * n_av * n_av / (static_cast<double>(params.Z) * params.Z);
  return 2.0 * l * (l + 1.0) / (params.z_alpha() * params.z_alpha()) * t_cl;
}

TimeScales time_scales(const PhysicalParams& params, int n_av, Branch branch) {
  const double ls = t_ls(params, n_av);
  return {time_scale_k(params, n_av, 1, branch), time_scale_k(params, n_av, 2, branch),
          time_scale_k(params, n_av, 3, branch), ls, t_ls2(n_av, ls)};
}

}  // namespace rwp
