#pragma once

#include <vector>

namespace rwp {

// Hartree atomic units throughout: hbar = m_e = e = 1, c = 1/alpha.
inline constexpr double kFineStructure = 7.2973525693e-3;  // CODATA 2018
inline constexpr double kAtomicTimeSeconds = 2.418884326e-17;
inline constexpr double kHbar = 1.0;

struct PhysicalParams {
  int Z = 1;
  double alpha = kFineStructure;
  int l = 1;

  double z_alpha() const noexcept { return Z * alpha; }
  // Throws SupercriticalCharge for Z*alpha >= 1, InvalidQuantumNumbers for Z < 1 or l < 1.
  void validate() const;
};

// Total angular momentum j = twice / 2.
struct HalfInteger {
  int twice;
  constexpr double value() const noexcept { return 0.5 * twice; }
  friend constexpr bool operator==(HalfInteger, HalfInteger) = default;
};

// plus: j = l + 1/2, minus: j = l - 1/2.
enum class Branch { plus, minus };

constexpr HalfInteger branch_j(int l, Branch branch) noexcept {
  return HalfInteger{branch == Branch::plus ? 2 * l + 1 : 2 * l - 1};
}

// Reduced Dirac energy E - m0 c^2 in hartree for the level (n, l, j).
double dirac_energy(const PhysicalParams& params, int n, HalfInteger j);

// Same level formula with n treated as a continuous variable on one branch.
double branch_energy(const PhysicalParams& params, double n, Branch branch);

// k-th derivative (k = 1..3) of branch_energy with respect to n.
double branch_energy_derivative(const PhysicalParams& params, double n, Branch branch, int k);

// E+ - E- at fixed (n, l), evaluated without subtracting the two energies.
double fine_structure_splitting(const PhysicalParams& params, int n);

struct EnergyPair {
  int n;
  double eps_plus;
  double eps_minus;
  double omega;  // (eps_plus - eps_minus) / hbar
};

class EnergyTable {
 public:
  EnergyTable() = default;
  EnergyTable(PhysicalParams params, std::vector<EnergyPair> rows);

  const PhysicalParams& params() const noexcept { return params_; }
  const std::vector<EnergyPair>& rows() const noexcept { return rows_; }
  int n_min() const noexcept { return rows_.empty() ? 0 : rows_.front().n; }
  int n_max() const noexcept { return rows_.empty() ? -1 : rows_.back().n; }
  bool covers(int n_lo, int n_hi) const noexcept { return n_lo >= n_min() && n_hi <= n_max(); }
  const EnergyPair& at(int n) const;

 private:
  PhysicalParams params_;
  std::vector<EnergyPair> rows_;
};

EnergyTable energy_table(const PhysicalParams& params, int n_min, int n_max);

// T_k = 2 pi hbar / |E^(k)(n_av) / k!|, for k = 1 (Kepler), 2 (revival), 3 (super-revival).
double time_scale_k(const PhysicalParams& params, double n_av, int k, Branch branch = Branch::plus);

// Spin-orbit period 2 pi hbar / |E+ - E-| at n_av.
double t_ls(const PhysicalParams& params, int n_av);

// Lowest-order estimate 2 l (l+1) / (Z alpha)^2 * T_cl with the nonrelativistic T_cl = 2 pi n^3 / Z^2.
double t_ls_lowest_order(const PhysicalParams& params, double n_av);

// Spin-revival scale (2/3) n_av T_ls.
constexpr double t_ls2(double n_av, double t_ls_value) noexcept {
  return 2.0 / 3.0 * n_av * t_ls_value;
}

struct TimeScales {
  double t_cl;
  double t_rev;
  double t_super;
  double t_ls;
  double t_ls2;

  TimeScales in_seconds() const noexcept {
    return {t_cl * kAtomicTimeSeconds, t_rev * kAtomicTimeSeconds, t_super * kAtomicTimeSeconds,
            t_ls * kAtomicTimeSeconds, t_ls2 * kAtomicTimeSeconds};
  }
};

// All scales in atomic time units.
TimeScales time_scales(const PhysicalParams& params, int n_av, Branch branch = Branch::plus);

}  // namespace rwp
