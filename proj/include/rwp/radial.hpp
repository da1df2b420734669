#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rwp/physics.hpp"

namespace rwp {

// sqrt: r = r_max s^2 with Simpson in s (resolves the Coulomb oscillations
// near the origin); uniform: Simpson directly in r.
enum class GridMapping { sqrt, uniform };

inline constexpr int kDefaultGridPoints = 4001;
inline constexpr double kGridExtentFactor = 2.5;

struct RadialGrid {
  std::vector<double> r;       // bohr, ascending, r[0] = 0
  std::vector<double> quad_w;  // weights for integrals over dr
  GridMapping mapping = GridMapping::sqrt;

  std::size_t size() const noexcept { return r.size(); }
  double r_max() const noexcept { return r.empty() ? 0.0 : r.back(); }
};

// r_max = 2.5 n_max^2 / Z. points must be odd and >= 501.
RadialGrid make_grid(const PhysicalParams& params, int n_max, int points = kDefaultGridPoints,
                     GridMapping mapping = GridMapping::sqrt);

// Same quadrature grid with an explicit extent.
RadialGrid make_grid_extent(double r_max, int points, GridMapping mapping = GridMapping::sqrt);

// Uniformly spaced evaluation axis with trapezoid weights, any size >= 2.
// Meant for image output, not for accurate quadrature.
RadialGrid make_display_axis(double r_max, int points);

// Normalized bound hydrogenic radial function R_{n,l}(r), bohr^(-3/2).
double radial_eval(double Z, int n, int l, double r);

class RadialTable {
 public:
  RadialTable(int n_min, int n_max, int l, double Z, std::size_t points, std::vector<double> values);

  int n_min() const noexcept { return n_min_; }
  int n_max() const noexcept { return n_max_; }
  int l() const noexcept { return l_; }
  double Z() const noexcept { return Z_; }
  std::size_t points() const noexcept { return points_; }
  bool covers(int n_lo, int n_hi) const noexcept { return n_lo >= n_min_ && n_hi <= n_max_; }

  // Samples of R_n on the grid.
  std::span<const double> row(int n) const;
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  int n_min_;
  int n_max_;
  int l_;
  double Z_;
  std::size_t points_;
  std::vector<double> values_;  // row-major (n, grid point)
};

RadialTable radial_table(const PhysicalParams& params, int n_min, int n_max, const RadialGrid& grid);

// Integral of f(r) g(r) r^2 dr.
double inner_product(std::span<const double> f, std::span<const double> g, const RadialGrid& grid);

// Integral of f(r) dr.
double integrate(std::span<const double> f, const RadialGrid& grid);

}  // namespace rwp
