#include "rwp/radial.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rwp/error.hpp"
#include "rwp/parallel.hpp"

namespace rwp {

namespace {

constexpr int kMinGridPoints = 501;
constexpr int kRescaleBits = 512;

void check_points(int points) {
  if (points < kMinGridPoints || points % 2 == 0) {
    throw Error(ErrorCode::InvalidGridSpec,
                "Simpson grid needs an odd point count >= 501, got " + std::to_string(points));
  }
}

double simpson_coefficient(int i, int last) {
  if (i == 0 || i == last) return 1.0;
  return i % 2 == 1 ? 4.0 : 2.0;
}

}  // namespace

RadialGrid make_grid_extent(double r_max, int points, GridMapping mapping) {
  check_points(points);
  if (!(r_max > 0.0)) throw Error(ErrorCode::InvalidGridSpec, "r_max must be positive");
  RadialGrid grid;
  grid.mapping = mapping;
  grid.r.resize(static_cast<std::size_t>(points));
  grid.quad_w.resize(static_cast<std::size_t>(points));
  const int last = points - 1;
  const double h = 1.0 / last;
  for (int i = 0; i <= last; ++i) {
    const double s = static_cast<double>(i) / last;
    const double c = simpson_coefficient(i, last) * h / 3.0;
    const auto k = static_cast<std::size_t>(i);
    if (mapping == GridMapping::sqrt) {
      grid.r[k] = r_max * s * s;
      grid.quad_w[k] = c * 2.0 * r_max * s;
    } else {
      grid.r[k] = r_max * s;
      grid.quad_w[k] = c * r_max;
    }
  }
  grid.r.back() = r_max;
  return grid;
}

RadialGrid make_grid(const PhysicalParams& params, int n_max, int points, GridMapping mapping) {
  params.validate();
  if (n_max < params.l + 1) {
    throw Error(ErrorCode::InvalidGridSpec, "n_max must be >= l+1");
  }
  const double r_max = kGridExtentFactor * n_max * static_cast<double>(n_max) / params.Z;
  return make_grid_extent(r_max, points, mapping);
}

RadialGrid make_display_axis(double r_max, int points) {
  if (points < 2 || !(r_max > 0.0)) {
    throw Error(ErrorCode::InvalidGridSpec, "display axis needs >= 2 points and r_max > 0");
  }
  RadialGrid grid;
  grid.mapping = GridMapping::uniform;
  const int last = points - 1;
  const double h = r_max / last;
  grid.r.resize(static_cast<std::size_t>(points));
  grid.quad_w.assign(static_cast<std::size_t>(points), h);
  for (int i = 0; i <= last; ++i) grid.r[static_cast<std::size_t>(i)] = h * i;
  grid.r.back() = r_max;
  grid.quad_w.front() = grid.quad_w.back() = 0.5 * h;
  return grid;
}

double radial_eval(double Z, int n, int l, double r) {
  if (l < 0 || n < l + 1) {
    throw Error(ErrorCode::InvalidQuantumNumbers,
                "need n >= l+1 >= 1, got n=" + std::to_string(n) + " l=" + std::to_string(l));
  }
  if (!(Z > 0.0) || r < 0.0) {
    throw Error(ErrorCode::InvalidQuantumNumbers, "need Z > 0 and r >= 0");
  }
  const double rho = 2.0 * Z * r / n;
  if (rho == 0.0 && l > 0) return 0.0;

  const int degree = n - l - 1;
  const double order = 2.0 * l + 1.0;

  // log of the normalization sqrt((2Z/n)^3 (n-l-1)! / (2n (n+l)!)); the factorial ratio
  // lgamma(n+l+1) - lgamma(n-l) is summed as a product of 2l+1 consecutive integers.
  double log_ratio = 0.0;
  for (int i = n - l; i <= n + l; ++i) log_ratio += std::log(static_cast<double>(i));
  double log_weight = 0.5 * (3.0 * std::log(2.0 * Z / n) - std::log(2.0 * n) - log_ratio) - 0.5 * rho;
  if (l > 0) log_weight += l * std::log(rho);

  // Weighted Laguerre recurrence y_k = weight * L_k^(2l+1)(rho), with the value kept as
  // mantissa * 2^exponent so that neither the weight nor L_k leaves double range.
  long exponent = std::lround(std::floor(log_weight / std::numbers::ln2));
  const double mantissa = std::exp(log_weight - exponent * std::numbers::ln2);
  double prev = mantissa;
  double curr = mantissa * (1.0 + order - rho);
  if (degree == 0) return std::ldexp(prev, static_cast<int>(exponent));

  const double big = std::ldexp(1.0, kRescaleBits);
  const double small = std::ldexp(1.0, -kRescaleBits);
  for (int k = 1; k < degree; ++k) {
    const double next = ((2.0 * k + 1.0 + order - rho) * curr - (k + order) * prev) / (k + 1.0);
    prev = curr;
    curr = next;
    const double mag = std::abs(curr);
    if (mag > big) {
      prev = std::ldexp(prev, -kRescaleBits);
      curr = std::ldexp(curr, -kRescaleBits);
      exponent += kRescaleBits;
    } else if (mag != 0.0 && mag < small && std::abs(prev) < small) {
      prev = std::ldexp(prev, kRescaleBits);
      curr = std::ldexp(curr, kRescaleBits);
      exponent -= kRescaleBits;
    }
  }
  if (exponent > 4096) exponent = 4096;
  if (exponent < -4096) exponent = -4096;
  return std::ldexp(curr, static_cast<int>(exponent));
}

RadialTable::RadialTable(int n_min, int n_max, int l, double Z, std::size_t points,
                         std::vector<double> values)
    : n_min_(n_min), n_max_(n_max), l_(l), Z_(Z), points_(points), values_(std::move(values)) {}

std::span<const double> RadialTable::row(int n) const {
  if (n < n_min_ || n > n_max_) {
    throw Error(ErrorCode::RangeMismatch, "radial table does not cover n=" + std::to_string(n));
  }
  return {values_.data() + static_cast<std::size_t>(n - n_min_) * points_, points_};
}

RadialTable radial_table(const PhysicalParams& params, int n_min, int n_max, const RadialGrid& grid) {
  params.validate();
  if (n_min < params.l + 1 || n_max < n_min) {
    throw Error(ErrorCode::InvalidQuantumNumbers,
                "table range [" + std::to_string(n_min) + ", " + std::to_string(n_max) + "] invalid");
  }
  const std::size_t points = grid.size();
  const auto rows = static_cast<std::size_t>(n_max - n_min + 1);
  std::vector<double> values(rows * points);
  parallel_for(rows, [&](std::size_t k) {
    const int n = n_min + static_cast<int>(k);
    double* out = values.data() + k * points;
    for (std::size_t i = 0; i < points; ++i) out[i] = radial_eval(params.Z, n, params.l, grid.r[i]);
  });
  return RadialTable(n_min, n_max, params.l, params.Z, points, std::move(values));
}

double inner_product(std::span<const double> f, std::span<const double> g, const RadialGrid& grid) {
  if (f.size() != grid.size() || g.size() != grid.size()) {
    throw Error(ErrorCode::LengthMismatch, "sample arrays must match the grid length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += grid.quad_w[i] * f[i] * g[i] * grid.r[i] * grid.r[i];
  return sum;
}

double integrate(std::span<const double> f, const RadialGrid& grid) {
  if (f.size() != grid.size()) {
    throw Error(ErrorCode::LengthMismatch, "sample array must match the grid length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += grid.quad_w[i] * f[i];
  return sum;
}

}  // namespace rwp
