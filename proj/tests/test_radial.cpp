#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rwp/error.hpp"
#include "rwp/radial.hpp"

using namespace rwp;

namespace {

std::vector<double> sample(double Z, int n, int l, const RadialGrid& grid) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = radial_eval(Z, n, l, grid.r[i]);
  return v;
}

// Hydrogen radial functions in closed form, straight from the Laguerre polynomials.
double r10(double r) { return 2.0 * std::exp(-r); }
double r21(double r) { return r * std::exp(-r / 2.0) / (2.0 * std::sqrt(6.0)); }
double r31(double r) {
  return 8.0 / (27.0 * std::sqrt(6.0)) * r * (1.0 - r / 6.0) * std::exp(-r / 3.0);
}

}  // namespace

TEST_CASE("make_grid extent and quadrature exactness") {
  const RadialGrid g1 = make_grid({1, kFineStructure, 1}, 100, 4001);
  CHECK(g1.r_max() == doctest::Approx(25000.0));
  const RadialGrid g92 = make_grid({92, kFineStructure, 1}, 100, 4001);
  CHECK(g92.r_max() == doctest::Approx(271.739130434).epsilon(1e-9));

  for (GridMapping m : {GridMapping::sqrt, GridMapping::uniform}) {
    const RadialGrid g = make_grid({92, kFineStructure, 1}, 100, 4001, m);
    CHECK(g.r.front() == 0.0);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK_MESSAGE(g.r[i] > g.r[i - 1], "not increasing");
    double w = 0.0;
    for (double q : g.quad_w) w += q;
    CHECK(w == doctest::Approx(g.r_max()).epsilon(1e-13));
    const std::vector<double> ones(g.size(), 1.0);
    const double rmax = g.r_max();
    CHECK(std::abs(inner_product(ones, ones, g) / (rmax * rmax * rmax / 3.0) - 1.0) < 1e-12);
  }
}

TEST_CASE("make_grid rejects even or short point counts") {
  for (int points : {4000, 499, 2}) {
    try {
      make_grid({1, kFineStructure, 1}, 10, points);
      FAIL("accepted invalid point count");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidGridSpec);
    }
  }
  CHECK_NOTHROW(make_grid({1, kFineStructure, 1}, 10, 501));
}

TEST_CASE("radial_eval closed forms") {
  CHECK(radial_eval(1, 1, 0, 1.0) == doctest::Approx(2.0 / std::numbers::e).epsilon(1e-14));
  CHECK(radial_eval(1, 1, 0, 1.0) == doctest::Approx(0.735759).epsilon(1e-6));
  CHECK(radial_eval(1, 2, 1, 2.0) == doctest::Approx(std::exp(-1.0) / std::sqrt(6.0)).epsilon(1e-14));
  for (double r : {0.0, 0.3, 1.0, 4.0, 17.0, 60.0}) {
    CHECK(radial_eval(1, 1, 0, r) == doctest::Approx(r10(r)).epsilon(1e-13));
    CHECK(radial_eval(1, 2, 1, r) == doctest::Approx(r21(r)).epsilon(1e-13));
    CHECK(radial_eval(1, 3, 1, r) == doctest::Approx(r31(r)).epsilon(1e-12));
  }
  CHECK(radial_eval(1, 80, 1, 0.0) == 0.0);
}

TEST_CASE("radial_eval errors") {
  for (auto [n, l] : {std::pair{1, 1}, std::pair{3, 3}, std::pair{2, -1}}) {
    try {
      radial_eval(1, n, l, 1.0);
      FAIL("accepted n < l+1");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidQuantumNumbers);
    }
  }
  CHECK_THROWS_AS(radial_eval(1, 2, 1, -1.0), Error);
}

TEST_CASE("scaling law R(r; Z) = Z^(3/2) R(Z r; 1)") {
  for (double Z : {2.0, 47.0, 92.0}) {
    for (int n : {2, 15, 80}) {
      for (double r : {0.01, 0.5, 3.0, 40.0}) {
        const double lhs = radial_eval(Z, n, 1, r);
        const double rhs = std::pow(Z, 1.5) * radial_eval(1.0, n, 1, Z * r);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11).scale(1e-300));
      }
    }
  }
}

TEST_CASE("node count is n - l - 1") {
  for (int n : {2, 5, 12, 40, 80}) {
    const RadialGrid g = make_grid_extent(2.5 * n * n, 20001, GridMapping::sqrt);
    int changes = 0;
    double last = 0.0;
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
      const double v = radial_eval(1, n, 1, g.r[i]);
      if (v != 0.0 && last != 0.0 && (v > 0.0) != (last > 0.0)) ++changes;
      if (v != 0.0) last = v;
    }
    CAPTURE(n);
    CHECK(changes == n - 2);
  }
}

TEST_CASE("inner_product normalization, orthogonality and length checks") {
  const RadialGrid g = make_grid({1, kFineStructure, 1}, 10, 4001);
  const auto s10 = sample(1, 1, 0, g);
  const auto s21 = sample(1, 2, 1, g);
  const auto s31 = sample(1, 3, 1, g);
  CHECK(inner_product(s10, s10, g) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(inner_product(s21, s31, g)) < 1e-10);
  const std::vector<double> short_row(g.size() - 1, 1.0);
  try {
    inner_product(short_row, s10, g);
    FAIL("length mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LengthMismatch);
  }
}

TEST_CASE("radial_table is orthonormal on the default grid") {
  for (int Z : {1, 92}) {
    const PhysicalParams p{Z, kFineStructure, 1};
    const RadialGrid g = make_grid(p, 90);
    const RadialTable t = radial_table(p, 70, 90, g);
    double worst = 0.0;
    for (int n = 70; n <= 90; ++n) {
      for (int m = n; m <= 90; ++m) {
        const double target = n == m ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(inner_product(t.row(n), t.row(m), g) - target));
      }
    }
    CAPTURE(Z);
    CHECK(worst < 1e-8);
  }
  const PhysicalParams p{92, kFineStructure, 1};
  const RadialGrid g = make_grid(p, 80);
  const RadialTable single = radial_table(p, 80, 80, g);
  CHECK(inner_product(single.row(80), single.row(80), g) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(single.row(81), Error);
}

TEST_CASE("uniform 4001-point grid is too coarse for the 1e-8 gate at n ~ 80") {
  const PhysicalParams p{92, kFineStructure, 1};
  const RadialGrid g = make_grid(p, 90, 4001, GridMapping::uniform);
  const RadialTable t = radial_table(p, 80, 81, g);
  CHECK(std::abs(inner_product(t.row(80), t.row(80), g) - 1.0) > 1e-8);
}

TEST_CASE("no overflow at n = 200") {
  const PhysicalParams p{1, kFineStructure, 1};
  const RadialGrid g = make_grid(p, 200);
  const auto row = sample(1, 200, 1, g);
  for (double v : row) REQUIRE(std::isfinite(v));
  CHECK(inner_product(row, row, g) == doctest::Approx(1.0).epsilon(1e-8));
  const RadialGrid g92 = make_grid({92, kFineStructure, 1}, 200);
  const auto row92 = sample(92, 199, 1, g92);
  CHECK(inner_product(row92, row92, g92) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("table construction does not depend on the worker count") {
  const PhysicalParams p{92, kFineStructure, 1};
  const RadialGrid g = make_grid(p, 90, 1001);
  setenv("RWP_THREADS", "1", 1);
  const RadialTable serial = radial_table(p, 70, 90, g);
  setenv("RWP_THREADS", "4", 1);
  const RadialTable threaded = radial_table(p, 70, 90, g);
  unsetenv("RWP_THREADS");
  CHECK(serial.values() == threaded.values());
}
