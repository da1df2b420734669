// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rwp/rwp.hpp"

using namespace rwp;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kHalf = std::sqrt(0.5);

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

struct Scenario {
  PhysicalParams params;
  Packet packet;
  EnergyTable energies;
  double t_ls;
  double t_cl;
};

Scenario scenario(double a, double b, double sigma, int Z = 92, int n_av = 80) {
  const PhysicalParams params{Z, kFineStructure, 1};
  PacketSpec spec;
  spec.n_av = n_av;
  spec.sigma = sigma;
  spec.a = a;
  spec.b = b;
  Packet packet = build_packet(spec, 1);
  EnergyTable energies = energy_table(params, packet.n_min(), packet.n_max());
  return {params, std::move(packet), std::move(energies), t_ls(params, n_av), time_scale_k(params, n_av, 1)};
}

std::vector<double> uniform_times(double t_end, double dt) {
  const auto count = static_cast<std::size_t>(std::ceil(t_end / dt)) + 1;
  std::vector<double> t(count);
  for (std::size_t i = 0; i < count; ++i) t[i] = t_end * static_cast<double>(i) / static_cast<double>(count - 1);
  return t;
}

// ---------------------------------------------------------------------------

Outcome definitional_time_scale() {
  double worst = 0.0;
  for (int Z : {1, 47, 92}) {
    for (int n : {20, 80, 150}) {
      const PhysicalParams p{Z, kFineStructure, 1};
      const double delta = static_cast<double>(oracle::splitting(Z, kFineStructure, n, 1));
      worst = std::max(worst, std::abs(t_ls(p, n) * std::abs(delta) / (kTwoPi * kHbar) - 1.0));
    }
  }
  return {worst < 1e-12, fmt("max |t_ls*dE/(2 pi hbar) - 1| = %.2e (tol 1e-12)", worst)};
}

Outcome lowest_order_form() {
  auto ratio = [](int Z) {
    const PhysicalParams p{Z, kFineStructure, 1};
    const double za = Z * kFineStructure;
    const double expected = 2.0 * 1 * 2 / (za * za);
    return std::abs(t_ls(p, 80) / time_scale_k(p, 80, 1) / expected - 1.0);
  };
  const double h = ratio(1), u = ratio(92);
  return {h < 1e-3 && u < 0.25, fmt("Z=1 dev %.2e (tol 1e-3); Z=92 dev %.3f (tol 0.25)", h, u)};
}

Outcome time_scale_ordering() {
  const PhysicalParams p{92, kFineStructure, 1};
  bool shorter_above_60 = true;
  std::vector<int> crossings;
  bool prev_shorter = false;
  for (int n = 20; n <= 150; ++n) {
    const bool shorter = t_ls(p, n) < time_scale_k(p, n, 2);
    if (n > 60 && !shorter) shorter_above_60 = false;
    if (n > 20 && shorter != prev_shorter) crossings.push_back(n);
    prev_shorter = shorter;
  }
  const bool crossover_ok = !crossings.empty() && std::all_of(crossings.begin(), crossings.end(),
                                                              [](int n) { return n >= 40 && n <= 60; });
  const double ratio20 = t_ls(p, 20) / time_scale_k(p, 20, 2);
  int below_scan = 0;
  for (int n = 2; n < 20 && below_scan == 0; ++n) {
    if (t_ls(p, n) < time_scale_k(p, n, 2)) below_scan = n;
  }
  std::string where = crossings.empty() ? "none in 20..150, T_ls < T_rev from n=" + std::to_string(below_scan)
                                        : std::to_string(crossings.front());
  return {shorter_above_60 && crossover_ok,
          fmt("T_ls<T_rev for n>60: %s; crossover: %s (need [40,60]); T_ls/T_rev at n=20 = %.3f",
              shorter_above_60 ? "yes" : "no", where.c_str(), ratio20)};
}

Outcome unitarity() {
  const Scenario s = scenario(kHalf, kHalf, 2.0);
  const RadialGrid grid = make_grid(s.params, s.packet.n_max());
  const RadialTable table = radial_table(s.params, s.packet.n_min(), s.packet.n_max(), grid);
  double worst_norm = 0.0, worst_n2 = 0.0;
  const double lo = std::log(1e-3 * s.t_ls), hi = std::log(30.0 * s.t_ls);
  for (int i = 0; i < 50; ++i) {
    const double t = std::exp(lo + (hi - lo) * i / 49.0);
    const DensitySnapshot d = densities(amplitudes_at(s.packet, s.energies, t), table, grid);
    const double n1 = integrate(d.rho1, grid), n2 = integrate(d.rho2, grid);
    worst_norm = std::max(worst_norm, std::abs(n1 + n2 - 1.0));
    worst_n2 = std::max(worst_n2, std::abs(n2 - component_norms(s.packet, s.energies, t, 1).n2));
  }
  return {worst_norm < 1e-6 && worst_n2 < 1e-6,
          fmt("max |norm-1| = %.2e, max |N2_quad - N2_analytic| = %.2e (tol 1e-6)", worst_norm, worst_n2)};
}

Outcome orthonormality() {
  const PhysicalParams p{92, kFineStructure, 1};
  const RadialGrid grid = make_grid(p, 90);
  const RadialTable table = radial_table(p, 70, 90, grid);
  double worst = 0.0;
  for (int n = 70; n <= 90; ++n) {
    for (int m = 70; m <= 90; ++m) {
      worst = std::max(worst, std::abs(inner_product(table.row(n), table.row(m), grid) - (n == m ? 1.0 : 0.0)));
    }
  }
  return {worst < 1e-8, fmt("max |G - I| = %.2e (tol 1e-8)", worst)};
}

Outcome spin_plateau() {
  const Scenario s = scenario(kHalf, kHalf, 2.0);
  const auto times = uniform_times(35.0 * s.t_ls, s.t_ls / 200.0);
  const ObservableSeries series = observable_series(s.packet, s.energies, times);
  double sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double x = series.t[i] / s.t_ls;
    if (x > 5.0 && x < 20.0) {
      sum += series.slen[i];
      ++count;
    }
  }
  const double mean = sum / count;
  return {std::abs(mean - 0.55) <= 0.05, fmt("mean |<sigma>| over (5,20) T_ls = %.4f (target 0.55 +- 0.05)", mean)};
}

Outcome spin_revival() {
  const Scenario s = scenario(kHalf, kHalf, 2.0);
  const auto times = uniform_times(35.0 * s.t_ls, s.t_ls / 200.0);
  const ObservableSeries series = observable_series(s.packet, s.energies, times);
  const double lo = 25.7 * s.t_ls, hi = 27.7 * s.t_ls;
  auto in_window = [&](const std::vector<Peak>& peaks) {
    std::vector<Peak> out;
    for (const auto& p : peaks) {
      if (p.t >= lo && p.t <= hi) out.push_back(p);
    }
    return out;
  };
  const auto spin = in_window(detect_revivals(series, 0.0, times.back(), PeakSignal::slen));
  const auto auto_corr = in_window(detect_revivals(series, 0.0, times.back(), PeakSignal::asq));
  if (spin.empty()) return {false, "no |<sigma>| peak in 26.7 +- 1 T_ls"};
  const auto best = *std::max_element(spin.begin(), spin.end(), [](auto& a, auto& b) { return a.value < b.value; });
  const double best_asq = auto_corr.empty() ? 0.0
      : std::max_element(auto_corr.begin(), auto_corr.end(), [](auto& a, auto& b) { return a.value < b.value; })->value;
  return {!auto_corr.empty(),
          fmt("|<sigma>| peak %.4f at %.3f T_ls; %zu |A|^2 peaks in window (max %.3f)", best.value,
              best.t / s.t_ls, auto_corr.size(), best_asq)};
}

Outcome component_transfer() {
  const Scenario s = scenario(0.0, 1.0, 2.0);
  const auto times = uniform_times(2.0 * s.t_ls, s.t_ls / 200.0);
  const ObservableSeries series = observable_series(s.packet, s.energies, times);
  std::vector<double> negated(series.N2.size());
  std::transform(series.N2.begin(), series.N2.end(), negated.begin(), [](double v) { return -v; });
  const auto minima = detect_peaks(series.t, negated, 0.0, times.back(), 0.1);
  if (minima.empty()) return {false, "no N2 minimum found in (0, 2 T_ls)"};
  const double t_min = minima.front().t / s.t_ls;
  const double n2_min = -minima.front().value;
  const bool ok = std::abs(t_min / 0.5 - 1.0) < 0.10 && n2_min >= 1.0 / 9.0 - 0.02 && n2_min <= 1.0 / 9.0 + 0.15;
  return {ok, fmt("first N2 minimum %.4f at %.4f T_ls (need 0.5 +- 10%%, N2 in [%.4f, %.4f])", n2_min, t_min,
                  1.0 / 9.0 - 0.02, 1.0 / 9.0 + 0.15)};
}

Outcome short_time_revival() {
  double peak_value[2] = {0, 0};
  double peak_time[2] = {0, 0};
  for (int k = 0; k < 2; ++k) {
    const Scenario s = scenario(0.0, 1.0, k == 0 ? 1.0 : 2.0);
    const auto times = uniform_times(3.0 * s.t_cl, s.t_cl / 50.0);
    const ObservableSeries series = observable_series(s.packet, s.energies, times);
    const auto peaks = detect_revivals(series, 0.5 * s.t_cl, times.back());
    if (peaks.empty()) return {false, "no |A|^2 peak after 0.5 T_cl"};
    peak_value[k] = peaks.front().value;
    peak_time[k] = peaks.front().t / s.t_cl;
  }
  const bool ok = std::abs(peak_time[0] - 1.0) < 0.05 && std::abs(peak_time[1] - 1.0) < 0.05 &&
                  peak_value[0] > peak_value[1];
  return {ok, fmt("sigma=1: %.4f at %.4f T_cl; sigma=2: %.4f at %.4f T_cl", peak_value[0], peak_time[0],
                  peak_value[1], peak_time[1])};
}

Outcome property_suites() {
  std::vector<std::string> failures;
  std::mt19937_64 rng(42);

  // Per-n unitarity.
  {
    const Scenario s = scenario(0.6, 0.8, 2.0);
    std::uniform_real_distribution<double> dist(0.0, 35.0 * s.t_ls);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto amps = amplitudes_at(s.packet, s.energies, dist(rng));
      for (std::size_t k = 0; k < amps.size(); ++k) {
        const double w2 = s.packet.weights()[k] * s.packet.weights()[k];
        worst = std::max(worst, std::abs(std::norm(amps.c1[k]) + std::norm(amps.d1[k]) + std::norm(amps.c2[k]) - w2));
      }
    }
    if (!(worst < 1e-13)) failures.push_back(fmt("unitarity %.2e", worst));
  }
  // Phase-shift invariance.
  {
    const Scenario s = scenario(kHalf, kHalf, 2.0);
    std::vector<EnergyPair> rows = s.energies.rows();
    for (auto& r : rows) {
      r.eps_plus += 0.5;
      r.eps_minus += 0.5;
    }
    const EnergyTable shifted(s.params, rows);
    const RadialGrid grid = make_grid(s.params, s.packet.n_max(), 1001);
    const RadialTable table = radial_table(s.params, s.packet.n_min(), s.packet.n_max(), grid);
    double worst = 0.0;
    std::uniform_real_distribution<double> dist(0.0, 30.0 * s.t_ls);
    for (int i = 0; i < 20; ++i) {
      const double t = dist(rng);
      const auto x = amplitudes_at(s.packet, s.energies, t), y = amplitudes_at(s.packet, shifted, t);
      const auto sx = spin_expectations(x, 1), sy = spin_expectations(y, 1);
      worst = std::max({worst, std::abs(sx.x - sy.x), std::abs(sx.y - sy.y), std::abs(sx.z - sy.z),
                        std::abs(std::norm(autocorrelation(s.packet, s.energies, t)) -
                                 std::norm(autocorrelation(s.packet, shifted, t))),
                        std::abs(component_norms(s.packet, s.energies, t, 1).n2 -
                                 component_norms(s.packet, shifted, t, 1).n2)});
      const auto dx = densities(x, table, grid), dy = densities(y, table, grid);
      for (std::size_t j = 0; j < grid.size(); ++j) {
        worst = std::max({worst, std::abs(dx.rho1[j] - dy.rho1[j]), std::abs(dx.rho2[j] - dy.rho2[j])});
      }
    }
    if (!(worst < 1e-12)) failures.push_back(fmt("phase shift %.2e", worst));
  }
  // Stationarity of spin-up.
  {
    const Scenario s = scenario(1.0, 0.0, 2.0);
    std::uniform_real_distribution<double> dist(0.0, 35.0 * s.t_ls);
    for (int i = 0; i < 50; ++i) {
      const double t = dist(rng);
      const auto spin = spin_expectations(amplitudes_at(s.packet, s.energies, t), 1);
      const auto n = component_norms(s.packet, s.energies, t, 1);
      if (spin.x != 0.0 || spin.y != 0.0 || std::abs(spin.z - 1.0) > 1e-14 || n.n1 != 1.0) {
        failures.push_back("stationarity");
        break;
      }
    }
  }
  // t = 0 spinor expectations.
  for (auto [a, b] : {std::pair{0.6, 0.8}, std::pair{kHalf, kHalf}, std::pair{0.0, 1.0}, std::pair{0.28, -0.96}}) {
    const Scenario s = scenario(a, b, 2.0);
    const auto spin = spin_expectations(amplitudes_at(s.packet, s.energies, 0.0), 1);
    const double dev = std::max({std::abs(spin.x - 2 * a * b), std::abs(spin.y), std::abs(spin.z - (a * a - b * b))});
    if (dev > 4e-16) failures.push_back(fmt("t=0 spinor %.2e", dev));
  }
  // Closed-form spin agreement at l = 1.
  {
    const Scenario s = scenario(kHalf, kHalf, 2.0);
    std::vector<double> omega;
    for (const auto& r : s.energies.rows()) omega.push_back(r.omega);
    double worst = 0.0;
    for (int i = 0; i <= 700; ++i) {
      const double t = 35.0 * s.t_ls * i / 700;
      const auto spin = spin_expectations(amplitudes_at(s.packet, s.energies, t), 1);
      const auto ref = oracle::closed_form_spin(s.packet.weights(), omega, kHalf, kHalf, 1, t);
      worst = std::max({worst, std::abs(spin.x - ref.sx), std::abs(spin.y - ref.sy), std::abs(spin.z - ref.sz)});
    }
    if (!(worst < 1e-12)) failures.push_back(fmt("closed form %.2e", worst));
  }
  if (failures.empty()) return {true, "unitarity, phase shift, stationarity, t=0 spinor, closed forms all within tolerance"};
  std::string joined;
  for (const auto& f : failures) joined += (joined.empty() ? "" : "; ") + f;
  return {false, joined};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "definitional time scale", 1.0, definitional_time_scale},
      {2, "lowest-order T_ls/T_cl", 1.0, lowest_order_form},
      {3, "time-scale ordering (Z=92 scan)", 5.0, time_scale_ordering},
      {4, "unitarity under quadrature", 60.0, unitarity},
      {5, "orthonormality gate", 10.0, orthonormality},
      {6, "spin plateau", 30.0, spin_plateau},
      {7, "spin revival", 30.0, spin_revival},
      {8, "component transfer", 30.0, component_transfer},
      {9, "short-time revival", 30.0, short_time_revival},
      {10, "property suites", 60.0, property_suites},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed < c.budget_s;
    const bool pass = outcome.pass && in_time;
    if (!pass) ++failed;
    std::printf("[%s] %2d %-34s %s [%.2f s / %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.title,
                outcome.detail.c_str(), elapsed, c.budget_s, in_time ? "" : ", over budget");
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
