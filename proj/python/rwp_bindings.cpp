#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <span>

#include "rwp/rwp.hpp"

namespace py = pybind11;
using namespace rwp;

namespace {

using InArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
  return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<double> to_matrix(const std::vector<double>& v, std::size_t rows, std::size_t cols) {
  py::array_t<double> out({static_cast<py::ssize_t>(rows), static_cast<py::ssize_t>(cols)});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::span<const double> as_span(const InArray& a) {
  if (a.ndim() != 1) throw py::value_error("expected a one-dimensional array");
  return {a.data(), static_cast<std::size_t>(a.size())};
}

HalfInteger half_integer(double j) {
  const double twice = 2.0 * j;
  const long rounded = std::lround(twice);
  if (std::abs(twice - static_cast<double>(rounded)) > 1e-12 || rounded % 2 == 0) {
    throw Error(ErrorCode::InvalidQuantumNumbers, "j must be a positive half-odd integer");
  }
  return HalfInteger{static_cast<int>(rounded)};
}

py::list peaks_to_list(const std::vector<Peak>& peaks) {
  py::list out;
  for (const auto& p : peaks) out.append(py::make_tuple(p.t, p.value));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Relativistic Rydberg wave packets: energies, radial functions, observables";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.attr("FINE_STRUCTURE") = kFineStructure;
  m.attr("ATOMIC_TIME_SECONDS") = kAtomicTimeSeconds;

  py::class_<PhysicalParams>(m, "PhysicalParams")
      .def(py::init([](int Z, double alpha, int l) {
             PhysicalParams p{Z, alpha, l};
             p.validate();
             return p;
           }),
           py::arg("Z"), py::arg("alpha") = kFineStructure, py::arg("l") = 1)
      .def_readonly("Z", &PhysicalParams::Z)
      .def_readonly("alpha", &PhysicalParams::alpha)
      .def_readonly("l", &PhysicalParams::l)
      .def_property_readonly("z_alpha", &PhysicalParams::z_alpha)
      .def("__repr__", [](const PhysicalParams& p) {
        return "PhysicalParams(Z=" + std::to_string(p.Z) + ", l=" + std::to_string(p.l) + ")";
      });

  py::enum_<Branch>(m, "Branch").value("plus", Branch::plus).value("minus", Branch::minus);
  py::enum_<GridMapping>(m, "GridMapping").value("sqrt", GridMapping::sqrt).value("uniform", GridMapping::uniform);
  py::enum_<PeakSignal>(m, "PeakSignal").value("asq", PeakSignal::asq).value("slen", PeakSignal::slen);

  m.def(
      "dirac_energy", [](const PhysicalParams& p, int n, double j) { return dirac_energy(p, n, half_integer(j)); },
      py::arg("params"), py::arg("n"), py::arg("j"));
  m.def("branch_energy", &branch_energy, py::arg("params"), py::arg("n"), py::arg("branch"));
  m.def("branch_energy_derivative", &branch_energy_derivative, py::arg("params"), py::arg("n"), py::arg("branch"),
        py::arg("k"));
  m.def("fine_structure_splitting", &fine_structure_splitting, py::arg("params"), py::arg("n"));
  m.def("time_scale_k", &time_scale_k, py::arg("params"), py::arg("n_av"), py::arg("k"),
        py::arg("branch") = Branch::plus);
  m.def("t_ls", &t_ls, py::arg("params"), py::arg("n_av"));
  m.def("t_ls_lowest_order", &t_ls_lowest_order, py::arg("params"), py::arg("n_av"));

  py::class_<TimeScales>(m, "TimeScales")
      .def_readonly("t_cl", &TimeScales::t_cl)
      .def_readonly("t_rev", &TimeScales::t_rev)
      .def_readonly("t_super", &TimeScales::t_super)
      .def_readonly("t_ls", &TimeScales::t_ls)
      .def_readonly("t_ls2", &TimeScales::t_ls2)
      .def("in_seconds", &TimeScales::in_seconds);
  m.def("time_scales", &time_scales, py::arg("params"), py::arg("n_av"), py::arg("branch") = Branch::plus);

  py::class_<EnergyTable>(m, "EnergyTable")
      .def_property_readonly("n_min", &EnergyTable::n_min)
      .def_property_readonly("n_max", &EnergyTable::n_max)
      .def_property_readonly("n",
                             [](const EnergyTable& t) {
                               std::vector<int> v;
                               for (const auto& row : t.rows()) v.push_back(row.n);
                               return to_array(v);
                             })
      .def_property_readonly("eps_plus",
                             [](const EnergyTable& t) {
                               std::vector<double> v;
                               for (const auto& row : t.rows()) v.push_back(row.eps_plus);
                               return to_array(v);
                             })
      .def_property_readonly("eps_minus",
                             [](const EnergyTable& t) {
                               std::vector<double> v;
                               for (const auto& row : t.rows()) v.push_back(row.eps_minus);
                               return to_array(v);
                             })
      .def_property_readonly("omega", [](const EnergyTable& t) {
        std::vector<double> v;
        for (const auto& row : t.rows()) v.push_back(row.omega);
        return to_array(v);
      });
  m.def("energy_table", &energy_table, py::arg("params"), py::arg("n_min"), py::arg("n_max"));

  py::class_<RadialGrid>(m, "RadialGrid")
      .def_property_readonly("r", [](const RadialGrid& g) { return to_array(g.r); })
      .def_property_readonly("quad_w", [](const RadialGrid& g) { return to_array(g.quad_w); })
      .def_readonly("mapping", &RadialGrid::mapping)
      .def_property_readonly("r_max", &RadialGrid::r_max)
      .def("__len__", &RadialGrid::size);
  m.def("make_grid", &make_grid, py::arg("params"), py::arg("n_max"), py::arg("points") = kDefaultGridPoints,
        py::arg("mapping") = GridMapping::sqrt);
  m.def("make_grid_extent", &make_grid_extent, py::arg("r_max"), py::arg("points"),
        py::arg("mapping") = GridMapping::sqrt);
  m.def("make_display_axis", &make_display_axis, py::arg("r_max"), py::arg("points"));

  m.def("radial_eval", py::vectorize(&radial_eval), py::arg("Z"), py::arg("n"), py::arg("l"), py::arg("r"));

  py::class_<RadialTable>(m, "RadialTable")
      .def_property_readonly("n_min", &RadialTable::n_min)
      .def_property_readonly("n_max", &RadialTable::n_max)
      .def_property_readonly("l", &RadialTable::l)
      .def_property_readonly("values",
                             [](const RadialTable& t) {
                               return to_matrix(t.values(), static_cast<std::size_t>(t.n_max() - t.n_min() + 1),
                                                t.points());
                             })
      .def("row", [](const RadialTable& t, int n) {
        const auto row = t.row(n);
        return to_array(std::vector<double>(row.begin(), row.end()));
      });
  m.def("radial_table", &radial_table, py::arg("params"), py::arg("n_min"), py::arg("n_max"), py::arg("grid"));
  m.def(
      "inner_product",
      [](const InArray& f, const InArray& g, const RadialGrid& grid) { return inner_product(as_span(f), as_span(g), grid); },
      py::arg("f"), py::arg("g"), py::arg("grid"));
  m.def(
      "integrate", [](const InArray& f, const RadialGrid& grid) { return integrate(as_span(f), grid); }, py::arg("f"),
      py::arg("grid"));

  py::class_<PacketSpec>(m, "PacketSpec")
      .def(py::init([](double n_av, double sigma, cplx a, cplx b, std::optional<int> n_min, std::optional<int> n_max) {
             return PacketSpec{n_av, sigma, a, b, n_min, n_max};
           }),
           py::arg("n_av") = 80.0, py::arg("sigma") = 2.0, py::arg("a") = cplx{0.0, 0.0}, py::arg("b") = cplx{1.0, 0.0},
           py::arg("n_min") = py::none(), py::arg("n_max") = py::none())
      .def_readwrite("n_av", &PacketSpec::n_av)
      .def_readwrite("sigma", &PacketSpec::sigma)
      .def_readwrite("a", &PacketSpec::a)
      .def_readwrite("b", &PacketSpec::b)
      .def_readwrite("n_min", &PacketSpec::n_min)
      .def_readwrite("n_max", &PacketSpec::n_max);

  m.def(
      "gaussian_weights",
      [](double n_av, double sigma, int n_min, int n_max) { return to_array(gaussian_weights(n_av, sigma, n_min, n_max)); },
      py::arg("n_av"), py::arg("sigma"), py::arg("n_min"), py::arg("n_max"));

  py::class_<Packet>(m, "Packet")
      .def_property_readonly("spec", &Packet::spec)
      .def_property_readonly("l", &Packet::l)
      .def_property_readonly("n_min", &Packet::n_min)
      .def_property_readonly("n_max", &Packet::n_max)
      .def_property_readonly("weights", [](const Packet& p) { return to_array(p.weights()); })
      .def_property_readonly("a", &Packet::a)
      .def_property_readonly("b", &Packet::b)
      .def("weight", &Packet::weight, py::arg("n"))
      .def("__len__", &Packet::size);
  m.def("build_packet", &build_packet, py::arg("spec"), py::arg("l") = 1);

  py::class_<SpinorAmplitudes>(m, "SpinorAmplitudes")
      .def_readonly("t", &SpinorAmplitudes::t)
      .def_readonly("n_min", &SpinorAmplitudes::n_min)
      .def_readonly("l", &SpinorAmplitudes::l)
      .def_property_readonly("c1", [](const SpinorAmplitudes& s) { return to_array(s.c1); })
      .def_property_readonly("d1", [](const SpinorAmplitudes& s) { return to_array(s.d1); })
      .def_property_readonly("c2", [](const SpinorAmplitudes& s) { return to_array(s.c2); })
      .def("norm", &SpinorAmplitudes::norm);
  m.def("amplitudes_at", &amplitudes_at, py::arg("packet"), py::arg("energies"), py::arg("t"));

  py::class_<DensitySnapshot>(m, "DensitySnapshot")
      .def_readonly("t", &DensitySnapshot::t)
      .def_property_readonly("rho1", [](const DensitySnapshot& d) { return to_array(d.rho1); })
      .def_property_readonly("rho2", [](const DensitySnapshot& d) { return to_array(d.rho2); });
  m.def("densities", &densities, py::arg("amplitudes"), py::arg("table"), py::arg("grid"));

  m.def("autocorrelation", &autocorrelation, py::arg("packet"), py::arg("energies"), py::arg("t"));
  m.def(
      "spin_expectations",
      [](const SpinorAmplitudes& amps, int l) {
        const SpinVector s = spin_expectations(amps, l);
        return py::make_tuple(s.x, s.y, s.z);
      },
      py::arg("amplitudes"), py::arg("l"));
  m.def(
      "component_norms",
      [](const Packet& packet, const EnergyTable& energies, double t, int l) {
        const ComponentNorms c = component_norms(packet, energies, t, l);
        return py::make_tuple(c.n1, c.n2);
      },
      py::arg("packet"), py::arg("energies"), py::arg("t"), py::arg("l"));

  py::class_<ObservableSeries>(m, "ObservableSeries")
      .def_property_readonly("t", [](const ObservableSeries& s) { return to_array(s.t); })
      .def_property_readonly("A", [](const ObservableSeries& s) { return to_array(s.A); })
      .def_property_readonly("asq", [](const ObservableSeries& s) { return to_array(s.asq); })
      .def_property_readonly("sx", [](const ObservableSeries& s) { return to_array(s.sx); })
      .def_property_readonly("sy", [](const ObservableSeries& s) { return to_array(s.sy); })
      .def_property_readonly("sz", [](const ObservableSeries& s) { return to_array(s.sz); })
      .def_property_readonly("slen", [](const ObservableSeries& s) { return to_array(s.slen); })
      .def_property_readonly("N1", [](const ObservableSeries& s) { return to_array(s.N1); })
      .def_property_readonly("N2", [](const ObservableSeries& s) { return to_array(s.N2); })
      .def("__len__", &ObservableSeries::size);
  m.def(
      "observable_series",
      [](const Packet& packet, const EnergyTable& energies, const InArray& times) {
        std::span<const double> ts = as_span(times);
        py::gil_scoped_release release;
        return observable_series(packet, energies, ts);
      },
      py::arg("packet"), py::arg("energies"), py::arg("times"));

  py::class_<CarpetGrid>(m, "CarpetGrid")
      .def_property_readonly("t_axis", [](const CarpetGrid& c) { return to_array(c.t_axis); })
      .def_property_readonly("r_axis", [](const CarpetGrid& c) { return to_array(c.r_axis); })
      .def_property_readonly("rho1", [](const CarpetGrid& c) { return to_matrix(c.rho1, c.rows(), c.cols()); })
      .def_property_readonly("rho2", [](const CarpetGrid& c) { return to_matrix(c.rho2, c.rows(), c.cols()); });
  m.def(
      "carpet",
      [](const Packet& packet, const EnergyTable& energies, const RadialTable& table, const RadialGrid& grid,
         const InArray& t_grid) {
        std::span<const double> ts = as_span(t_grid);
        py::gil_scoped_release release;
        return carpet(packet, energies, table, grid, ts);
      },
      py::arg("packet"), py::arg("energies"), py::arg("table"), py::arg("grid"), py::arg("t_grid"));

  m.def(
      "detect_peaks",
      [](const InArray& t, const InArray& y, double t_from, double t_to, double prominence) {
        return peaks_to_list(detect_peaks(as_span(t), as_span(y), t_from, t_to, prominence));
      },
      py::arg("t"), py::arg("y"), py::arg("t_from"), py::arg("t_to"), py::arg("prominence") = kDefaultProminence);
  m.def(
      "detect_revivals",
      [](const ObservableSeries& series, double t_from, double t_to, PeakSignal signal, double prominence) {
        return peaks_to_list(detect_revivals(series, t_from, t_to, signal, prominence));
      },
      py::arg("series"), py::arg("t_from"), py::arg("t_to"), py::arg("signal") = PeakSignal::asq,
      py::arg("prominence") = kDefaultProminence);
}
