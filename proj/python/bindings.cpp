#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "confgas/spectral.hpp"
#include "confgas/thermo.hpp"
#include "confgas/verify.hpp"

namespace py = pybind11;
using namespace confgas;

namespace {

StatKind stat_of(const std::string& s) { return parse_stat(s); }

py::dict validity_dict(const ValidityReport& v) {
  py::list warnings;
  for (const auto& w : v.warnings) warnings.append(py::make_tuple(w.tag, w.message));
  py::dict d;
  d["ratio_wavelength"] = v.ratio_wavelength;
  d["ratio_boundary"] = v.ratio_boundary;
  d["ratio_topology"] = v.ratio_topology;
  d["fermi_extension_used"] = v.fermi_extension_used;
  d["warnings"] = warnings;
  return d;
}

py::dict report_dict(const ThermoReport& r) {
  py::dict d;
  d["U"] = r.U;
  d["F"] = r.F;
  d["S"] = r.S;
  d["C_V"] = r.C_V;
  d["P"] = r.P;
  d["z"] = r.state.z;
  d["lambda"] = r.state.lambda;
  d["T"] = r.state.T;
  d["N"] = r.state.N;
  if (const auto* a = std::get_if<Aux2D>(&r.aux)) {
    d["sigma"] = a->sigma2;
    d["eta"] = a->eta2;
  } else {
    const Aux3D& b = std::get<Aux3D>(r.aux);
    d["sigma"] = b.sigma3;
    d["eta"] = b.eta3;
    d["xi"] = py::make_tuple(b.xi1, b.xi2, b.xi3, b.xi4, b.xi5);
  }
  d["validity"] = validity_dict(r.validity);
  return d;
}

SolverOptions solver_options(double tol, double bose_cap_eps) {
  SolverOptions o;
  o.tol = tol;
  o.bose_cap_eps = bose_cap_eps;
  return o;
}

// Planar shapes come in as the CLI grammar, e.g. "disk:1".
PlanarDomain domain_of(const std::string& shape) {
  const ShapeSpec s = parse_shape(shape);
  validate(s);
  return make_domain(s);
}

}  // namespace

PYBIND11_MODULE(_confgas, m) {
  m.doc() = "Ideal quantum gases in bounded planar domains and tubes";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<AccuracyError>(m, "AccuracyError", base.ptr());
  py::register_exception<GeometryError>(m, "GeometryError", base.ptr());
  py::register_exception<ModelError>(m, "ModelError", base.ptr());
  py::register_exception<NoBracketError>(m, "NoBracketError", base.ptr());
  py::register_exception<NonMonotoneError>(m, "NonMonotoneError", base.ptr());
  py::register_exception<SingularityError>(m, "SingularityError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<TruncationError>(m, "TruncationError", base.ptr());

  m.def(
      "h",
      [](const std::string& stat, double order, double z) {
        const FunctionValue v = eval_h(stat_of(stat), Order::of(order), z);
        return py::make_tuple(v.value, v.abs_error_bound, to_string(v.method));
      },
      py::arg("stat"), py::arg("order"), py::arg("z"),
      "h_s(z) for stat 'bose' or 'fermi'; returns (value, error_bound, method).");

  py::class_<PlanarDomain>(m, "PlanarDomain")
      .def(py::init<double, double, int>(), py::arg("area"), py::arg("perimeter"), py::arg("holes"))
      .def_static("free_space", &PlanarDomain::free_space, py::arg("area"))
      .def_static("from_shape", &domain_of, py::arg("shape"), "From 'rect:a,b', 'disk:R', 'annulus:Ri,Ro' or 'polygon:@file'.")
      .def_property_readonly("area", &PlanarDomain::area)
      .def_property_readonly("perimeter", &PlanarDomain::perimeter)
      .def_property_readonly("holes", &PlanarDomain::holes)
      .def("__repr__", [](const PlanarDomain& d) {
        return "PlanarDomain(area=" + std::to_string(d.area()) + ", perimeter=" + std::to_string(d.perimeter()) +
               ", holes=" + std::to_string(d.holes()) + ")";
      });

  py::class_<TubeDomain>(m, "TubeDomain")
      .def(py::init<PlanarDomain, double>(), py::arg("cross_section"), py::arg("length_z"))
      .def_property_readonly("cross_section", &TubeDomain::cross_section)
      .def_property_readonly("length_z", &TubeDomain::length_z)
      .def_property_readonly("volume", &TubeDomain::volume);

  m.def(
      "solve",
      [](const std::string& stat, const PlanarDomain& dom, double N, double T, double tol, double eps) {
        const Solution s = solve_fugacity(stat_of(stat), dom, N, T, solver_options(tol, eps));
        py::dict d = validity_dict(s.validity);
        d["z"] = s.state.z;
        d["lambda"] = s.state.lambda;
        d["iterations"] = s.iterations;
        return d;
      },
      py::arg("stat"), py::arg("domain"), py::arg("N"), py::arg("T"), py::arg("tol") = 1e-12,
      py::arg("bose_cap_eps") = 1e-12);
  m.def(
      "solve",
      [](const std::string& stat, const TubeDomain& tube, double N, double T, double tol, double eps) {
        const Solution s = solve_fugacity(stat_of(stat), tube, N, T, solver_options(tol, eps));
        py::dict d = validity_dict(s.validity);
        d["z"] = s.state.z;
        d["lambda"] = s.state.lambda;
        d["iterations"] = s.iterations;
        return d;
      },
      py::arg("stat"), py::arg("domain"), py::arg("N"), py::arg("T"), py::arg("tol") = 1e-12,
      py::arg("bose_cap_eps") = 1e-12);

  m.def(
      "thermo",
      [](const std::string& stat, const PlanarDomain& dom, double N, double T) {
        return report_dict(thermo_2d(stat_of(stat), dom, N, T));
      },
      py::arg("stat"), py::arg("domain"), py::arg("N"), py::arg("T"));
  m.def(
      "thermo",
      [](const std::string& stat, const TubeDomain& tube, double N, double T) {
        return report_dict(thermo_3d(stat_of(stat), tube, N, T));
      },
      py::arg("stat"), py::arg("domain"), py::arg("N"), py::arg("T"));

  m.def(
      "spectrum",
      [](const std::string& shape, double cutoff, int threads) {
        SpectrumOptions o;
        o.threads = threads;
        Spectrum s;
        {
          py::gil_scoped_release release;
          s = spectrum_for(parse_shape(shape), cutoff, o);
        }
        py::array_t<double> mu(static_cast<py::ssize_t>(s.levels.size()));
        py::array_t<int> mult(static_cast<py::ssize_t>(s.levels.size()));
        auto mu_v = mu.mutable_unchecked<1>();
        auto mult_v = mult.mutable_unchecked<1>();
        for (std::size_t i = 0; i < s.levels.size(); ++i) {
          mu_v(i) = s.levels[i].mu;
          mult_v(i) = s.levels[i].multiplicity;
        }
        return py::make_tuple(mu, mult);
      },
      py::arg("shape"), py::arg("cutoff"), py::arg("threads") = 1,
      "Dirichlet levels mu <= cutoff of (1/2) Laplacian; returns (mu, multiplicity) arrays.");

  m.def(
      "theta",
      [](const std::string& shape, double t) {
        py::gil_scoped_release release;
        const ThetaResult r = theta_sum(spectrum_for(parse_shape(shape), theta_cutoff(t)), t);
        return std::make_pair(r.value, r.truncation_bound);
      },
      py::arg("shape"), py::arg("t"), "Heat-kernel trace and its truncation bound.");

  m.def(
      "exact_thermo",
      [](const std::string& stat, const std::string& shape, double N, double T) {
        py::gil_scoped_release release;
        const ExactThermo e = exact_thermo(stat_of(stat), spectrum_for(parse_shape(shape), 45 * T), N, T);
        return std::make_tuple(e.z, e.lnXi, e.U);
      },
      py::arg("stat"), py::arg("shape"), py::arg("N"), py::arg("T"),
      "Exact grand-canonical sums over the spectrum; returns (z, ln Xi, U).");

  m.def(
      "verify",
      [](const std::string& suite, int samples, int threads) {
        VerifyOptions o;
        o.samples = samples;
        o.threads = threads;
        std::vector<CheckRow> rows;
        {
          py::gil_scoped_release release;
          if (suite != "thermo") rows = verify_heatkernel(o);
          if (suite != "heatkernel") {
            auto more = verify_thermo(o);
            rows.insert(rows.end(), more.begin(), more.end());
          }
        }
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["suite"] = r.suite;
          d["check"] = r.check;
          d["measured"] = r.measured;
          d["tolerance"] = r.tolerance;
          d["status"] = to_string(r.status);
          d["note"] = r.note;
          out.append(d);
        }
        return out;
      },
      py::arg("suite") = "all", py::arg("samples") = 24, py::arg("threads") = 1);
}
