#include "confgas/eos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "confgas/roots.hpp"

namespace confgas {
namespace {

// Orders of the three terms of N; ln Xi is one order higher.
constexpr Order kPlanarN = orders::one;
constexpr Order kTubeN = orders::three_halves;

Order minus_half(Order s) { return Order::halves(s.twice() - 1); }

double expand(StatKind stat, const Expansion& c, Order top, double z, const SpecfunOptions& opts) {
  double total = c.bulk * h(stat, top, z, opts);
  if (c.boundary != 0.0) total += c.boundary * h(stat, minus_half(top), z, opts);
  if (c.topology != 0.0) total += c.topology * h(stat, top.lowered(), z, opts);
  return total;
}

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

double checked_nonnegative(double value, const char* what) {
  if (value < 0.0) {
    throw ModelError(std::string(what) + " is negative; corrections exceed the bulk term");
  }
  return value;
}

void check_inputs(double N, double T, const SolverOptions& opts) {
  if (!(N > 0.0) || !std::isfinite(N)) throw DomainError("particle number must be positive");
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("temperature must be positive");
  if (!(opts.tol > 0.0)) throw DomainError("solver tolerance must be positive");
}

// Solves expand(stat, coeffs, top, z) = N for z, working in u = ln z where
// the derivative is simply the same expansion one order lower.
std::pair<double, int> solve_expansion(StatKind stat, const Expansion& c, Order top, double N,
                                       const SolverOptions& opts) {
  const SpecfunOptions& sf = opts.specfun;
  const double weyl = c.bulk + c.boundary + c.topology;  // N / z as z -> 0
  if (!(weyl > 0.0)) {
    throw ModelError("state sum at this wavelength is not positive; container too small");
  }
  auto residual = [&](double u) { return expand(stat, c, top, std::exp(u), sf) - N; };
  auto slope = [&](double u) { return expand(stat, c, top.lowered(), std::exp(u), sf); };

  const double u_half = std::log(0.5);
  const double u_cap = stat == StatKind::Bose ? std::log1p(-opts.bose_cap_eps)
                                              : std::log(sf.z_max) + std::log1p(-1e-13);
  const double seed = std::log(N / weyl);
  double u_lo = std::min(seed - std::log(2.0), stat == StatKind::Bose ? u_half : u_cap);
  double f_lo = residual(u_lo);
  for (int i = 0; f_lo >= 0.0; ++i) {
    if (i > 700) throw NoBracketError("no lower bracket for the fugacity");
    u_lo -= std::log(10.0);
    f_lo = residual(u_lo);
  }

  // March upward to the first sign change: doubling z, and for Bose above
  // z = 1/2 shrinking 1 - z geometrically down to the condensation cap. The
  // branch below the first root must be increasing.
  double u_prev = u_lo;
  double u = u_lo;
  double f = f_lo;
  bool decreasing = false;
  while (f < 0.0) {
    if (!(slope(u) > 0.0)) decreasing = true;
    if (u >= u_cap) {
      throw NoBracketError(stat == StatKind::Bose
                               ? "N exceeds the largest value reachable below z = 1 - " +
                                     format_number(opts.bose_cap_eps) +
                                     " (near condensation, outside the model)"
                               : std::string("N not reached below the Fermi fugacity cap"));
    }
    u_prev = u;
    if (stat == StatKind::Bose && u >= u_half) {
      const double eps = std::max(-std::expm1(u) / 1.7782794100389228, opts.bose_cap_eps);
      u = std::log1p(-eps);
    } else {
      u += std::log(2.0);
      if (stat == StatKind::Bose) u = std::min(u, u_half);
    }
    u = std::min(u, u_cap);
    f = residual(u);
  }
  if (decreasing) {
    throw NonMonotoneError("particle number decreases below the solution; corrections too large");
  }

  roots::Options ropt;
  ropt.f_tol = opts.tol * N;
  ropt.x_tol = 4 * std::numeric_limits<double>::epsilon();
  ropt.max_iter = opts.max_iter;
  auto fdf = [&](double x) { return std::pair{residual(x), slope(x)}; };
  const double guess = std::clamp(seed, u_prev, u);
  const roots::Result r = roots::safeguarded_newton(fdf, u_prev, u, guess, ropt);
  if (std::abs(r.f) > opts.tol * N) {
    throw AccuracyError("fugacity solver stalled above the requested residual (z resolution limit)",
                        std::abs(r.f) / N);
  }
  if (!(slope(r.x) > 0.0)) {
    throw NonMonotoneError("particle number is not increasing in z at the solution");
  }
  return {std::exp(r.x), r.iterations};
}

ValidityReport make_report(const Expansion& n_coeffs, Order top, const GasState& state,
                           double area, const SolverOptions& opts) {
  ValidityReport rep;
  rep.ratio_wavelength = state.lambda / std::sqrt(area);
  const double bulk = n_coeffs.bulk * h(state.stat, top, state.z, opts.specfun);
  if (n_coeffs.boundary != 0.0) {
    rep.ratio_boundary =
        std::abs(n_coeffs.boundary * h(state.stat, minus_half(top), state.z, opts.specfun)) / bulk;
  }
  if (n_coeffs.topology != 0.0) {
    rep.ratio_topology =
        std::abs(n_coeffs.topology * h(state.stat, top.lowered(), state.z, opts.specfun)) / bulk;
  }
  rep.fermi_extension_used = state.stat == StatKind::Fermi && state.z > 1.0;
  if (rep.ratio_wavelength > opts.thresholds.wavelength) {
    rep.warnings.push_back({"wavelength", "lambda/sqrt(Omega) = " + format_number(rep.ratio_wavelength) +
                                              " exceeds threshold " +
                                              format_number(opts.thresholds.wavelength)});
  }
  if (rep.ratio_boundary > opts.thresholds.boundary) {
    rep.warnings.push_back({"boundary", "boundary/bulk = " + format_number(rep.ratio_boundary) +
                                            " exceeds threshold " +
                                            format_number(opts.thresholds.boundary)});
  }
  if (rep.fermi_extension_used) {
    rep.warnings.push_back({"fermi_extension",
                            "z = " + format_number(state.z) +
                                " > 1: boundary and connectivity terms used beyond the series domain"});
  }
  return rep;
}

}  // namespace

bool ValidityReport::has_warning(const std::string& tag) const {
  return std::any_of(warnings.begin(), warnings.end(), [&](const Warning& w) { return w.tag == tag; });
}

Expansion planar_coefficients(const PlanarDomain& dom, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("thermal wavelength must be positive");
  return {dom.area() / (lambda * lambda), -0.25 * dom.perimeter() / lambda, dom.connectivity()};
}

Expansion tube_coefficients(const TubeDomain& tube, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("thermal wavelength must be positive");
  const PlanarDomain& cs = tube.cross_section();
  const double lz = tube.length_z();
  return {lz * cs.area() / (lambda * lambda * lambda), -0.25 * lz * cs.perimeter() / (lambda * lambda),
          cs.connectivity() * lz / lambda};
}

double log_grand_potential_2d(StatKind stat, const PlanarDomain& dom, double lambda, double z,
                              const SpecfunOptions& opts) {
  return checked_nonnegative(expand(stat, planar_coefficients(dom, lambda), orders::two, z, opts), "ln Xi");
}

double particle_number_2d(StatKind stat, const PlanarDomain& dom, double lambda, double z,
                          const SpecfunOptions& opts) {
  return checked_nonnegative(expand(stat, planar_coefficients(dom, lambda), kPlanarN, z, opts), "N");
}

double log_grand_potential_tube(StatKind stat, const TubeDomain& tube, double lambda, double z,
                                const SpecfunOptions& opts) {
  return checked_nonnegative(expand(stat, tube_coefficients(tube, lambda), orders::five_halves, z, opts),
                             "ln Xi");
}

double particle_number_tube(StatKind stat, const TubeDomain& tube, double lambda, double z,
                            const SpecfunOptions& opts) {
  return checked_nonnegative(expand(stat, tube_coefficients(tube, lambda), kTubeN, z, opts), "N");
}

ValidityReport assess_validity(const PlanarDomain& dom, const GasState& state, const SolverOptions& opts) {
  return make_report(planar_coefficients(dom, state.lambda), kPlanarN, state, dom.area(), opts);
}

ValidityReport assess_validity(const TubeDomain& tube, const GasState& state, const SolverOptions& opts) {
  ValidityReport rep = make_report(tube_coefficients(tube, state.lambda), kTubeN, state,
                                   tube.cross_section().area(), opts);
  if (auto w = tube.aspect_warning()) rep.warnings.push_back({"tube_aspect", *w});
  return rep;
}

Solution solve_fugacity(StatKind stat, const PlanarDomain& dom, double N, double T,
                        const SolverOptions& opts) {
  check_inputs(N, T, opts);
  const double lambda = thermal_wavelength(T);
  auto [z, iters] = solve_expansion(stat, planar_coefficients(dom, lambda), kPlanarN, N, opts);
  Solution sol;
  sol.state = {z, lambda, T, N, stat};
  sol.validity = assess_validity(dom, sol.state, opts);
  sol.iterations = iters;
  return sol;
}

Solution solve_fugacity(StatKind stat, const TubeDomain& tube, double N, double T,
                        const SolverOptions& opts) {
  check_inputs(N, T, opts);
  const double lambda = thermal_wavelength(T);
  auto [z, iters] = solve_expansion(stat, tube_coefficients(tube, lambda), kTubeN, N, opts);
  Solution sol;
  sol.state = {z, lambda, T, N, stat};
  sol.validity = assess_validity(tube, sol.state, opts);
  sol.iterations = iters;
  return sol;
}

double pressure(StatKind stat, const PlanarDomain& dom, const GasState& state, const SpecfunOptions& opts) {
  return state.T * log_grand_potential_2d(stat, dom, state.lambda, state.z, opts) / dom.area();
}

double pressure(StatKind stat, const TubeDomain& tube, const GasState& state, const SpecfunOptions& opts) {
  return state.T * log_grand_potential_tube(stat, tube, state.lambda, state.z, opts) / tube.volume();
}

}  // namespace confgas
