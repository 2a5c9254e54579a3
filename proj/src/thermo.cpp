#include "confgas/thermo.hpp"

#include <cmath>
#include <string>

#include "confgas/error.hpp"

namespace confgas {
namespace {

constexpr double kTiny = 1e-14;

double guarded(double denom, const char* what) {
  if (!(std::abs(denom) >= kTiny)) {
    throw SingularityError(std::string(what) + " denominator vanishes; state outside the asymptotic regime");
  }
  return denom;
}

struct H {
  StatKind stat;
  double z;
  const SpecfunOptions& opts;
  double operator()(Order s) const { return h(stat, s, z, opts); }
};

void check_aux_inputs(double z, double N) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("fugacity must be positive");
  if (!(N > 0.0) || !std::isfinite(N)) throw DomainError("particle number must be positive");
}

}  // namespace

Aux2D aux_2d(StatKind stat, double z, double N, const PlanarDomain& dom, const SpecfunOptions& opts) {
  check_aux_inputs(z, N);
  const H hz{stat, z, opts};
  const double q = dom.perimeter() / (std::sqrt(N) * std::sqrt(dom.area()));
  const double c = (1 - dom.holes()) / (6 * N);
  const double h1 = hz(orders::one), h0 = hz(orders::zero), hh = hz(orders::half);
  const double sh1 = std::sqrt(h1);

  Aux2D a;
  // Once the connectivity term alone exceeds N the quadratic in 1/lambda has
  // two positive roots and (z, N) no longer fixes the wavelength.
  if (!(c * h0 < 1.0)) throw SingularityError("sigma2: connectivity term exceeds N, wavelength branch is ambiguous");
  const double radicand = 1 + q * q / 64 * hh * hh / h1 - c * h0;
  if (!(radicand >= 0.0)) throw SingularityError("sigma2: negative radicand, no real wavelength");
  const double den = guarded(std::sqrt(radicand) - q / 8 * hh / sh1, "sigma2");
  const double root = (1 - c * h0) / den;
  a.sigma2 = root * root;
  if (!(a.sigma2 >= kTiny)) throw SingularityError("sigma2 vanishes; state outside the asymptotic regime");

  const double ss = std::sqrt(a.sigma2);
  // Only the correction terms need the divergent orders; skip them in free space.
  const double hm = q != 0.0 ? hz(orders::minus_half) : 0.0;
  const double hmm = c != 0.0 ? hz(orders::minus_one) : 0.0;
  const double num = 1 - q / 8 * hh / sh1 / ss;
  const double eden = 1 - q / 4 * sh1 * hm / h0 / ss + c * h1 * hmm / h0 / a.sigma2;
  a.eta2 = num / guarded(eden, "eta2");
  return a;
}

Aux3D aux_3d(StatKind stat, double z, double N, const TubeDomain& tube, const SpecfunOptions& opts) {
  check_aux_inputs(z, N);
  const H hz{stat, z, opts};
  const PlanarDomain& cs = tube.cross_section();
  const double Om = cs.area(), L = cs.perimeter(), Lz = tube.length_z();
  const double m = 1 - cs.holes();
  const double A = std::cbrt(Lz) * L / (std::cbrt(N) * std::cbrt(Om * Om));
  const double B = std::cbrt(Lz * Lz) / (std::cbrt(N * N) * std::cbrt(Om));
  const double h32 = hz(orders::three_halves), h1 = hz(orders::one), hh = hz(orders::half);
  const double c13 = std::cbrt(h32), c23 = c13 * c13;

  Aux3D a;
  // Lz / L only enters with (1 - r)^2, which is zero in free space (L = 0).
  a.xi5 = m == 0.0 ? 1.0 : 1 - m * m / (27 * N) * (Lz / L) * hh * hh / h1;
  a.xi4 = 1 - m / (72 * N) * Lz * L / Om * h1 * hh / h32 +
          m * m * m / (2916 * N * N) * Lz * Lz / Om * hh * hh * hh / h32;
  a.xi3 = a.xi5 * a.xi5 * a.xi5 / (a.xi4 * guarded(a.xi4, "xi3"));
  const double radicand = 1 + Lz * L * L * L / (432 * N * Om * Om) * h1 * h1 * h1 / (h32 * h32) * a.xi3;
  if (!(radicand >= 0.0)) throw SingularityError("xi2: negative radicand, no real wavelength");
  a.xi2 = std::cbrt(0.5 + 0.5 * std::sqrt(radicand));
  a.xi1 = a.xi2 - 1 / guarded(a.xi2, "xi1") / 12 * A * h1 / c23 * std::cbrt(a.xi3) +
          m / 18 * B * hh / c13 / std::cbrt(a.xi4);
  a.sigma3 = 1 / guarded(a.xi4 * a.xi1 * a.xi1 * a.xi1, "sigma3");
  if (!(a.sigma3 >= kTiny)) throw SingularityError("sigma3 vanishes; state outside the asymptotic regime");

  const double s13 = std::cbrt(a.sigma3), s23 = s13 * s13;
  const double h0 = A != 0.0 ? hz(orders::zero) : 0.0;
  const double hm = m != 0.0 ? hz(orders::minus_half) : 0.0;
  const double num = 1 - A / 6 * h1 / c23 / s13 + m / 18 * B * hh / c13 / s23;
  const double den = 1 - A / 4 * c13 * h0 / hh / s13 + m / 6 * B * c23 * hm / hh / s23;
  a.eta3 = num / guarded(den, "eta3");
  return a;
}

double dz_dT_2d(StatKind stat, const GasState& s, const Aux2D& aux, const SpecfunOptions& opts) {
  return -(s.z / s.T) * h(stat, orders::one, s.z, opts) / h(stat, orders::zero, s.z, opts) * aux.eta2;
}

double dz_dT_3d(StatKind stat, const GasState& s, const Aux3D& aux, const SpecfunOptions& opts) {
  return -1.5 * (s.z / s.T) * h(stat, orders::three_halves, s.z, opts) /
         h(stat, orders::half, s.z, opts) * aux.eta3;
}

ThermoReport thermo_2d(const PlanarDomain& dom, const Solution& sol, const SolverOptions& opts) {
  const GasState& st = sol.state;
  const StatKind stat = st.stat;
  const H hz{stat, st.z, opts.specfun};
  const Aux2D a = aux_2d(stat, st.z, st.N, dom, opts.specfun);
  const double N = st.N, T = st.T;
  const double q = dom.perimeter() / (std::sqrt(N) * std::sqrt(dom.area()));
  const double c = (1 - dom.holes()) / (6 * N);
  const double h2 = hz(orders::two), h32 = hz(orders::three_halves), h1 = hz(orders::one);
  const double hh = hz(orders::half), h0 = hz(orders::zero);
  const double sh1 = std::sqrt(h1), ss = std::sqrt(a.sigma2);
  const double bulk = h2 / h1 * a.sigma2;
  const double edge = q * h32 / sh1 * ss;
  const double lnz = std::log(st.z);

  ThermoReport r;
  r.U = N * T * (bulk - edge / 8);
  r.F = N * T * (lnz - (bulk - edge / 4 + c * h1));
  r.S = N * (2 * bulk - lnz - 3 * edge / 8 + c * h1);
  r.C_V = N * (a.sigma2 * (2 * h2 / h1 - a.eta2 * h1 / h0) -
               q * ss * (3.0 / 16 * h32 / sh1 - a.eta2 / 8 * sh1 * hh / h0));
  r.P = pressure(stat, dom, st, opts.specfun);
  r.state = st;
  r.aux = a;
  r.validity = sol.validity;
  return r;
}

ThermoReport thermo_3d(const TubeDomain& tube, const Solution& sol, const SolverOptions& opts) {
  const GasState& st = sol.state;
  const StatKind stat = st.stat;
  const H hz{stat, st.z, opts.specfun};
  const Aux3D a = aux_3d(stat, st.z, st.N, tube, opts.specfun);
  const PlanarDomain& cs = tube.cross_section();
  const double N = st.N, T = st.T;
  const double Om = cs.area(), L = cs.perimeter(), Lz = tube.length_z();
  const double m = 1 - cs.holes();
  const double A = std::cbrt(Lz) * L / (std::cbrt(N) * std::cbrt(Om * Om));
  const double B = std::cbrt(Lz * Lz) / (std::cbrt(N * N) * std::cbrt(Om));
  const double h52 = hz(orders::five_halves), h2 = hz(orders::two), h32 = hz(orders::three_halves);
  const double h1 = hz(orders::one), hh = hz(orders::half);
  const double c13 = std::cbrt(h32), c23 = c13 * c13;
  const double s13 = std::cbrt(a.sigma3), s23 = s13 * s13;
  const double bulk = h52 / h32 * a.sigma3;
  const double edge = A * h2 / c23 * s23;
  const double top = m * B * c23 * s13;
  const double lnz = std::log(st.z);

  ThermoReport r;
  r.U = N * T * (1.5 * bulk - edge / 4 + top / 12);
  r.F = N * T * (lnz - (bulk - edge / 4 + top / 6));
  r.S = N * (2.5 * bulk - lnz - edge / 2 + top / 4);
  r.C_V = N * (a.sigma3 * (15.0 / 4 * h52 / h32 - 9.0 / 4 * a.eta3 * h32 / hh) -
               A * s23 * (h2 / (2 * c23) - 3.0 / 8 * a.eta3 * c13 * h1 / hh) +
               top / 6 * 0.75 * (1 - a.eta3));
  r.P = pressure(stat, tube, st, opts.specfun);
  r.state = st;
  r.aux = a;
  r.validity = sol.validity;
  return r;
}

ThermoReport thermo_2d(StatKind stat, const PlanarDomain& dom, double N, double T, const SolverOptions& opts) {
  return thermo_2d(dom, solve_fugacity(stat, dom, N, T, opts), opts);
}

ThermoReport thermo_3d(StatKind stat, const TubeDomain& tube, double N, double T, const SolverOptions& opts) {
  return thermo_3d(tube, solve_fugacity(stat, tube, N, T, opts), opts);
}

}  // namespace confgas
