#pragma once

// Internal energy, free energy, entropy and specific heat of the confined
// ideal gas at fixed N and T, expressed through the fugacity and the
// auxiliary coefficients that resolve the particle-number equation for the
// thermal wavelength.

#include <variant>

#include "confgas/eos.hpp"

namespace confgas {

struct Aux2D {
  double sigma2 = 1.0;  // Omega h_1 / (N lambda^2)
  double eta2 = 1.0;
};

struct Aux3D {
  double sigma3 = 1.0;  // Lz Omega h_{3/2} / (N lambda^3)
  double eta3 = 1.0;
  double xi1 = 1.0;
  double xi2 = 1.0;
  double xi3 = 1.0;
  double xi4 = 1.0;
  double xi5 = 1.0;
};

/// Energies in units where k = 1.
struct ThermoReport {
  double U = 0.0;
  double F = 0.0;
  double S = 0.0;
  double C_V = 0.0;
  double P = 0.0;
  GasState state;
  std::variant<Aux2D, Aux3D> aux;
  ValidityReport validity;
};

/// Closed-form sigma_2 and eta_2. Throws SingularityError when a
/// denominator is below 1e-14 in magnitude, or when ((1-r)/6) h_0 >= N
/// (the connectivity term alone exceeds N and two wavelengths fit).
Aux2D aux_2d(StatKind stat, double z, double N, const PlanarDomain& dom,
             const SpecfunOptions& opts = {});

/// xi_5, xi_4, xi_3, xi_2, xi_1, then sigma_3 = 1 / (xi_4 xi_1^3) and eta_3.
Aux3D aux_3d(StatKind stat, double z, double N, const TubeDomain& tube,
             const SpecfunOptions& opts = {});

/// dz/dT at fixed N: -(z/T)(h_1/h_0) eta_2.
double dz_dT_2d(StatKind stat, const GasState& state, const Aux2D& aux,
                const SpecfunOptions& opts = {});
/// dz/dT at fixed N: -(3/2)(z/T)(h_{3/2}/h_{1/2}) eta_3.
double dz_dT_3d(StatKind stat, const GasState& state, const Aux3D& aux,
                const SpecfunOptions& opts = {});

/// Solves for z, then evaluates every quantity.
ThermoReport thermo_2d(StatKind stat, const PlanarDomain& dom, double N, double T,
                       const SolverOptions& opts = {});
ThermoReport thermo_3d(StatKind stat, const TubeDomain& tube, double N, double T,
                       const SolverOptions& opts = {});

/// Same, from an already solved state.
ThermoReport thermo_2d(const PlanarDomain& dom, const Solution& sol, const SolverOptions& opts = {});
ThermoReport thermo_3d(const TubeDomain& tube, const Solution& sol, const SolverOptions& opts = {});

}  // namespace confgas
