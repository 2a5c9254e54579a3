#pragma once

// Grand potential and particle number of an ideal quantum gas in a planar
// container or a long tube, including the boundary (perimeter) and
// connectivity (hole count) terms of the heat-kernel expansion, and the
// inversion of the particle-number equation for the fugacity.

#include <string>
#include <vector>

#include "confgas/geometry.hpp"
#include "confgas/specfun.hpp"

namespace confgas {

struct GasState {
  double z = 0.0;       // fugacity
  double lambda = 0.0;  // thermal wavelength, sqrt(2 pi / T)
  double T = 0.0;
  double N = 0.0;
  StatKind stat = StatKind::Bose;
};

struct Warning {
  std::string tag;
  std::string message;
};

struct ValidityThresholds {
  double wavelength = 0.2;  // lambda / sqrt(Omega)
  double boundary = 0.5;    // |boundary term| / bulk term of N
};

struct ValidityReport {
  double ratio_wavelength = 0.0;
  double ratio_boundary = 0.0;
  double ratio_topology = 0.0;
  bool fermi_extension_used = false;
  std::vector<Warning> warnings;

  bool has_warnings() const noexcept { return !warnings.empty(); }
  bool has_warning(const std::string& tag) const;
};

struct SolverOptions {
  double tol = 1e-12;            // relative residual on N
  double bose_cap_eps = 1e-12;   // Bose fugacity is kept below 1 - eps
  int max_iter = 400;
  SpecfunOptions specfun;
  ValidityThresholds thresholds;
};

struct Solution {
  GasState state;
  ValidityReport validity;
  int iterations = 0;
};

/// Three-term expansion  bulk h_s + boundary h_{s-1/2} + topology h_{s-1}.
struct Expansion {
  double bulk = 0.0;
  double boundary = 0.0;
  double topology = 0.0;
};

/// Coefficients of ln Xi (orders 2, 3/2, 1) and N (orders 1, 1/2, 0) in 2-D.
Expansion planar_coefficients(const PlanarDomain& dom, double lambda);
/// Coefficients of ln Xi (orders 5/2, 2, 3/2) and N (orders 3/2, 1, 1/2) in a tube.
Expansion tube_coefficients(const TubeDomain& tube, double lambda);

/// ln Xi = (Omega/lambda^2) h_2 - (L/(4 lambda)) h_{3/2} + ((1-r)/6) h_1.
double log_grand_potential_2d(StatKind stat, const PlanarDomain& dom, double lambda, double z,
                              const SpecfunOptions& opts = {});
/// N = (Omega/lambda^2) h_1 - (L/(4 lambda)) h_{1/2} + ((1-r)/6) h_0.
double particle_number_2d(StatKind stat, const PlanarDomain& dom, double lambda, double z,
                          const SpecfunOptions& opts = {});
/// ln Xi = (Lz Omega/lambda^3) h_{5/2} - (Lz L/(4 lambda^2)) h_2 + ((1-r)/6)(Lz/lambda) h_{3/2}.
double log_grand_potential_tube(StatKind stat, const TubeDomain& tube, double lambda, double z,
                                const SpecfunOptions& opts = {});
/// N = (Lz Omega/lambda^3) h_{3/2} - (Lz L/(4 lambda^2)) h_1 + ((1-r)/6)(Lz/lambda) h_{1/2}.
double particle_number_tube(StatKind stat, const TubeDomain& tube, double lambda, double z,
                            const SpecfunOptions& opts = {});

/// Finds the lowest z with particle_number(z) = N to opts.tol relative.
/// Bose roots are sought on (0, 1 - eps), Fermi roots below the fugacity
/// cap. N(z) must increase on the whole branch up to the root, otherwise
/// NonMonotoneError. Also throws NoBracketError, ModelError, AccuracyError
/// or propagates special-function errors.
Solution solve_fugacity(StatKind stat, const PlanarDomain& dom, double N, double T,
                        const SolverOptions& opts = {});
Solution solve_fugacity(StatKind stat, const TubeDomain& tube, double N, double T,
                        const SolverOptions& opts = {});

/// Ratios of the correction terms to the bulk term and the warnings they trigger.
ValidityReport assess_validity(const PlanarDomain& dom, const GasState& state,
                               const SolverOptions& opts = {});
ValidityReport assess_validity(const TubeDomain& tube, const GasState& state,
                               const SolverOptions& opts = {});

/// Spreading pressure k T ln Xi / Omega.
double pressure(StatKind stat, const PlanarDomain& dom, const GasState& state,
                const SpecfunOptions& opts = {});
/// k T ln Xi / (Lz Omega).
double pressure(StatKind stat, const TubeDomain& tube, const GasState& state,
                const SpecfunOptions& opts = {});

}  // namespace confgas
