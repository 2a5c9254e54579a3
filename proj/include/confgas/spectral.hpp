#pragma once

// Exact Dirichlet spectra of (1/2) Laplacian for rectangles, disks and
// annuli, the heat-kernel trace Theta(t) = sum exp(-mu t), and exact
// grand-canonical sums over a spectrum. Used as ground truth for the
// asymptotic expansions.

#include <cstddef>
#include <optional>
#include <vector>

#include "confgas/geometry.hpp"
#include "confgas/specfun.hpp"

namespace confgas {

struct Level {
  double mu = 0.0;
  int multiplicity = 1;
};

struct Spectrum {
  std::vector<Level> levels;  // sorted by mu, every mu <= cutoff
  double cutoff = 0.0;        // complete below this value
  std::optional<ShapeSpec> shape;
  /// Upper bound on the number of states per unit mu beyond the cutoff.
  /// Omega/pi for planar domains (twice the Weyl density, from the Li-Yau bound).
  double tail_bound_coeff = 0.0;

  std::size_t state_count() const;
};

struct SpectrumOptions {
  std::size_t max_states = 10'000'000;
  int threads = 1;  // angular orders are shared among threads; output is identical
};

Spectrum rectangle_spectrum(double a, double b, double cutoff, const SpectrumOptions& opts = {});
Spectrum disk_spectrum(double R, double cutoff, const SpectrumOptions& opts = {});
Spectrum annulus_spectrum(double R_inner, double R_outer, double cutoff, const SpectrumOptions& opts = {});
/// Dispatches on the shape; polygons throw GeometryError (no exact solver).
Spectrum spectrum_for(const ShapeSpec& shape, double cutoff, const SpectrumOptions& opts = {});

/// A spectrum from explicit levels, e.g. for tests. Levels are sorted.
Spectrum custom_spectrum(std::vector<Level> levels, double cutoff, double tail_bound_coeff);

/// Two-term Weyl estimate of the number of states with mu <= cutoff.
double weyl_count(const PlanarDomain& dom, double cutoff);

/// Cutoff that makes the theta tail bound at time t at most rel times the
/// leading Weyl term Omega/(2 pi t), whatever the domain.
double theta_cutoff(double t, double rel = 1e-9);

struct ThetaResult {
  double value = 0.0;
  double truncation_bound = 0.0;
};

/// sum multiplicity exp(-mu t) and a bound on the omitted tail,
/// C (cutoff + 1/t) exp(-cutoff t). TruncationError when the bound exceeds
/// 1e-6 of the value.
ThetaResult theta_sum(const Spectrum& spec, double t);

struct ExactThermo {
  double z = 0.0;
  double lnXi = 0.0;
  double U = 0.0;
  double N = 0.0;  // particle number actually reached
  int iterations = 0;
};

/// Solves N = sum m / (exp(mu/T)/z -+ 1) for z and returns ln Xi and U.
/// Requires cutoff >= 40 T and tail contributions below 1e-10 relative
/// (TruncationError); Bose targets needing a ground-state occupation above
/// 1e10 give NoBracketError.
ExactThermo exact_thermo(StatKind stat, const Spectrum& spec, double N, double T);

}  // namespace confgas
