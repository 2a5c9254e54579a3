#pragma once

#include <functional>
#include <span>

namespace confgas::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;  // Kronrod-Gauss difference, summed over final panels
  int panels = 0;
  bool converged = false;
};

struct Options {
  double abs_tol = 1e-15;
  double rel_tol = 1e-14;
  int max_panels = 4000;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature over [a, b].
/// `breaks` lists interior points where the integrand changes character;
/// each initial panel is bounded by consecutive breaks.
Result gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                     std::span<const double> breaks = {}, const Options& opts = {});

}  // namespace confgas::quad
