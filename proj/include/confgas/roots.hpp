#pragma once

#include <cmath>
#include <functional>
#include <utility>

namespace confgas::roots {

struct Options {
  double x_tol = 1e-15;   // relative width of the bracket at which to stop
  double f_tol = 0.0;     // absolute residual accepted as converged
  int max_iter = 200;
};

struct Result {
  double x = 0.0;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Newton iteration kept inside a sign-change bracket [lo, hi]. Steps that
/// leave the bracket or fail to halve it fall back to bisection, so
/// convergence is guaranteed once a bracket exists. `fdf` returns the value
/// and derivative.
Result safeguarded_newton(const std::function<std::pair<double, double>(double)>& fdf,
                          double lo, double hi, double x0, const Options& opts = {});

/// Brent's method on a sign-change bracket; derivative-free.
Result brent(const std::function<double(double)>& f, double lo, double hi,
             const Options& opts = {});

}  // namespace confgas::roots
