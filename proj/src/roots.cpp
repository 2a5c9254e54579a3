#include "confgas/roots.hpp"

#include <algorithm>
#include <limits>

namespace confgas::roots {
namespace {

bool width_converged(double lo, double hi, const Options& opts) {
  const double scale = std::max({std::abs(lo), std::abs(hi), std::numeric_limits<double>::min()});
  return std::abs(hi - lo) <= opts.x_tol * scale;
}

}  // namespace

Result safeguarded_newton(const std::function<std::pair<double, double>(double)>& fdf,
                          double lo, double hi, double x0, const Options& opts) {
  auto [flo, dlo] = fdf(lo);
  auto [fhi, dhi] = fdf(hi);
  (void)dlo;
  (void)dhi;
  Result res;
  if (flo == 0.0) return {lo, 0.0, 0, true};
  if (fhi == 0.0) return {hi, 0.0, 0, true};
  const bool increasing = fhi > 0.0;

  double x = std::clamp(x0, lo, hi);
  if (x <= lo || x >= hi) x = 0.5 * (lo + hi);
  double last_width = hi - lo;
  for (int it = 1; it <= opts.max_iter; ++it) {
    auto [fx, dfx] = fdf(x);
    res = {x, fx, it, false};
    if (fx == 0.0 || std::abs(fx) <= opts.f_tol) {
      res.converged = true;
      return res;
    }
    if ((fx > 0.0) == increasing) {
      hi = x;
    } else {
      lo = x;
    }
    if (width_converged(lo, hi, opts)) {
      res.converged = true;
      return res;
    }
    double next = x - fx / dfx;
    const double width = hi - lo;
    const bool inside = std::isfinite(next) && next > lo && next < hi;
    if (!inside || width > 0.5 * last_width) {
      // Newton either escaped or stalled; a bisection step restores progress.
      if (!inside || std::abs(next - x) > 0.5 * width) next = 0.5 * (lo + hi);
    }
    last_width = width;
    if (std::abs(next - x) <= 0.5 * opts.x_tol * std::max(std::abs(x), std::numeric_limits<double>::min())) {
      res.converged = true;
      return res;
    }
    x = next;
  }
  return res;
}

Result brent(const std::function<double(double)>& f, double lo, double hi,
             const Options& opts) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  Result res;
  if (fa == 0.0) return {a, 0.0, 0, true};
  if (fb == 0.0) return {b, 0.0, 0, true};
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 1; it <= opts.max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                       0.5 * opts.x_tol * std::abs(b);
    const double m = 0.5 * (c - b);
    res = {b, fb, it, false};
    if (std::abs(m) <= tol || fb == 0.0 || std::abs(fb) <= opts.f_tol) {
      res.converged = true;
      return res;
    }
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q; else p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
  }
  return res;
}

}  // namespace confgas::roots
