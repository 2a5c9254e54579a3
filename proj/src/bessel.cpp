#include "confgas/bessel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "confgas/error.hpp"
#include "confgas/quadrature.hpp"
#include "confgas/roots.hpp"

namespace confgas::bessel {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHankelSwitch = 25.0;

void check_order(int n) {
  if (n < 0) throw DomainError("Bessel order must be non-negative");
}

// Hankel asymptotic expansion for integer order, x >= 25. Terms are summed
// until they stop decreasing or drop below roundoff.
std::pair<double, double> hankel(int n, double x) {
  const double mu = 4.0 * n * n;
  double p = 1.0, q = 0.0, term = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
    if (std::abs(next) >= std::abs(term) || std::abs(next) < 1e-18) break;
    term = next;
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      default: p += term; break;
    }
  }
  const double w = x - (0.5 * n + 0.25) * kPi;
  const double s = std::sqrt(2.0 / (kPi * x));
  return {s * (p * std::cos(w) - q * std::sin(w)), s * (p * std::sin(w) + q * std::cos(w))};
}

// Y_n for n in {0, 1}:
//   (1/pi) int_0^pi sin(x sin t - n t) dt - (1/pi) int_0^inf (e^{nt} + (-1)^n e^{-nt}) e^{-x sinh t} dt
double y_integral(int n, double x) {
  // The oscillatory part has an integrand bounded by 1 on a length-pi
  // interval, so 1e-15 absolute is at roundoff; the decaying part is positive
  // and converges in the relative sense.
  quad::Options opts;
  opts.abs_tol = 1e-15;
  opts.rel_tol = 1e-15;
  opts.max_panels = 20000;
  const int half_periods = static_cast<int>(x / kPi) + 1;
  std::vector<double> breaks;
  for (int i = 1; i < std::min(half_periods, 64); ++i) breaks.push_back(kPi * i / std::min(half_periods, 64));
  const quad::Result osc = quad::gauss_kronrod(
      [&](double t) { return std::sin(x * std::sin(t) - n * t); }, 0.0, kPi, breaks, opts);

  // e^{-x sinh t} < 1e-20 beyond t_max.
  const double t_max = std::asinh(50.0 / x) + 1.0;
  const std::array<double, 3> tail_breaks{std::asinh(1.0 / x), std::asinh(5.0 / x), std::asinh(15.0 / x)};
  const quad::Result decay = quad::gauss_kronrod(
      [&](double t) {
        const double e = std::exp(-x * std::sinh(t));
        return n == 0 ? 2.0 * e : 2.0 * std::sinh(t) * e;
      },
      0.0, t_max, tail_breaks, opts);
  if (!osc.converged || !decay.converged) throw ConvergenceError("Y_n integral did not converge");
  return (osc.value - decay.value) / kPi;
}

}  // namespace

std::vector<double> j_sequence(int nmax, double x) {
  check_order(nmax);
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("Bessel J needs finite x >= 0");
  std::vector<double> out(nmax + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double top = std::max<double>(nmax, x);
  int m = static_cast<int>(top + 30 + 10 * std::cbrt(top));
  m += m % 2;
  double next = 0.0, cur = 1e-30, sum = 0.0;
  for (int k = m; k >= 1; --k) {
    // cur = b_k, next = b_{k+1}
    if (k <= nmax) out[k] = cur;
    if (k % 2 == 0) sum += 2 * cur;
    const double prev = 2.0 * k / x * cur - next;
    next = cur;
    cur = prev;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      sum *= 1e-250;
      for (int i = k; i <= nmax; ++i) out[i] *= 1e-250;
    }
  }
  out[0] = cur;
  sum += cur;
  for (double& v : out) v /= sum;
  return out;
}

double j(int n, double x) { return j_sequence(n, x)[n]; }

double j_prime(int n, double x) {
  const std::vector<double> s = j_sequence(n + 1, x);
  return n == 0 ? -s[1] : 0.5 * (s[n - 1] - s[n + 1]);
}

std::vector<double> y_sequence(int nmax, double x) {
  check_order(nmax);
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("Bessel Y needs finite x > 0");
  std::vector<double> out(nmax + 1);
  if (x >= kHankelSwitch) {
    out[0] = hankel(0, x).second;
    if (nmax >= 1) out[1] = hankel(1, x).second;
  } else {
    out[0] = y_integral(0, x);
    if (nmax >= 1) out[1] = y_integral(1, x);
  }
  for (int k = 1; k < nmax; ++k) {
    if (!std::isfinite(out[k]) || std::abs(out[k]) > 1e300) {
      out[k + 1] = -std::numeric_limits<double>::infinity();
      continue;
    }
    out[k + 1] = 2.0 * k / x * out[k] - out[k - 1];
  }
  return out;
}

double y(int n, double x) { return y_sequence(n, x)[n]; }

std::vector<double> j_zeros(int n, double x_max) {
  check_order(n);
  std::vector<double> zeros;
  // J_n is positive on (0, j_{n,1}) and j_{n,1} > n; consecutive zeros are
  // at least ~3.1 apart, so a pi/4 grid brackets each one separately.
  const double step = kPi / 4;
  double a = n == 0 ? 0.0 : static_cast<double>(n);
  double fa = n == 0 ? 1.0 : j(n, a);
  auto fdf = [n](double x) {
    const std::vector<double> s = j_sequence(n + 1, x);
    return std::pair{s[n], n == 0 ? -s[1] : 0.5 * (s[n - 1] - s[n + 1])};
  };
  roots::Options opts;
  opts.x_tol = 4 * std::numeric_limits<double>::epsilon();
  while (a < x_max) {
    const double b = std::min(a + step, x_max);
    const double fb = j(n, b);
    if (fb == 0.0) {
      zeros.push_back(b);
    } else if ((fa > 0) != (fb > 0) && fa != 0.0) {
      const roots::Result r = roots::safeguarded_newton(fdf, a, b, 0.5 * (a + b), opts);
      if (!(std::abs(r.f) < 1e-12)) {
        throw ConvergenceError("J_" + std::to_string(n) + " zero near " + std::to_string(r.x) +
                               " not resolved below 1e-12");
      }
      zeros.push_back(r.x);
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

double cross_product(int n, double a, double b, double k) {
  const double xa = a * k, xb = b * k;
  const std::vector<double> ja = j_sequence(n, xa), jb = j_sequence(n, xb);
  const std::vector<double> ya = y_sequence(n, xa), yb = y_sequence(n, xb);
  const double Ja = ja[n], Jb = jb[n], Ya = ya[n], Yb = yb[n];
  const double mb = std::hypot(Jb, Yb);
  // Y_n(ak) -> -inf: the cross product is dominated by J_n(bk).
  if (!std::isfinite(Ya)) return Jb / mb;
  const double ma = std::hypot(Ja, Ya);
  if (!std::isfinite(Yb)) return -Ja / ma;  // only when Y_n(ak) also diverges
  return (Ja / ma) * (Yb / mb) - (Jb / mb) * (Ya / ma);
}

std::vector<double> cross_product_zeros(int n, double a, double b, double k_max) {
  check_order(n);
  if (!(a > 0.0) || !(b > a)) throw DomainError("cross product needs 0 < a < b");
  std::vector<double> zeros;
  // No eigenvalue of order n lies below j_{n,1}/b > n/b.
  const double step = kPi / (b - a) / 8;
  double k = n == 0 ? 0.25 * step : n / b;
  double fk = cross_product(n, a, b, k);
  roots::Options opts;
  opts.x_tol = 4 * std::numeric_limits<double>::epsilon();
  while (k < k_max) {
    const double k2 = std::min(k + step, k_max);
    const double f2 = cross_product(n, a, b, k2);
    if (f2 == 0.0) {
      zeros.push_back(k2);
    } else if (fk != 0.0 && (fk > 0) != (f2 > 0)) {
      const roots::Result r = roots::brent([&](double x) { return cross_product(n, a, b, x); }, k, k2, opts);
      if (!r.converged) throw ConvergenceError("annulus root did not converge");
      zeros.push_back(r.x);
    }
    k = k2;
    fk = f2;
  }
  return zeros;
}

}  // namespace confgas::bessel
