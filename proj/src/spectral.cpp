#include "confgas/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <thread>

#include "confgas/bessel.hpp"
#include "confgas/error.hpp"
#include "confgas/roots.hpp"

namespace confgas {
namespace {

constexpr double kPi = std::numbers::pi;

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

void check_budget(double area, double cutoff, const SpectrumOptions& opts) {
  // Li-Yau: at most Omega mu / pi states below mu.
  const double bound = area * cutoff / kPi;
  if (bound > static_cast<double>(opts.max_states)) {
    throw ResourceError("spectrum below cutoff " + std::to_string(cutoff) + " may hold up to " +
                        std::to_string(static_cast<long long>(bound)) + " states, above the cap of " +
                        std::to_string(opts.max_states));
  }
}

void sort_levels(std::vector<Level>& levels) {
  std::stable_sort(levels.begin(), levels.end(), [](const Level& x, const Level& y) { return x.mu < y.mu; });
}

// Completeness: the count below the cutoff must sit within the remainder
// envelope of the two-term Weyl estimate.
void certify(const Spectrum& s, const PlanarDomain& dom) {
  const double count = static_cast<double>(s.state_count());
  const double weyl = weyl_count(dom, s.cutoff);
  const double envelope = 10.0 + 3.0 * std::cbrt(dom.area() * s.cutoff);
  if (std::abs(count - weyl) > envelope) {
    throw ConvergenceError("spectrum count " + std::to_string(count) + " departs from the Weyl estimate " +
                           std::to_string(weyl) + " by more than " + std::to_string(envelope));
  }
}

// Rational side ratio a/b = p/q with small p, q, if any.
std::optional<std::pair<std::uint64_t, std::uint64_t>> rational_ratio(double a, double b) {
  for (std::uint64_t q = 1; q <= 1000; ++q) {
    const double p = std::round(a / b * static_cast<double>(q));
    if (p < 1 || p > 1e6) continue;
    if (std::abs(a * static_cast<double>(q) - b * p) <= 1e-14 * a * static_cast<double>(q)) {
      return std::pair{static_cast<std::uint64_t>(p), q};
    }
  }
  return std::nullopt;
}

// Runs per_order(nu) for nu = 0, 1, ... until it returns an empty list,
// using up to `threads` workers on consecutive blocks of orders.
template <class F>
std::vector<Level> by_angular_order(int threads, int nu_bound, F per_order) {
  std::vector<std::vector<Level>> rows(nu_bound + 1);
  const int workers = std::max(1, std::min(threads, nu_bound + 1));
  if (workers == 1) {
    for (int nu = 0; nu <= nu_bound; ++nu) {
      rows[nu] = per_order(nu);
      if (rows[nu].empty()) break;
    }
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int nu = w; nu <= nu_bound; nu += workers) rows[nu] = per_order(nu);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::vector<Level> out;
  for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  sort_levels(out);
  return out;
}

template <class T>
long double neumaier_add(long double& sum, long double& comp, T term) {
  const long double t = sum + term;
  if (std::abs(sum) >= std::abs(static_cast<long double>(term))) {
    comp += (sum - t) + term;
  } else {
    comp += (term - t) + sum;
  }
  sum = t;
  return sum;
}

}  // namespace

std::size_t Spectrum::state_count() const {
  std::size_t n = 0;
  for (const Level& l : levels) n += static_cast<std::size_t>(l.multiplicity);
  return n;
}

double weyl_count(const PlanarDomain& dom, double cutoff) {
  return dom.area() * cutoff / (2 * kPi) - dom.perimeter() * std::sqrt(2 * cutoff) / (4 * kPi);
}

double theta_cutoff(double t, double rel) {
  check_positive(t, "t");
  check_positive(rel, "rel");
  // (s + 1) e^{-s} <= rel / 2 with s = cutoff t.
  double s = std::max(1.0, -std::log(rel / 2));
  for (int i = 0; i < 100 && (s + 1) * std::exp(-s) > rel / 2; ++i) s += std::log1p(s);
  return s / t;
}

Spectrum rectangle_spectrum(double a, double b, double cutoff, const SpectrumOptions& opts) {
  check_positive(a, "side a");
  check_positive(b, "side b");
  check_positive(cutoff, "cutoff");
  check_budget(a * b, cutoff, opts);
  const double scale = kPi * kPi / 2;
  const auto n_max = static_cast<long long>(a * std::sqrt(cutoff / scale)) + 1;
  const auto ratio = rational_ratio(a, b);

  std::vector<Level> levels;
  if (ratio) {
    // a/b = p/q: mu = scale (n^2 q^2 + m^2 p^2) / (a q)^2, merged on the exact integer key.
    const auto [p, q] = *ratio;
    std::map<std::uint64_t, Level> merged;
    for (long long n = 1; n <= n_max; ++n) {
      for (long long m = 1;; ++m) {
        const double mu = scale * (double(n * n) / (a * a) + double(m * m) / (b * b));
        if (mu > cutoff) break;
        const std::uint64_t key = std::uint64_t(n * n) * q * q + std::uint64_t(m * m) * p * p;
        auto [it, fresh] = merged.try_emplace(key, Level{mu, 0});
        ++it->second.multiplicity;
      }
    }
    for (auto& [key, level] : merged) levels.push_back(level);
  } else {
    std::vector<double> mus;
    for (long long n = 1; n <= n_max; ++n) {
      for (long long m = 1;; ++m) {
        const double mu = scale * (double(n * n) / (a * a) + double(m * m) / (b * b));
        if (mu > cutoff) break;
        mus.push_back(mu);
      }
    }
    std::sort(mus.begin(), mus.end());
    for (double mu : mus) {
      if (!levels.empty() && mu - levels.back().mu <= 1e-12 * mu) {
        ++levels.back().multiplicity;
      } else {
        levels.push_back({mu, 1});
      }
    }
  }
  sort_levels(levels);
  Spectrum s{std::move(levels), cutoff, shape::Rectangle{a, b}, a * b / kPi};
  certify(s, make_domain(shape::Rectangle{a, b}));
  return s;
}

Spectrum disk_spectrum(double R, double cutoff, const SpectrumOptions& opts) {
  check_positive(R, "radius");
  check_positive(cutoff, "cutoff");
  check_budget(kPi * R * R, cutoff, opts);
  const double x_max = R * std::sqrt(2 * cutoff);
  // j_{nu,1} > nu, so orders above x_max contribute nothing.
  std::vector<Level> levels = by_angular_order(opts.threads, static_cast<int>(x_max), [&](int nu) {
    std::vector<Level> row;
    for (double j : bessel::j_zeros(nu, x_max)) {
      const double mu = j * j / (2 * R * R);
      if (mu <= cutoff) row.push_back({mu, nu == 0 ? 1 : 2});
    }
    return row;
  });
  Spectrum s{std::move(levels), cutoff, shape::Disk{R}, R * R};
  certify(s, make_domain(shape::Disk{R}));
  return s;
}

Spectrum annulus_spectrum(double R_inner, double R_outer, double cutoff, const SpectrumOptions& opts) {
  check_positive(R_inner, "inner radius");
  check_positive(cutoff, "cutoff");
  if (!(R_outer > R_inner) || !std::isfinite(R_outer)) throw DomainError("annulus needs 0 < Ri < Ro");
  const double area = kPi * (R_outer * R_outer - R_inner * R_inner);
  check_budget(area, cutoff, opts);
  const double k_max = std::sqrt(2 * cutoff);
  // The lowest root of order nu exceeds j_{nu,1}/Ro > nu/Ro.
  std::vector<Level> levels =
      by_angular_order(opts.threads, static_cast<int>(k_max * R_outer), [&](int nu) {
        std::vector<Level> row;
        for (double k : bessel::cross_product_zeros(nu, R_inner, R_outer, k_max)) {
          const double mu = k * k / 2;
          if (mu <= cutoff) row.push_back({mu, nu == 0 ? 1 : 2});
        }
        return row;
      });
  Spectrum s{std::move(levels), cutoff, shape::Annulus{R_inner, R_outer}, area / kPi};
  certify(s, make_domain(shape::Annulus{R_inner, R_outer}));
  return s;
}

Spectrum spectrum_for(const ShapeSpec& shape, double cutoff, const SpectrumOptions& opts) {
  validate(shape);
  return std::visit(
      [&](const auto& s) -> Spectrum {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, shape::Rectangle>) {
          return rectangle_spectrum(s.a, s.b, cutoff, opts);
        } else if constexpr (std::is_same_v<S, shape::Disk>) {
          return disk_spectrum(s.radius, cutoff, opts);
        } else if constexpr (std::is_same_v<S, shape::Annulus>) {
          return annulus_spectrum(s.inner, s.outer, cutoff, opts);
        } else {
          throw GeometryError("no exact spectrum for polygons; use rect, disk or annulus");
        }
      },
      shape);
}

Spectrum custom_spectrum(std::vector<Level> levels, double cutoff, double tail_bound_coeff) {
  check_positive(cutoff, "cutoff");
  if (!(tail_bound_coeff >= 0.0)) throw DomainError("tail bound coefficient must be non-negative");
  for (const Level& l : levels) {
    if (!(l.mu > 0.0) || l.mu > cutoff) throw DomainError("levels must lie in (0, cutoff]");
    if (l.multiplicity < 1) throw DomainError("multiplicity must be at least 1");
  }
  sort_levels(levels);
  return Spectrum{std::move(levels), cutoff, std::nullopt, tail_bound_coeff};
}

ThetaResult theta_sum(const Spectrum& spec, double t) {
  check_positive(t, "t");
  long double sum = 0, comp = 0;
  for (auto it = spec.levels.rbegin(); it != spec.levels.rend(); ++it) {
    neumaier_add(sum, comp, it->multiplicity * std::exp(-it->mu * t));
  }
  ThetaResult r;
  r.value = static_cast<double>(sum + comp);
  r.truncation_bound = spec.tail_bound_coeff * (spec.cutoff + 1 / t) * std::exp(-spec.cutoff * t);
  if (r.truncation_bound > 1e-6 * r.value) {
    throw TruncationError("theta tail bound " + std::to_string(r.truncation_bound) +
                          " exceeds 1e-6 of the value; raise the cutoff above " + std::to_string(spec.cutoff));
  }
  return r;
}

ExactThermo exact_thermo(StatKind stat, const Spectrum& spec, double N, double T) {
  check_positive(N, "particle number");
  check_positive(T, "temperature");
  if (spec.levels.empty()) throw DomainError("empty spectrum");
  if (spec.cutoff < 40 * T) {
    throw TruncationError("spectrum cutoff " + std::to_string(spec.cutoff) + " is below 40 T = " +
                          std::to_string(40 * T));
  }
  const double beta = 1 / T;
  const bool bose = stat == StatKind::Bose;
  const double x0 = beta * spec.levels.front().mu;

  // Occupation 1/(e^x -+ 1) with x = beta mu - u.
  auto occ = [bose](double x) {
    if (x > 700) return 0.0;
    return bose ? 1 / std::expm1(x) : 1 / (std::exp(x) + 1);
  };
  auto number = [&](double u) {
    long double n = 0, dn = 0;
    for (auto it = spec.levels.rbegin(); it != spec.levels.rend(); ++it) {
      const double f = occ(beta * it->mu - u);
      n += it->multiplicity * static_cast<long double>(f);
      dn += it->multiplicity * static_cast<long double>(f) * (bose ? 1 + f : 1 - f);
    }
    return std::pair{static_cast<double>(n - N), static_cast<double>(dn)};
  };

  // Upper bracket. Bose: below the ground level with occupation <= 1e10.
  double u_hi;
  if (bose) {
    u_hi = x0 - std::max(1e-10, 1e-15 * x0);
    if (number(u_hi).first < 0) {
      throw NoBracketError("N needs a ground-state occupation above 1e10 (saturated Bose spectrum)");
    }
  } else {
    u_hi = std::max(x0, 0.0) + 1;
    while (number(u_hi).first < 0) {
      u_hi += std::max(1.0, std::abs(u_hi));
      if (u_hi > beta * spec.cutoff - 40) {
        throw TruncationError("N fills the spectrum up to its cutoff; enumerate further");
      }
    }
  }
  double u_lo = std::min(u_hi - 1, std::log(N) - x0);
  while (number(u_lo).first > 0) u_lo -= 2 + std::abs(u_lo);

  roots::Options ropt;
  ropt.x_tol = 4 * std::numeric_limits<double>::epsilon();
  ropt.f_tol = 1e-13 * N;
  const roots::Result r = roots::safeguarded_newton(number, u_lo, u_hi, 0.5 * (u_lo + u_hi), ropt);
  const double u = r.x;

  long double lnxi = 0, energy = 0, count = 0;
  for (auto it = spec.levels.rbegin(); it != spec.levels.rend(); ++it) {
    const double x = beta * it->mu - u;
    const double f = occ(x);
    const double ln_term = bose ? -std::log1p(-std::exp(-x)) : (x > 0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x)));
    lnxi += it->multiplicity * static_cast<long double>(ln_term);
    energy += it->multiplicity * static_cast<long double>(it->mu) * f;
    count += it->multiplicity * static_cast<long double>(f);
  }

  // Tails above the cutoff: occupation and ln terms are at most K e^{-beta mu}
  // with K = z/(1 - z e^{-beta c}) (Bose) or z (Fermi); the state density is
  // at most C = tail_bound_coeff.
  const double c = spec.cutoff;
  const double xc = beta * c - u;
  const double K = bose ? std::exp(u) / -std::expm1(-xc) : std::exp(u);
  const double ec = std::exp(-beta * c);
  const double C = spec.tail_bound_coeff;
  const double tail_n = C * K * (c + T) * ec;
  const double tail_u = C * K * (c * c + c * T + T * T) * ec;
  ExactThermo out;
  out.z = std::exp(u);
  out.lnXi = static_cast<double>(lnxi);
  out.U = static_cast<double>(energy);
  out.N = static_cast<double>(count);
  out.iterations = r.iterations;
  if (tail_n > 1e-10 * out.N || tail_n > 1e-10 * out.lnXi || tail_u > 1e-10 * out.U) {
    throw TruncationError("levels above the cutoff contribute more than 1e-10 relative; enumerate further");
  }
  return out;
}

}  // namespace confgas
