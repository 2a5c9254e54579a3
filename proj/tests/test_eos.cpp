#include <cmath>
#include <numbers>
#include <random>

#include "confgas/eos.hpp"
#include "doctest.h"

using namespace confgas;
using doctest::Approx;
constexpr double kPi = std::numbers::pi;

namespace {

double T_for_ratio(const PlanarDomain& dom, double ratio) {
  const double lambda = ratio * std::sqrt(dom.area());
  return 2 * kPi / (lambda * lambda);
}

// N(z) assembled from the coefficients without the sign check.
double raw_number_2d(StatKind stat, const PlanarDomain& dom, double lambda, double z) {
  const Expansion c = planar_coefficients(dom, lambda);
  return c.bulk * h(stat, orders::one, z) + c.boundary * h(stat, orders::half, z) +
         c.topology * h(stat, orders::zero, z);
}

}  // namespace

TEST_CASE("grand potential and particle number reduce to free space") {
  const PlanarDomain free = PlanarDomain::free_space(7.0);
  for (StatKind stat : {StatKind::Bose, StatKind::Fermi}) {
    for (double z : {1e-3, 0.3, 0.9}) {
      CHECK(log_grand_potential_2d(stat, free, 0.5, z) == Approx(7.0 / 0.25 * h(stat, orders::two, z)));
      CHECK(particle_number_2d(stat, free, 0.5, z) == Approx(7.0 / 0.25 * h(stat, orders::one, z)));
      const TubeDomain tube(free, 500.0);
      CHECK(log_grand_potential_tube(stat, tube, 0.5, z) ==
            Approx(500 * 7.0 / 0.125 * h(stat, orders::five_halves, z)));
      CHECK(particle_number_tube(stat, tube, 0.5, z) ==
            Approx(500 * 7.0 / 0.125 * h(stat, orders::three_halves, z)));
    }
  }
}

TEST_CASE("composition of the three terms") {
  const PlanarDomain disk = make_domain(shape::Disk{1});
  const double lambda = 0.5, z = 0.5;
  const double expected = kPi / 0.25 * h(StatKind::Bose, orders::two, z) -
                          0.25 * (2 * kPi / 0.5) * h(StatKind::Bose, orders::three_halves, z) +
                          h(StatKind::Bose, orders::one, z) / 6.0;
  CHECK(log_grand_potential_2d(StatKind::Bose, disk, lambda, z) == Approx(expected).epsilon(1e-14));

  // r = 1 kills the connectivity term.
  const PlanarDomain ann = make_domain(shape::Annulus{1, 2});
  const double no_top = ann.area() / 0.25 * h(StatKind::Fermi, orders::one, z) -
                        0.25 * ann.perimeter() / 0.5 * h(StatKind::Fermi, orders::half, z);
  CHECK(particle_number_2d(StatKind::Fermi, ann, 0.5, z) == Approx(no_top).epsilon(1e-14));

  // Tube over a disk in the Fermi z > 1 regime.
  const TubeDomain tube(disk, 100.0);
  const double tz = 2.0;
  const double tube_expected = 100 * kPi / 0.125 * h(StatKind::Fermi, orders::five_halves, tz) -
                               0.25 * 100 * 2 * kPi / 0.25 * h(StatKind::Fermi, orders::two, tz) +
                               100 / 0.5 / 6.0 * h(StatKind::Fermi, orders::three_halves, tz);
  CHECK(log_grand_potential_tube(StatKind::Fermi, tube, 0.5, tz) == Approx(tube_expected).epsilon(1e-14));
}

TEST_CASE("small-z linearisation recovers the Weyl state sum") {
  const PlanarDomain rect = make_domain(shape::Rectangle{3, 2});
  const double lambda = 0.3, z = 1e-9;
  CHECK(particle_number_2d(StatKind::Bose, rect, lambda, z) / z ==
        Approx(weyl_state_sum(rect, lambda)).epsilon(1e-8));
  const TubeDomain tube(rect, 1000.0);
  const double lin = 1000 * 6 / std::pow(lambda, 3) - 0.25 * 1000 * 10 / (lambda * lambda) + 1000 / (6 * lambda);
  CHECK(particle_number_tube(StatKind::Fermi, tube, lambda, z) / z == Approx(lin).epsilon(1e-8));
}

TEST_CASE("negative results are model errors") {
  const PlanarDomain rect = make_domain(shape::Rectangle{1, 1});
  CHECK_THROWS_AS(particle_number_2d(StatKind::Bose, rect, 3.0, 0.5), ModelError);
  CHECK_THROWS_AS(log_grand_potential_2d(StatKind::Bose, rect, 3.0, 0.5), ModelError);
  CHECK_THROWS_AS(particle_number_2d(StatKind::Bose, rect, 0.1, 1.5), DomainError);
}

TEST_CASE("solve_fugacity closed-form inversions") {
  const PlanarDomain free = PlanarDomain::free_space(10.0);
  // N lambda^2 / Omega = 0.1 at T = 2 pi (lambda = 1).
  const Solution b = solve_fugacity(StatKind::Bose, free, 1.0, 2 * kPi);
  CHECK(b.state.z == Approx(1 - std::exp(-0.1)).epsilon(1e-12));
  CHECK(b.state.z == Approx(0.0951626).epsilon(1e-6));
  CHECK(b.state.lambda == thermal_wavelength(2 * kPi));

  const Solution f = solve_fugacity(StatKind::Fermi, free, 10.0 * std::log(2.0), 2 * kPi);
  CHECK(f.state.z == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_fugacity: bose in a square box") {
  const PlanarDomain box = make_domain(shape::Rectangle{10, 10});
  const Solution s = solve_fugacity(StatKind::Bose, box, 10.0, 1.0);
  CHECK(s.state.z > 0.0);
  CHECK(s.state.z < 1.0);
  // The Boltzmann seed N lambda^2 / Omega is 0.628; quantum statistics and
  // the boundary term both push the root around it.
  CHECK(s.state.z == Approx(0.628).epsilon(0.25));
  CHECK(std::abs(particle_number_2d(StatKind::Bose, box, s.state.lambda, s.state.z) - 10.0) <= 1e-11);
}

TEST_CASE("solve_fugacity: fermi extension beyond z = 1") {
  const PlanarDomain rect = make_domain(shape::Rectangle{4, 1});
  const double T = T_for_ratio(rect, 0.1);
  const Solution s = solve_fugacity(StatKind::Fermi, rect, 100.0, T);
  CHECK(s.state.z > 1.0);
  CHECK(s.validity.fermi_extension_used);
  CHECK(s.validity.has_warning("fermi_extension"));
  CHECK(s.validity.ratio_wavelength == Approx(0.1).epsilon(1e-12));
  const double residual = particle_number_2d(StatKind::Fermi, rect, s.state.lambda, s.state.z) - 100.0;
  CHECK(std::abs(residual) < 1e-12 * 100.0);

  // Independent dense-grid scan: exactly one sign change, bracketing the root.
  int changes = 0;
  double prev = particle_number_2d(StatKind::Fermi, rect, s.state.lambda, 1e-3) - 100.0;
  double lo = 0, hi = 0;
  for (int i = 1; i <= 4000; ++i) {
    const double z = 1e-3 * std::pow(1e4 / 1e-3, i / 4000.0);
    const double cur = particle_number_2d(StatKind::Fermi, rect, s.state.lambda, z) - 100.0;
    if ((prev < 0) != (cur < 0)) {
      ++changes;
      hi = z;
      lo = 1e-3 * std::pow(1e4 / 1e-3, (i - 1) / 4000.0);
    }
    prev = cur;
  }
  CHECK(changes == 1);
  CHECK(s.state.z >= lo);
  CHECK(s.state.z <= hi);
}

TEST_CASE("solve_fugacity error paths") {
  const PlanarDomain disk = make_domain(shape::Disk{1});
  CHECK_THROWS_AS(solve_fugacity(StatKind::Bose, disk, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(solve_fugacity(StatKind::Bose, disk, 1.0, -1.0), DomainError);
  // Wavelength too large for the container: Weyl sum negative.
  CHECK_THROWS_AS(solve_fugacity(StatKind::Bose, make_domain(shape::Rectangle{1, 1}), 1.0, 0.5), ModelError);

  // Two holes: the connectivity term drives N to -infinity as z -> 1, so a
  // large N cannot be reached before the condensation cap.
  shape::PolygonWithHoles holes{{{0, 0}, {4, 0}, {4, 4}, {0, 4}},
                                {{{1, 1}, {1.5, 1}, {1.5, 1.5}, {1, 1.5}}, {{2.5, 2.5}, {3, 2.5}, {3, 3}, {2.5, 3}}}};
  const PlanarDomain two_holes = make_domain(holes);
  CHECK_THROWS_AS(solve_fugacity(StatKind::Bose, two_holes, 1e4, 20.0), NoBracketError);

  // Fermi cap.
  SolverOptions capped;
  capped.specfun.z_max = 5.0;
  CHECK_THROWS_AS(solve_fugacity(StatKind::Fermi, disk, 1e3, 10.0, capped), NoBracketError);
}

TEST_CASE("solve_fugacity detects a non-monotone particle number") {
  // Long thin rectangle: the boundary term makes N(z) dip just below z = 1.
  const PlanarDomain strip = make_domain(shape::Rectangle{20, 1});
  const double T = T_for_ratio(strip, 0.1);
  const double lambda = thermal_wavelength(T);
  double n_max = 0, n_min = 0;
  bool rising = true;
  double prev = raw_number_2d(StatKind::Bose, strip, lambda, 0.9);
  for (int i = 1; i <= 20000; ++i) {
    const double eps = 0.1 * std::pow(1e-11, i / 20000.0);
    const double cur = raw_number_2d(StatKind::Bose, strip, lambda, 1 - eps);
    if (rising && cur < prev) {
      n_max = prev;
      rising = false;
    } else if (!rising && cur > prev && n_min == 0) {
      n_min = prev;
    }
    prev = cur;
  }
  REQUIRE(n_max > 0);
  REQUIRE(n_min < n_max);
  // Above the local maximum the march has to cross the decreasing branch.
  CHECK_THROWS_AS(solve_fugacity(StatKind::Bose, strip, 1.01 * n_max, T), NonMonotoneError);
  // Below it the lowest root sits on the increasing branch and is accepted.
  const double mid = n_min > 0 ? 0.5 * (n_min + n_max) : 0.99 * n_max;
  const Solution s = solve_fugacity(StatKind::Bose, strip, mid, T);
  CHECK(raw_number_2d(StatKind::Bose, strip, lambda, s.state.z) == Approx(mid).epsilon(1e-12));
  CHECK(raw_number_2d(StatKind::Bose, strip, lambda, s.state.z * (1 + 1e-6)) > mid);
  CHECK_NOTHROW(solve_fugacity(StatKind::Bose, strip, 0.5 * n_max, T));
}

TEST_CASE("validity report thresholds") {
  const PlanarDomain disk = make_domain(shape::Disk{1});
  const double T = T_for_ratio(disk, 0.3);
  const Solution s = solve_fugacity(StatKind::Bose, disk, 5.0, T);
  CHECK(s.validity.ratio_wavelength == Approx(0.3).epsilon(1e-12));
  REQUIRE(s.validity.has_warning("wavelength"));
  CHECK(s.validity.warnings.front().message.find("0.2") != std::string::npos);

  SolverOptions loose;
  loose.thresholds.wavelength = 0.5;
  loose.thresholds.boundary = 10.0;
  const Solution q = solve_fugacity(StatKind::Bose, disk, 5.0, T, loose);
  CHECK_FALSE(q.validity.has_warnings());

  const TubeDomain tube(disk, 20.0);
  const Solution t = solve_fugacity(StatKind::Bose, tube, 1000.0, 400.0);
  CHECK(t.validity.has_warning("tube_aspect"));
}

TEST_CASE("pressure") {
  const PlanarDomain free = PlanarDomain::free_space(50.0);
  // Classical limit: P Omega -> N k T.
  const Solution s = solve_fugacity(StatKind::Bose, free, 1e-4, 1.0);
  CHECK(pressure(StatKind::Bose, free, s.state) * 50.0 == Approx(1e-4).epsilon(1e-4));

  // Confinement lowers ln Xi, hence the pressure, at equal (lambda, z).
  const PlanarDomain disk = make_domain(shape::Disk{4});
  const PlanarDomain disk_free = PlanarDomain::free_space(disk.area());
  for (StatKind stat : {StatKind::Bose, StatKind::Fermi}) {
    for (double z : {0.1, 0.5, 0.95}) {
      const GasState st{z, thermal_wavelength(20.0), 20.0, 0.0, stat};
      CHECK(pressure(stat, disk, st) < pressure(stat, disk_free, st));
    }
  }
  // At equal (N, T) this holds for Bose; for Fermi the boundary term raises
  // z enough to reverse it.
  const Solution cb = solve_fugacity(StatKind::Bose, disk, 30.0, 20.0);
  const Solution fb = solve_fugacity(StatKind::Bose, disk_free, 30.0, 20.0);
  CHECK(pressure(StatKind::Bose, disk, cb.state) < pressure(StatKind::Bose, disk_free, fb.state));
  const Solution cf = solve_fugacity(StatKind::Fermi, disk, 30.0, 20.0);
  const Solution ff = solve_fugacity(StatKind::Fermi, disk_free, 30.0, 20.0);
  CHECK(pressure(StatKind::Fermi, disk, cf.state) > pressure(StatKind::Fermi, disk_free, ff.state));

  const TubeDomain tube(make_domain(shape::Disk{1}), 200.0);
  const Solution t = solve_fugacity(StatKind::Fermi, tube, 1e3, 50.0);
  CHECK(pressure(StatKind::Fermi, tube, t.state) ==
        Approx(50.0 * log_grand_potential_tube(StatKind::Fermi, tube, t.state.lambda, t.state.z) /
               tube.volume()));
}

TEST_CASE("property: residual identity, correction signs, scale covariance, monotonicity") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> side(1.0, 8.0);
  std::uniform_real_distribution<double> ratio(0.02, 0.15);
  std::uniform_real_distribution<double> logn(0.0, 3.0);
  std::uniform_real_distribution<double> sc(0.2, 5.0);
  for (int i = 0; i < 60; ++i) {
    const StatKind stat = i % 2 ? StatKind::Fermi : StatKind::Bose;
    const PlanarDomain dom = (i % 3 == 0) ? make_domain(shape::Disk{side(rng)})
                                          : make_domain(shape::Rectangle{side(rng), side(rng)});
    const double T = T_for_ratio(dom, ratio(rng));
    const double N = std::pow(10.0, logn(rng));
    CAPTURE(i);
    CAPTURE(N);
    CAPTURE(T);
    CAPTURE(dom.area());
    CAPTURE(dom.perimeter());
    Solution s;
    try {
      s = solve_fugacity(stat, dom, N, T);
    } catch (const NonMonotoneError&) {
      // Only acceptable when N(z) really dips before reaching N.
      bool dips = false;
      double prev = raw_number_2d(stat, dom, thermal_wavelength(T), 1e-3);
      for (int j = 1; j <= 20000 && prev < N; ++j) {
        const double z = stat == StatKind::Bose ? 1 - (1 - 1e-3) * std::pow(1e-12, j / 20000.0)
                                                : 1e-3 * std::pow(1e11, j / 20000.0);
        const double cur = raw_number_2d(stat, dom, thermal_wavelength(T), z);
        if (cur < prev) dips = true;
        prev = cur;
      }
      CHECK(dips);
      continue;
    }
    CHECK(std::abs(particle_number_2d(stat, dom, s.state.lambda, s.state.z) - N) <= 1e-12 * N);

    // Both corrections subtract for r = 0 at equal (lambda, z).
    const PlanarDomain free = PlanarDomain::free_space(dom.area());
    CHECK(log_grand_potential_2d(stat, dom, s.state.lambda, s.state.z) <
          log_grand_potential_2d(stat, free, s.state.lambda, s.state.z));
    CHECK(-0.25 * dom.perimeter() / s.state.lambda * h(stat, orders::three_halves, s.state.z) < 0.0);
    CHECK(dom.connectivity() * h(stat, orders::one, s.state.z) > 0.0);  // r = 0: +1/6, smaller in size
    CHECK(0.25 * dom.perimeter() / s.state.lambda * h(stat, orders::three_halves, s.state.z) >
          dom.connectivity() * h(stat, orders::one, s.state.z));

    // Lengths x s, T / s^2.
    const double k = sc(rng);
    const Solution scaled = solve_fugacity(stat, dom.scaled(k), N, T / (k * k));
    CHECK(scaled.state.z == Approx(s.state.z).epsilon(1e-10));
    CHECK(scaled.validity.ratio_boundary == Approx(s.validity.ratio_boundary).epsilon(1e-9));
    CHECK(scaled.validity.ratio_wavelength == Approx(s.validity.ratio_wavelength).epsilon(1e-12));

    if (!s.validity.has_warning("wavelength") && !s.validity.has_warning("boundary")) {
      double prev = particle_number_2d(stat, dom, s.state.lambda, 0.01 * s.state.z);
      for (int j = 1; j <= 40; ++j) {
        const double z = s.state.z * std::pow(100.0, j / 40.0 - 1.0) * (stat == StatKind::Bose ? 1.0 : 1.5);
        if (stat == StatKind::Bose && z >= 1.0) break;
        const double cur = particle_number_2d(stat, dom, s.state.lambda, z);
        CHECK(cur > prev);
        prev = cur;
      }
    }
  }
}

TEST_CASE("tube solve: residual and monotone N") {
  const TubeDomain tube(make_domain(shape::Disk{1}), 100.0);
  const double lambda = 0.5;
  double prev = 0.0;
  for (int i = 1; i < 400; ++i) {
    const double z = i / 400.0;
    const double n = particle_number_tube(StatKind::Bose, tube, lambda, z);
    CHECK(n > prev);
    prev = n;
  }
  const double T = 2 * kPi / (lambda * lambda);
  for (double N : {10.0, 1e3, 5e3}) {
    const Solution s = solve_fugacity(StatKind::Bose, tube, N, T);
    CHECK(std::abs(particle_number_tube(StatKind::Bose, tube, lambda, s.state.z) - N) <= 1e-12 * N);
  }
  // Closer to z = 1 the spacing of doubles in z limits the attainable residual.
  CHECK_THROWS_AS(solve_fugacity(StatKind::Bose, tube, 5e4, T), AccuracyError);
}
