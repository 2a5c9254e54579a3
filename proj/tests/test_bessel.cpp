#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "confgas/bessel.hpp"
#include "confgas/error.hpp"
#include "doctest.h"

using namespace confgas;
using doctest::Approx;

TEST_CASE("J against boost") {
  double worst = 0;
  for (double x : {1e-6, 0.01, 0.3, 1.0, 2.404825557695773, 7.5, 19.9, 24.9, 25.1, 40.0, 77.7, 150.0}) {
    const auto seq = bessel::j_sequence(120, x);
    for (int n = 0; n <= 120; ++n) {
      const double ref = boost::math::cyl_bessel_j(n, x);
      worst = std::max(worst, std::abs(seq[n] - ref) / std::max(1.0, std::abs(ref)) );
      if (std::abs(ref) > 1e-280) {
        // Relative accuracy wherever the value is representable and not near a zero.
        if (std::abs(ref) > 1e-3) CHECK(seq[n] == Approx(ref).epsilon(1e-12));
      }
    }
  }
  CHECK(worst < 1e-14);
  CHECK(bessel::j(0, 0.0) == 1.0);
  CHECK(bessel::j(3, 0.0) == 0.0);
}

TEST_CASE("Y against boost") {
  for (double x : {1e-3, 0.05, 0.5, 1.0, 3.0, 8.9, 15.0, 24.99, 25.0, 31.0, 60.0, 120.0}) {
    const auto seq = bessel::y_sequence(60, x);
    for (int n = 0; n <= 60; ++n) {
      const double ref = boost::math::cyl_neumann(n, x);
      CAPTURE(x);
      CAPTURE(n);
      if (!std::isfinite(ref) || std::abs(ref) > 1e300) continue;
      CHECK(std::abs(seq[n] - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
    }
  }
  CHECK_THROWS_AS(bessel::y(0, 0.0), DomainError);
}

TEST_CASE("derivative and Wronskian") {
  for (double x : {0.7, 5.0, 33.0}) {
    for (int n : {0, 1, 4, 10}) {
      const double h = 1e-5;
      const double fd = (bessel::j(n, x + h) - bessel::j(n, x - h)) / (2 * h);
      CHECK(bessel::j_prime(n, x) == Approx(fd).epsilon(1e-8));
      // J_{n+1} Y_n - J_n Y_{n+1} = 2 / (pi x)
      const auto js = bessel::j_sequence(n + 1, x);
      const auto ys = bessel::y_sequence(n + 1, x);
      CHECK(js[n + 1] * ys[n] - js[n] * ys[n + 1] == Approx(2 / (std::numbers::pi * x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("zeros against boost, residual and interlacing") {
  CHECK(bessel::j_zeros(0, 3.0).at(0) == Approx(2.404826).epsilon(1e-6));
  for (int n = 0; n <= 40; ++n) {
    const auto z = bessel::j_zeros(n, 80.0);
    REQUIRE(!z.empty());
    for (std::size_t k = 0; k < z.size(); ++k) {
      CHECK(z[k] == Approx(boost::math::cyl_bessel_j_zero(double(n), int(k) + 1)).epsilon(1e-13));
      CHECK(std::abs(bessel::j(n, z[k])) < 1e-12);
      if (k > 0) CHECK(z[k] > z[k - 1]);
    }
    // Next zero beyond the range really is beyond it.
    CHECK(boost::math::cyl_bessel_j_zero(double(n), int(z.size()) + 1) > 80.0);
    const auto up = bessel::j_zeros(n + 1, 80.0);
    for (std::size_t k = 0; k < up.size() && k + 1 < z.size(); ++k) {
      CHECK(z[k] < up[k]);
      CHECK(up[k] < z[k + 1]);
    }
  }
}

TEST_CASE("annulus cross product") {
  // Boost-built cross product as the oracle.
  auto ref = [](int n, double a, double b, double k) {
    using boost::math::cyl_bessel_j;
    using boost::math::cyl_neumann;
    return cyl_bessel_j(n, a * k) * cyl_neumann(n, b * k) - cyl_bessel_j(n, b * k) * cyl_neumann(n, a * k);
  };
  for (int n : {0, 1, 5, 20}) {
    const auto roots = bessel::cross_product_zeros(n, 1.0, 2.0, 40.0);
    REQUIRE(roots.size() > 3);
    for (double k : roots) {
      using boost::math::cyl_bessel_j;
      using boost::math::cyl_neumann;
      const double scale = std::hypot(cyl_bessel_j(n, k), cyl_neumann(n, k)) *
                           std::hypot(cyl_bessel_j(n, 2 * k), cyl_neumann(n, 2 * k));
      CHECK(std::abs(ref(n, 1.0, 2.0, k)) < 1e-12 * scale);
    }
  }
  // Spacing tends to pi / (b - a) once k a is well above the order.
  for (int n : {0, 3}) {
    const auto roots = bessel::cross_product_zeros(n, 1.0, 2.0, 200.0);
    CHECK(roots.back() - roots[roots.size() - 2] == Approx(std::numbers::pi).epsilon(1e-3));
  }
  // Large order with a tiny inner radius: Y_n(ak) overflows, the roots fall
  // back to those of the disk of radius b.
  const auto thin = bessel::cross_product_zeros(60, 0.001, 1.0, 80.0);
  const auto disk = bessel::j_zeros(60, 80.0);
  REQUIRE(thin.size() == disk.size());
  for (std::size_t i = 0; i < thin.size(); ++i) CHECK(thin[i] == Approx(disk[i]).epsilon(1e-12));
}
