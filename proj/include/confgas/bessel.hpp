#pragma once

// Integer-order Bessel functions of the first and second kind and the zeros
// needed for Dirichlet spectra of disks and annuli. Self-contained: no
// external special-function library.

#include <vector>

namespace confgas::bessel {

/// J_0(x) .. J_nmax(x) for x >= 0 by Miller's backward recurrence,
/// normalised with J_0 + 2 sum J_{2k} = 1.
std::vector<double> j_sequence(int nmax, double x);

double j(int n, double x);

/// dJ_n/dx.
double j_prime(int n, double x);

/// Y_0 and Y_1 from their integral representations, higher orders by
/// forward recurrence (stable for Y). Requires x > 0.
std::vector<double> y_sequence(int nmax, double x);

double y(int n, double x);

/// All zeros of J_n in (0, x_max], increasing. Each is bracketed on a grid
/// finer than the minimum zero spacing and polished by safeguarded Newton to
/// |J_n| < 1e-12; ConvergenceError otherwise.
std::vector<double> j_zeros(int n, double x_max);

/// J_n(a k) Y_n(b k) - J_n(b k) Y_n(a k), divided by the modulus
/// sqrt(J_n^2 + Y_n^2) at a k so that it stays finite for large n.
double cross_product(int n, double a, double b, double k);

/// Zeros in k of the cross product on (0, k_max], 0 < a < b.
std::vector<double> cross_product_zeros(int n, double a, double b, double k_max);

}  // namespace confgas::bessel
