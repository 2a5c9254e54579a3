#pragma once

// Bose-Einstein and Fermi-Dirac integrals
//
//   h_s(z) = sum_{n>=1} (+-1)^{n+1} z^n / n^s
//          = 1/Gamma(s) * int_0^inf x^{s-1} / (exp(x)/z -+ 1) dx
//
// for the half-integer orders -1 <= s <= 5/2. The upper sign selects the
// Bose function g_s, the lower sign the Fermi function f_s.

#include <compare>
#include <cstddef>
#include <string>

#include "confgas/error.hpp"

namespace confgas {

enum class StatKind { Bose, Fermi };

const char* to_string(StatKind stat);
StatKind parse_stat(const std::string& text);

/// Order of an h-function. Only the half-integers in [-1, 5/2] exist.
class Order {
 public:
  /// Builds from twice the order; invalid values throw DomainError (and are
  /// a compile error in constant evaluation).
  static constexpr Order halves(int twice) {
    if (twice < -2 || twice > 5) throw DomainError("order outside {-1, -1/2, ..., 5/2}");
    return Order(twice);
  }
  /// Builds from a real value; it must be one of the supported orders exactly.
  static Order of(double sigma);

  constexpr int twice() const noexcept { return twice_; }
  constexpr double value() const noexcept { return 0.5 * twice_; }
  constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }
  /// The order one lower, i.e. the order produced by z d/dz.
  constexpr Order lowered() const { return halves(twice_ - 2); }
  std::string label() const;

  constexpr auto operator<=>(const Order&) const = default;

 private:
  constexpr explicit Order(int twice) : twice_(twice) {}
  int twice_;
};

namespace orders {
inline constexpr Order minus_one = Order::halves(-2);
inline constexpr Order minus_half = Order::halves(-1);
inline constexpr Order zero = Order::halves(0);
inline constexpr Order half = Order::halves(1);
inline constexpr Order one = Order::halves(2);
inline constexpr Order three_halves = Order::halves(3);
inline constexpr Order two = Order::halves(4);
inline constexpr Order five_halves = Order::halves(5);
}  // namespace orders

enum class Method { ClosedForm, Series, Quadrature, OrderRecurrence };
const char* to_string(Method method);

struct FunctionValue {
  double value = 0.0;
  double abs_error_bound = 0.0;
  Method method = Method::ClosedForm;
  std::size_t terms = 0;  // series terms or quadrature panels used
};

struct SpecfunOptions {
  double z_max = 1e8;          // Fermi fugacity cap
  double series_switch = 0.99; // series at or below, other methods above
  std::size_t max_terms = 1'000'000;
};

/// Evaluates h_s(z), picking closed forms, the power series, quadrature or
/// the order-lowering recurrence depending on (stat, s, z). The result meets
/// |error| <= max(1e-10, 1e-10 |value|) or AccuracyError is thrown.
FunctionValue eval_h(StatKind stat, Order sigma, double z, const SpecfunOptions& opts = {});

/// Shorthand for eval_h(...).value.
double h(StatKind stat, Order sigma, double z, const SpecfunOptions& opts = {});

/// Exact resummations for s in {1, 0, -1}.
FunctionValue eval_h_closed_form(StatKind stat, Order sigma, double z);

/// Direct power series for 0 < z < 1, summed until the geometric tail
/// majorant drops below `tail_bound`.
FunctionValue eval_h_series(StatKind stat, Order sigma, double z, double tail_bound,
                            std::size_t max_terms = 1'000'000);

/// Adaptive quadrature of the integral representation; requires s > 0.
FunctionValue eval_h_quadrature(StatKind stat, Order sigma, double z);

/// h_s = z d/dz h_{s+1}, with the derivative taken under the integral sign;
/// requires -1 <= s <= 0 so that s + 1 > 0.
FunctionValue eval_h_recurrence(StatKind stat, Order sigma, double z);

/// g_s(1) = zeta(s) for s in {3/2, 2, 5/2}; DomainError for s <= 1.
FunctionValue bose_limit_at_unity(Order sigma);

/// Riemann zeta for real s != 1 (Euler-Maclaurin, reflection for s < 0).
double riemann_zeta(double s);

}  // namespace confgas
