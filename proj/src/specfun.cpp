#include "confgas/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "confgas/quadrature.hpp"

namespace confgas {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

constexpr double kZeta3Halves = 2.612375348685488343348567567924071630571;
constexpr double kZeta5Halves = 1.341487257250917179756769702151154410246;
constexpr double kZetaHalf = -1.460354508809586812889499152515298012467;

// s(s+1)...(s+n-1)
double rising(double s, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= s + i;
  return out;
}

double zeta_euler_maclaurin(double s) {
  constexpr int kN = 30;
  // B_{2k} / (2k)!
  constexpr std::array<double, 8> kCoeff = {
      1.0 / 12.0,
      -1.0 / 720.0,
      1.0 / 30240.0,
      -1.0 / 1209600.0,
      1.0 / 47900160.0,
      -691.0 / 1307674368000.0,
      1.0 / 74724249600.0,
      -3617.0 / 10670622842880000.0,
  };
  double sum = 0.0;
  for (int n = kN - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
  const double nn = kN;
  sum += std::pow(nn, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(nn, -s);
  for (int k = 1; k <= static_cast<int>(kCoeff.size()); ++k) {
    sum += kCoeff[k - 1] * rising(s, 2 * k - 1) * std::pow(nn, -s - 2 * k + 1);
  }
  return sum;
}

void check_z(StatKind stat, Order sigma, double z, const SpecfunOptions& opts) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("h: fugacity must be positive and finite");
  if (stat == StatKind::Bose) {
    if (z > 1.0) throw DomainError("g: fugacity above 1 has no Bose interpretation");
    if (z == 1.0 && sigma.twice() <= 2) {
      throw DomainError("g_" + sigma.label() + "(1) diverges (condensation point)");
    }
  } else if (z >= opts.z_max) {
    throw DomainError("f: fugacity at or above the configured cap");
  }
}

// Fermi or Bose occupation 1/(exp(x)/z -+ 1), written in terms of t = x - ln z.
double occupation(StatKind stat, double t) {
  if (stat == StatKind::Fermi) {
    if (t > 0.0) {
      const double e = std::exp(-t);
      return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(t));
  }
  return 1.0 / std::expm1(t);
}

// z d/dz of the occupation: n (1 -+ n) for Fermi/Bose.
double occupation_derivative(StatKind stat, double t) {
  if (stat == StatKind::Fermi) {
    const double e = std::exp(-std::abs(t));
    return e / ((1.0 + e) * (1.0 + e));
  }
  const double n = 1.0 / std::expm1(t);
  return n * (1.0 + n);
}

// Integrates 2 u^{2p-1} w(u^2 - ln z) du over [0, inf) for p > 0; this is
// int x^{p-1} w(x - ln z) dx after x = u^2, which removes the x^{-1/2}
// endpoint behaviour of the half-integer orders.
FunctionValue integrate_in_u(StatKind stat, double p, double z, bool derivative) {
  const double eta = std::log(z);
  const double x_max = std::max(eta, 0.0) + 60.0;
  const double power = 2.0 * p - 1.0;
  auto integrand = [&](double u) {
    const double x = u * u;
    const double t = x - eta;
    const double w = derivative ? occupation_derivative(stat, t) : occupation(stat, t);
    const double up = power == 0.0 ? 1.0 : std::pow(u, power);
    return 2.0 * up * w;
  };
  std::vector<double> breaks;
  if (eta > 0.0) {
    for (double shift : {-8.0, -2.0, 0.0, 2.0, 8.0}) {
      if (eta + shift > 0.0) breaks.push_back(std::sqrt(eta + shift));
    }
  } else {
    for (double x : {0.25, 1.0, 4.0, 16.0}) breaks.push_back(std::sqrt(x));
  }
  const quad::Result r = quad::gauss_kronrod(integrand, 0.0, std::sqrt(x_max), breaks);
  // Beyond x_max the occupation (and its derivative) is below 2 exp(eta - x).
  const double tail = 4.0 * std::exp(eta - x_max) * std::pow(x_max, std::max(p - 1.0, 0.0));
  const double gamma = std::tgamma(p);
  FunctionValue out;
  out.value = r.value / gamma;
  out.abs_error_bound = (10.0 * r.error + tail) / gamma + 8.0 * kEps * std::abs(out.value);
  out.method = Method::Quadrature;
  out.terms = static_cast<std::size_t>(r.panels);
  if (!r.converged) {
    throw AccuracyError("h: quadrature did not reach its tolerance", out.abs_error_bound);
  }
  return out;
}

// Expansion of g_s(e^mu) about mu = 0 for non-integer s:
//   g_s(e^mu) = Gamma(1-s) (-mu)^{s-1} + sum_k zeta(s-k) mu^k / k!
// convergent for |mu| < 2 pi, used just below the condensation point.
FunctionValue bose_near_unity_half_integer(Order sigma, double z) {
  const double s = sigma.value();
  const double mu = std::log(z);
  double sum = std::tgamma(1.0 - s) * std::pow(-mu, s - 1.0);
  double abs_sum = std::abs(sum);
  double power = 1.0;  // mu^k / k!
  double last = 0.0;
  std::size_t k = 0;
  for (; k < 60; ++k) {
    if (k > 0) power *= mu / static_cast<double>(k);
    const double term = riemann_zeta(s - static_cast<double>(k)) * power;
    sum += term;
    abs_sum += std::abs(term);
    last = std::abs(term);
    if (k > 2 && last <= kEps * 1e-2 * std::abs(sum)) break;
  }
  return {sum, 2.0 * last + 16.0 * kEps * abs_sum, Method::Series, k + 1};
}

// Li_2(z) = pi^2/6 - ln z ln(1-z) - Li_2(1-z).
FunctionValue bose_near_unity_dilog(double z) {
  const double w = 1.0 - z;
  FunctionValue tail = eval_h_series(StatKind::Bose, orders::two, w, 1e-20 * w);
  const double value = kPi * kPi / 6.0 - std::log(z) * std::log1p(-z) - tail.value;
  return {value, tail.abs_error_bound + 8.0 * kEps * value, Method::Series, tail.terms};
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Accuracy: return "AccuracyError";
    case ErrorKind::Geometry: return "GeometryError";
    case ErrorKind::Model: return "ModelError";
    case ErrorKind::NoBracket: return "NoBracketError";
    case ErrorKind::NonMonotone: return "NonMonotoneError";
    case ErrorKind::Singularity: return "SingularityError";
    case ErrorKind::Resource: return "ResourceError";
    case ErrorKind::Convergence: return "ConvergenceError";
    case ErrorKind::Truncation: return "TruncationError";
  }
  return "Error";
}

const char* to_string(StatKind stat) { return stat == StatKind::Bose ? "bose" : "fermi"; }

StatKind parse_stat(const std::string& text) {
  if (text == "bose" || text == "Bose") return StatKind::Bose;
  if (text == "fermi" || text == "Fermi") return StatKind::Fermi;
  throw DomainError("unknown statistics '" + text + "' (expected bose or fermi)");
}

const char* to_string(Method method) {
  switch (method) {
    case Method::ClosedForm: return "closed_form";
    case Method::Series: return "series";
    case Method::Quadrature: return "quadrature";
    case Method::OrderRecurrence: return "order_recurrence";
  }
  return "unknown";
}

Order Order::of(double sigma) {
  const double twice = 2.0 * sigma;
  if (!std::isfinite(twice) || twice != std::round(twice)) {
    throw DomainError("order must be a half-integer in [-1, 5/2]");
  }
  return halves(static_cast<int>(twice));
}

std::string Order::label() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

double riemann_zeta(double s) {
  if (s == 1.0) throw DomainError("zeta has a pole at s = 1");
  if (s < 0.0) {
    return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * std::sin(0.5 * kPi * s) *
           std::tgamma(1.0 - s) * zeta_euler_maclaurin(1.0 - s);
  }
  return zeta_euler_maclaurin(s);
}

FunctionValue eval_h_closed_form(StatKind stat, Order sigma, double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("h: fugacity must be positive and finite");
  if (stat == StatKind::Bose && z >= 1.0) {
    throw DomainError("g: closed forms need z < 1");
  }
  double value = 0.0;
  const bool bose = stat == StatKind::Bose;
  switch (sigma.twice()) {
    case 2:
      value = bose ? -std::log1p(-z) : std::log1p(z);
      break;
    case 0:
      value = bose ? z / (1.0 - z) : z / (1.0 + z);
      break;
    case -2: {
      const double d = bose ? 1.0 - z : 1.0 + z;
      value = z / (d * d);
      break;
    }
    default:
      throw DomainError("h_" + sigma.label() + " has no closed form");
  }
  return {value, 4.0 * kEps * std::abs(value), Method::ClosedForm, 0};
}

FunctionValue eval_h_series(StatKind stat, Order sigma, double z, double tail_bound,
                            std::size_t max_terms) {
  if (!(z > 0.0 && z < 1.0)) throw DomainError("h: series needs 0 < z < 1");
  if (!(tail_bound > 0.0)) throw DomainError("h: series tail bound must be positive");
  const double s = sigma.value();
  const double sign = stat == StatKind::Bose ? 1.0 : -1.0;

  // Neumaier-compensated running sum.
  double sum = 0.0;
  double comp = 0.0;
  double abs_weighted = 0.0;  // sum n |t_n|, bounds the error of z^n
  double zn = 1.0;
  double alt = 1.0;
  double tail = std::numeric_limits<double>::infinity();
  std::size_t n = 1;
  for (; n <= max_terms; ++n) {
    zn *= z;
    const double nd = static_cast<double>(n);
    const double term = alt * zn / std::pow(nd, s);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    abs_weighted += nd * std::abs(term);
    alt *= sign;

    // Majorant of sum_{k>n} z^k k^{-s}.
    const double next = nd + 1.0;
    const double z_next = zn * z;
    if (s >= 0.0) {
      tail = z_next / ((1.0 - z) * std::pow(next, s));
    } else {
      const double ratio = z * std::pow(1.0 + 1.0 / next, -s);
      tail = ratio < 1.0 ? z_next * std::pow(next, -s) / (1.0 - ratio)
                         : std::numeric_limits<double>::infinity();
    }
    if (tail <= tail_bound) break;
  }
  if (tail > tail_bound) {
    throw AccuracyError("h: series term cap reached before tail bound", tail);
  }
  const double value = sum + comp;
  const double bound = tail + kEps * (abs_weighted + 2.0 * std::abs(value));
  return {value, bound, Method::Series, std::min(n, max_terms)};
}

FunctionValue eval_h_quadrature(StatKind stat, Order sigma, double z) {
  if (sigma.twice() <= 0) throw DomainError("h: integral representation needs s > 0");
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("h: fugacity must be positive and finite");
  if (stat == StatKind::Bose && z >= 1.0) throw DomainError("g: quadrature needs z < 1");
  return integrate_in_u(stat, sigma.value(), z, false);
}

FunctionValue eval_h_recurrence(StatKind stat, Order sigma, double z) {
  if (sigma.twice() > 0) throw DomainError("h: recurrence is used for s <= 0 only");
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("h: fugacity must be positive and finite");
  if (stat == StatKind::Bose && z >= 1.0) throw DomainError("g: recurrence needs z < 1");
  if (sigma.twice() == -2) {
    // s + 1 = 0 has no integral form; -1 is reached from 0 in closed form.
    return eval_h_closed_form(stat, sigma, z);
  }
  FunctionValue out = integrate_in_u(stat, sigma.value() + 1.0, z, true);
  out.method = Method::OrderRecurrence;
  return out;
}

FunctionValue bose_limit_at_unity(Order sigma) {
  switch (sigma.twice()) {
    case 3: return {kZeta3Halves, kEps * kZeta3Halves, Method::ClosedForm, 0};
    case 4: return {kPi * kPi / 6.0, 2.0 * kEps * 1.65, Method::ClosedForm, 0};
    case 5: return {kZeta5Halves, kEps * kZeta5Halves, Method::ClosedForm, 0};
    default:
      throw DomainError("g_" + sigma.label() + "(1) diverges");
  }
}

FunctionValue eval_h(StatKind stat, Order sigma, double z, const SpecfunOptions& opts) {
  check_z(stat, sigma, z, opts);
  FunctionValue out;
  if (stat == StatKind::Bose && z == 1.0) {
    out = bose_limit_at_unity(sigma);
  } else if (sigma.twice() == 2 || sigma.twice() == 0 || sigma.twice() == -2) {
    out = eval_h_closed_form(stat, sigma, z);
  } else if (z <= opts.series_switch) {
    out = eval_h_series(stat, sigma, z, 1e-17 * z, opts.max_terms);
  } else if (stat == StatKind::Bose) {
    out = sigma.twice() == 4 ? bose_near_unity_dilog(z) : bose_near_unity_half_integer(sigma, z);
  } else if (sigma.twice() > 0) {
    out = eval_h_quadrature(stat, sigma, z);
  } else {
    out = eval_h_recurrence(stat, sigma, z);
  }
  const double allowed = std::max(1e-10, 1e-10 * std::abs(out.value));
  if (out.abs_error_bound > allowed) {
    throw AccuracyError("h_" + sigma.label() + ": error bound above contract", out.abs_error_bound);
  }
  return out;
}

double h(StatKind stat, Order sigma, double z, const SpecfunOptions& opts) {
  return eval_h(stat, sigma, z, opts).value;
}

}  // namespace confgas
