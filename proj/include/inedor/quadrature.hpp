#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "inedor/constants.hpp"
#include "inedor/error.hpp"

namespace inedor::quad {

inline constexpr double kDefaultRelTol = 1e-6;
inline constexpr unsigned kDefaultMaxDepth = 30;

struct Result {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

/// Adaptive Gauss-Kronrod (7/15). Throws QuadratureError when the relative
/// error estimate stays above `rel_tol` after `max_depth` bisections.
template <class F>
Result gauss_kronrod(F&& f, double a, double b, double rel_tol = kDefaultRelTol,
                     unsigned max_depth = kDefaultMaxDepth) {
  Result r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, max_depth, rel_tol, &r.error, &r.l1);
  if (!std::isfinite(r.value) || r.error > rel_tol * r.l1) {
    throw QuadratureError("tolerance " + std::to_string(rel_tol) + " not met on [" +
                              std::to_string(a) + ", " + std::to_string(b) + "]",
                          r.value, r.error);
  }
  return r;
}

/// Integral over [a, b] of regular(h, h - a, b - h) / sqrt((h - a)(b - h)).
///
/// With h = a + (b - a) sin^2(phi) the inverse-square-root endpoint factors are
/// absorbed exactly by the Jacobian, leaving 2 * regular(...) on [0, pi/2].
/// The endpoint distances are passed separately so callers can evaluate
/// factored forms without cancellation.
template <class F>
Result arcsine_integral(F&& regular, double a, double b, double rel_tol = kDefaultRelTol,
                        unsigned max_depth = kDefaultMaxDepth) {
  const double width = b - a;
  auto g = [&](double phi) {
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    const double da = width * s * s;
    const double db = width * c * c;
    const double h = phi < 0.25 * kPi ? a + da : b - db;
    return 2.0 * regular(h, da, db);
  };
  return gauss_kronrod(g, 0.0, 0.5 * kPi, rel_tol, max_depth);
}

/// Integral over [a, b] of an integrand with (at most) inverse-square-root
/// singularities at both endpoints, using the same arcsine change of variable.
template <class F>
Result endpoint_singular_integral(F&& f, double a, double b, double rel_tol = kDefaultRelTol,
                                  unsigned max_depth = kDefaultMaxDepth) {
  return arcsine_integral(
      [&](double h, double da, double db) { return f(h) * std::sqrt(da * db); }, a, b, rel_tol,
      max_depth);
}

/// Partial version: integrate over the sub-interval [lo, hi] of [a, b] in the
/// arcsine variable. Used for bin integrals of densities supported on [a, b].
template <class F>
Result endpoint_singular_integral(F&& f, double a, double b, double lo, double hi,
                                  double rel_tol, unsigned max_depth = kDefaultMaxDepth) {
  const double width = b - a;
  auto to_phi = [&](double x) {
    const double u = std::clamp((x - a) / width, 0.0, 1.0);
    return std::asin(std::sqrt(u));
  };
  auto g = [&](double phi) {
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    const double da = width * s * s;
    const double db = width * c * c;
    const double h = phi < 0.25 * kPi ? a + da : b - db;
    return 2.0 * f(h) * std::sqrt(da * db);
  };
  return gauss_kronrod(g, to_phi(lo), to_phi(hi), rel_tol, max_depth);
}

}  // namespace inedor::quad
