#pragma once

// Real roots of monic cubics u^3 + b u^2 + c u + d = 0: closed-form seeds
// (trigonometric / Cardano) polished by bisection on monotone segments.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "inedor/constants.hpp"

namespace inedor::roots {

struct MonicCubic {
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  double operator()(double u) const { return ((u + b) * u + c) * u + d; }
};

/// Closed-form real roots, ascending. No polishing; accuracy degrades near
/// multiple roots.
inline std::vector<double> solve_cubic_analytic(const MonicCubic& p) {
  const double a3 = p.b / 3.0;
  const double q = (p.b * p.b - 3.0 * p.c) / 9.0;
  const double r = (p.b * (2.0 * p.b * p.b - 9.0 * p.c) + 27.0 * p.d) / 54.0;
  const double q3 = q * q * q;
  std::vector<double> out;
  if (r * r < q3) {
    const double t = std::acos(std::clamp(r / std::sqrt(q3), -1.0, 1.0));
    const double m = -2.0 * std::sqrt(q);
    out = {m * std::cos(t / 3.0) - a3, m * std::cos((t + kTwoPi) / 3.0) - a3,
           m * std::cos((t - kTwoPi) / 3.0) - a3};
  } else {
    const double u = -std::cbrt(r + std::copysign(std::sqrt(r * r - q3), r));
    const double v = (u == 0.0) ? 0.0 : q / u;
    out = {u + v - a3};
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Root {
  double value = 0.0;
  int multiplicity = 1;
};

struct PolishOptions {
  double tolerance = 1e-12;        // absolute bracket width at convergence
  double merge_distance = 1e-9;    // roots closer than this become one double root
};

/// All real roots, ascending, each bracketed on a monotone segment of the cubic
/// and bisected to `tolerance`. Near-coincident roots are merged.
inline std::vector<Root> real_roots(const MonicCubic& p, const PolishOptions& opt = {}) {
  const auto seeds = solve_cubic_analytic(p);
  const double bound = 1.0 + std::max({std::abs(p.b), std::abs(p.c), std::abs(p.d)});

  std::vector<double> knots{-bound};
  const double disc = p.b * p.b - 3.0 * p.c;
  if (disc > 0.0) {
    // Stationary points of the cubic, computed without cancellation.
    const double s = -(p.b + std::copysign(std::sqrt(disc), p.b));
    double c1 = s / 3.0;
    double c2 = (s != 0.0) ? p.c / s : 0.0;
    if (c1 > c2) std::swap(c1, c2);
    knots.push_back(std::clamp(c1, -bound, bound));
    knots.push_back(std::clamp(c2, -bound, bound));
  }
  knots.push_back(bound);

  std::vector<Root> found;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    double lo = knots[k];
    double hi = knots[k + 1];
    double flo = p(lo);
    double fhi = p(hi);
    if (flo == 0.0) {
      // A zero on an interior stationary point is a tangency.
      found.push_back({lo, k > 0 ? 2 : 1});
      continue;
    }
    if (fhi == 0.0) {
      if (k + 2 == knots.size()) found.push_back({hi, 1});
      continue;
    }
    if ((flo > 0.0) == (fhi > 0.0)) continue;

    bool first = true;
    while (hi - lo > opt.tolerance) {
      double mid = 0.5 * (lo + hi);
      if (first) {
        // Start from the closed-form seed when it falls inside the bracket.
        for (double sd : seeds)
          if (sd > lo && sd < hi) mid = sd;
        first = false;
      }
      if (mid <= lo || mid >= hi) break;
      const double fm = p(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm > 0.0) == (flo > 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    found.push_back({0.5 * (lo + hi), 1});
  }
  std::sort(found.begin(), found.end(),
            [](const Root& x, const Root& y) { return x.value < y.value; });

  std::vector<Root> out;
  for (const Root& r : found) {
    if (!out.empty() && r.value - out.back().value < opt.merge_distance) {
      out.back().value = 0.5 * (out.back().value + r.value);
      out.back().multiplicity = std::min(3, out.back().multiplicity + r.multiplicity);
    } else {
      out.push_back(r);
    }
  }
  return out;
}

/// Factored form of a monic cubic: product over real roots times an optional
/// irreducible quadratic (u - re)^2 + im2. Evaluating the product is accurate
/// near the roots, where the expanded polynomial cancels.
struct CubicFactorization {
  std::vector<double> real;  // with multiplicity, ascending
  bool has_complex_pair = false;
  double re = 0.0;
  double im2 = 0.0;

  double operator()(double u) const {
    double v = 1.0;
    for (double r : real) v *= (u - r);
    if (has_complex_pair) v *= (u - re) * (u - re) + im2;
    return v;
  }
};

inline CubicFactorization factorize(const MonicCubic& p, const PolishOptions& opt = {}) {
  CubicFactorization f;
  const auto rs = real_roots(p, opt);
  for (const auto& r : rs)
    for (int m = 0; m < r.multiplicity; ++m) f.real.push_back(r.value);
  if (f.real.size() == 1) {
    // Deflate by the single real root; the remaining quadratic has no real roots.
    const double r = f.real.front();
    const double b1 = p.b + r;
    const double c1 = p.c + r * b1;
    f.has_complex_pair = true;
    f.re = -0.5 * b1;
    f.im2 = std::max(c1 - 0.25 * b1 * b1, 0.0);
    f.real.resize(1);
  }
  return f;
}

}  // namespace inedor::roots
