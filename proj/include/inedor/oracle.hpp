#pragma once

// Time-domain check of the averaged absorption density: sample one Rabi
// period on a uniform grid, histogram the reduced detuning x(t) weighted by
// the |1> population 1 - x, and compare with bin integrals of the closed-form
// density.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "inedor/error.hpp"
#include "inedor/lineshape.hpp"
#include "inedor/model.hpp"
#include "inedor/quadrature.hpp"
#include "inedor/rabi.hpp"

namespace inedor::oracle {

struct EmpiricalDensity {
  std::vector<double> edges;    // bins + 1 ascending edges in x
  std::vector<double> weights;  // population-weighted time fraction per bin
  std::int64_t samples_per_cycle = 0;
  int cycles = 1;
  double h = 0.0;
  double sin2_theta = 0.0;

  std::size_t bins() const { return weights.size(); }
};

inline constexpr int kMinBins = 10;
inline constexpr std::int64_t kMinSamples = 10'000;

/// Uniform time grid t_k = (k + 1/2) T / samples over one period T. Bins cover
/// [0, x_max]; x_max defaults to the support edge sin^2 theta(h).
inline EmpiricalDensity simulate_density(double h, const Model& m, int bins, std::int64_t samples,
                                         std::optional<double> x_max = std::nullopt) {
  if (bins < kMinBins) throw Error(ErrorCode::InvalidArgument, "need at least 10 bins");
  if (samples < kMinSamples) throw Error(ErrorCode::InvalidArgument, "need at least 1e4 samples");
  const auto drive = effective_precession(h, m.pair);
  const double top = x_max.value_or(drive.sin2_theta);
  if (!(top > 0.0)) throw Error(ErrorCode::InvalidArgument, "x_max must be positive");

  EmpiricalDensity e;
  e.h = h;
  e.sin2_theta = drive.sin2_theta;
  e.samples_per_cycle = samples;
  e.edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i) e.edges[i] = top * i / bins;
  e.weights.assign(bins, 0.0);

  const double period = drive.period();
  const double inv = 1.0 / static_cast<double>(samples);
  for (std::int64_t k = 0; k < samples; ++k) {
    const double t = (k + 0.5) * period * inv;
    const double x = transfer_fraction(drive, t);
    auto idx = static_cast<std::int64_t>(x / top * bins);
    idx = std::clamp<std::int64_t>(idx, 0, bins - 1);
    e.weights[idx] += (1.0 - x) * inv;
  }
  return e;
}

/// 2 x the integral of `density` over [lo, hi] (two traversals of the support
/// per period), computed in the arcsine variable on [0, sin2_theta].
template <class Density>
double analytic_bin_weight(double lo, double hi, double sin2_theta, Density&& density,
                           double rel_tol = 1e-10) {
  lo = std::max(lo, 0.0);
  hi = std::min(hi, sin2_theta);
  if (!(hi > lo)) return 0.0;
  return 2.0 * quad::endpoint_singular_integral(density, 0.0, sin2_theta, lo, hi, rel_tol).value;
}

inline std::vector<double> analytic_bin_weights(const std::vector<double>& edges,
                                                double sin2_theta) {
  std::vector<double> out(edges.size() - 1, 0.0);
  auto density = [s = sin2_theta](double x) { return arcsine_density(x, s); };
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    out[i] = analytic_bin_weight(edges[i], edges[i + 1], sin2_theta, density);
  return out;
}

/// Max |empirical - analytic| / analytic over bins that lie strictly inside
/// the support and do not touch either singular edge.
template <class Density>
double compare_to_analytic(const EmpiricalDensity& emp, const Model& m, double h,
                           Density&& density) {
  const double s = effective_precession(h, m.pair).sin2_theta;
  if (emp.edges.size() != emp.weights.size() + 1 || emp.weights.empty())
    throw Error(ErrorCode::BinningMismatch, "edges/weights size mismatch");
  if (std::abs(emp.sin2_theta - s) > 1e-12 * s)
    throw Error(ErrorCode::BinningMismatch, "histogram was built for a different detuning");

  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < emp.weights.size(); ++i) {
    if (!(emp.edges[i + 1] < s)) break;  // bin touches the upper singularity
    const double analytic = analytic_bin_weight(emp.edges[i], emp.edges[i + 1], s, density);
    if (analytic == 0.0) continue;
    worst = std::max(worst, std::abs(emp.weights[i] - analytic) / analytic);
  }
  return worst;
}

inline double compare_to_analytic(const EmpiricalDensity& emp, const Model& m, double h) {
  const double s = effective_precession(h, m.pair).sin2_theta;
  return compare_to_analytic(emp, m, h, [s](double x) { return arcsine_density(x, s); });
}

}  // namespace inedor::oracle
