#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "inedor/error.hpp"
#include "inedor/lineshape.hpp"
#include "inedor/model.hpp"
#include "inedor/spectrum.hpp"

namespace inedor {

struct WidthReport {
  double h_star = 0.0;         // G, signed like the contact shift
  double delta_omega12 = 0.0;  // rad/s, probe units
  double delta_omega13 = 0.0;  // rad/s, drive units
  bool closed_form = true;
  std::vector<std::string> warnings;
};

/// Smallest Delta H_c / H_d for which the upper bound has a stationary point.
inline constexpr double kStationaryThreshold = 8.0 * std::numbers::sqrt3 / 9.0;

/// Below this Delta H_c / H_d the h >> H_d closed form is flagged.
inline constexpr double kClosedFormWarnRatio = 10.0;

/// Local minimum (for a positive shift; maximum for negative) of the upper
/// probe-frequency bound: the root of (H_d^2 + h^2)^2 / (H_d^2 |h|) = 2 |Delta H_c|
/// on the branch |h| >= H_d / sqrt(3), found by safeguarded Newton.
inline std::optional<double> stationary_field_exact(const Model& m) {
  require_contact_shift(m);
  const double hd = m.pair.H_drive;
  const double dhc = contact_field_amplitude(m);
  const double D = std::abs(dhc) / hd;
  if (D < kStationaryThreshold) return std::nullopt;

  auto g = [D](double u) { return (1.0 + u * u) * (1.0 + u * u) - 2.0 * D * u; };
  auto dg = [D](double u) { return 4.0 * u * (1.0 + u * u) - 2.0 * D; };
  double lo = 1.0 / std::numbers::sqrt3;
  double hi = std::cbrt(2.0 * D);
  if (!(hi > lo)) hi = lo;
  double u = hi;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double gu = g(u);
    if (gu == 0.0) {
      lo = hi = u;
      break;
    }
    (gu > 0.0 ? hi : lo) = u;
    const double d = dg(u);
    double next = d != 0.0 ? u - gu / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    u = next;
  }
  return std::copysign(0.5 * (lo + hi) * hd, dhc);
}

/// Upper bound offset from omega12^(0)(H0), in probe field units.
inline double upper_bound_field(double h, const Model& m) {
  const double hd2 = m.pair.H_drive * m.pair.H_drive;
  return h + contact_field_amplitude(m) * hd2 / (hd2 + h * h);
}

/// h = (2 Delta H_c H_d^2)^(1/3), delta omega12 = (3/2) gamma_p h,
/// delta omega13 = (gamma_d / gamma_p) delta omega12.
inline WidthReport width_closed_form(const Model& m) {
  require_contact_shift(m);
  WidthReport r;
  const double dhc = contact_field_amplitude(m);
  r.h_star = std::copysign(width_field_scale(m), dhc);
  r.delta_omega12 = 1.5 * std::abs(m.pair.gamma_p) * std::abs(r.h_star);
  r.delta_omega13 = std::abs(m.pair.gamma_d) / std::abs(m.pair.gamma_p) * r.delta_omega12;
  r.closed_form = true;
  if (std::abs(dhc) < kClosedFormWarnRatio * m.pair.H_drive)
    r.warnings.push_back("closed-form width assumes |Delta H_c| >> H_d");
  return r;
}

/// Width from the exact stationary point: the distance of the stationary
/// upper-bound value from the unshifted probe frequency.
inline std::optional<WidthReport> width_exact(const Model& m) {
  const auto h = stationary_field_exact(m);
  if (!h) return std::nullopt;
  WidthReport r;
  r.h_star = *h;
  r.delta_omega12 = std::abs(m.pair.gamma_p) * std::abs(upper_bound_field(*h, m));
  r.delta_omega13 = std::abs(m.pair.gamma_d) / std::abs(m.pair.gamma_p) * r.delta_omega12;
  r.closed_form = false;
  return r;
}

// ---------------------------------------------------------------------------
// Power-law scans of the numerically measured max-to-min distance.

enum class ScanParameter { Density, DriveField, Gradient };

struct ScanSpec {
  ScanParameter parameter = ScanParameter::Density;
  std::vector<double> factors;  // multiplicative, relative to the base model
  double span_in_widths = kDefaultSpanInWidths;
  int points = kDefaultSweepPoints;
  SweepMode mode = SweepMode::DriveSweep;
};

struct ScanPoint {
  double factor = 0.0;
  double distance_hz = 0.0;
  double baseline = 0.0;
};

struct ScalingFit {
  double exponent = 0.0;           // d ln(distance) / d ln(factor)
  double baseline_exponent = 0.0;  // d ln(baseline) / d ln(factor)
  std::vector<ScanPoint> points;
};

/// Least-squares slope of ln y against ln x.
inline double log_log_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw Error(ErrorCode::InsufficientRange, "degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

inline std::pair<Model, FieldProfile> scaled(const Model& m, const FieldProfile& profile,
                                             ScanParameter param, double factor) {
  Model out = m;
  FieldProfile prof = profile;
  switch (param) {
    case ScanParameter::Density: out.gas.n_total *= factor; break;
    case ScanParameter::DriveField: out.pair.H_drive *= factor; break;
    case ScanParameter::Gradient: prof.gradient_abs *= factor; break;
  }
  return {validate(out), prof};
}

inline ScalingFit scaling_fit(const Model& m, const FieldProfile& profile, const ScanSpec& scan,
                              const SpectrumOptions& opt = {}) {
  if (scan.factors.size() < 2) throw Error(ErrorCode::InsufficientRange, "need at least 2 scan points");
  const auto [lo, hi] = std::minmax_element(scan.factors.begin(), scan.factors.end());
  if (!(*lo > 0.0) || *hi / *lo < 10.0 * (1.0 - 1e-12))
    throw Error(ErrorCode::InsufficientRange, "scan must cover at least one decade");

  ScalingFit fit;
  std::vector<double> xs, ds, bs;
  for (double f : scan.factors) {
    const auto [model, prof] = scaled(m, profile, scan.parameter, f);
    SweepSpec spec = default_sweep(model, scan.mode);
    spec.span *= scan.span_in_widths / kDefaultSpanInWidths;
    spec.points = scan.points;
    const auto result = sweep(spec, model, prof, opt);
    const auto metrics = peak_metrics(result);
    fit.points.push_back({f, metrics.distance_hz, result.baseline});
    xs.push_back(f);
    ds.push_back(metrics.distance_hz);
    bs.push_back(result.baseline);
  }
  fit.exponent = log_log_slope(xs, ds);
  fit.baseline_exponent = log_log_slope(xs, bs);
  return fit;
}

}  // namespace inedor
