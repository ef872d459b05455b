#pragma once

// Gradient-integrated absorption spectra.
//
// Everything below works in reduced field units u = h / H_d. For a probe level
// q = p / H_d (p = probe offset from omega12^(0)(H0) in probe-field units) and
// D = Delta H_c / H_d, the reduced detuning is x = (q - u) / D and
//
//   x (sin^2 theta - x) = (q - u) Q(u) / (D^2 (1 + u^2)),
//   Q(u) = u^3 - q u^2 + u + (D - q),
//
// so the support of the absorption density is where P(u) = (q - u) Q(u) > 0,
// bounded by q (the Zeeman-only crossing) and the real roots of Q (crossings
// of the upper bound). P is kept in factored form so the inverse-square-root
// endpoint factors can be split off exactly before the arcsine substitution.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "inedor/error.hpp"
#include "inedor/lineshape.hpp"
#include "inedor/model.hpp"
#include "inedor/quadrature.hpp"
#include "inedor/rabi.hpp"
#include "inedor/roots.hpp"

namespace inedor {

enum class SweepMode { DriveSweep, ProbeSweep };

struct SweepSpec {
  SweepMode mode = SweepMode::DriveSweep;
  double center = 0.0;  // rad/s
  double span = 0.0;    // rad/s
  int points = 2000;
};

struct SpectrumSample {
  double offset = 0.0;     // sweep offset, rad/s
  double amplitude = 0.0;  // arbitrary units, proportional to n / |grad H|
};

struct PeakMetrics {
  double max_position = 0.0;  // rad/s
  double min_position = 0.0;  // rad/s
  double distance_hz = 0.0;
};

struct SpectrumResult {
  SweepMode mode = SweepMode::DriveSweep;
  std::vector<SpectrumSample> samples;
  double baseline = 0.0;
  std::optional<PeakMetrics> metrics;
  std::vector<std::string> warnings;
};

struct SupportInterval {
  double lo = 0.0;  // G
  double hi = 0.0;  // G
  bool tangent = false;  // an endpoint is a double crossing (probe level at an extremum)
};

struct SpectrumOptions {
  double rel_tol = quad::kDefaultRelTol;
  int threads = 0;       // 0: INEDOR_THREADS, else hardware concurrency
  double tau = 1.0;      // detection time constant, s
  double fast_driving_threshold = kDefaultFastDrivingThreshold;
};

inline constexpr int kDefaultSweepPoints = 2000;
inline constexpr double kDefaultSpanInWidths = 20.0;
inline constexpr double kBaselineOffsetInWidths = 50.0;

namespace detail {

struct ReducedGeometry {
  double q = 0.0;  // probe level, units of H_d
  double D = 0.0;  // signed contact shift, units of H_d
  roots::CubicFactorization cubic;
  std::vector<double> roots;      // all zeros of P, ascending, with multiplicity
  std::vector<int> multiplicity;  // parallel to `roots`
};

inline ReducedGeometry reduce(double p_field, const Model& m) {
  require_contact_shift(m);
  ReducedGeometry g;
  const double hd = m.pair.H_drive;
  g.q = p_field / hd;
  g.D = contact_field_amplitude(m) / hd;
  const roots::MonicCubic cubic{-g.q, 1.0, g.D - g.q};
  roots::PolishOptions opt;
  opt.tolerance = 1e-12 * std::max(1.0, std::abs(g.q));
  opt.merge_distance = 1e-9;
  g.cubic = roots::factorize(cubic, opt);

  std::vector<std::pair<double, int>> zs{{g.q, 1}};
  for (std::size_t i = 0; i < g.cubic.real.size(); ++i) {
    const double r = g.cubic.real[i];
    if (i > 0 && g.cubic.real[i - 1] == r) {
      zs.back().second += 1;
      continue;
    }
    zs.push_back({r, 1});
  }
  std::sort(zs.begin(), zs.end());
  for (auto [r, k] : zs) {
    g.roots.push_back(r);
    g.multiplicity.push_back(k);
  }
  return g;
}

/// P(u) = (q - u) Q(u), factored.
inline double reduced_p(const ReducedGeometry& g, double u) { return (g.q - u) * g.cubic(u); }

/// Product of the factors of P other than the two that vanish at a and b.
inline double remaining_factor(const ReducedGeometry& g, std::size_t ia, std::size_t ib,
                               double u) {
  double v = 1.0;
  for (std::size_t i = 0; i < g.roots.size(); ++i) {
    int k = g.multiplicity[i];
    if (i == ia) --k;
    if (i == ib) --k;
    for (; k > 0; --k) v *= (u - g.roots[i]);
  }
  if (g.cubic.has_complex_pair) v *= (u - g.cubic.re) * (u - g.cubic.re) + g.cubic.im2;
  return v;
}

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("INEDOR_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace detail

/// Probe offset, in probe-field units, seen at a given sweep offset. A drive
/// sweep moves the resonance field by offset / gamma_d, which lowers the probe
/// level relative to the shifted Zeeman line.
inline double probe_field_offset(double sweep_offset, SweepMode mode, const ResonancePair& pair) {
  return mode == SweepMode::DriveSweep ? -sweep_offset / pair.gamma_d
                                       : sweep_offset / pair.gamma_p;
}

/// Maximal h-intervals (G) where the probe level lies between the two bounds,
/// for a probe offset p given in probe-field units.
inline std::vector<SupportInterval> support_intervals_field(double p, const Model& m) {
  const auto g = detail::reduce(p, m);
  const double hd = m.pair.H_drive;
  std::vector<SupportInterval> out;
  for (std::size_t i = 0; i + 1 < g.roots.size(); ++i) {
    const double a = g.roots[i];
    const double b = g.roots[i + 1];
    if (!(b > a)) continue;
    if (detail::reduced_p(g, 0.5 * (a + b)) <= 0.0) continue;
    const bool tangent = g.multiplicity[i] > 1 || g.multiplicity[i + 1] > 1;
    out.push_back({a * hd, b * hd, tangent});
  }
  return out;
}

/// Same, for an absolute probe frequency omega_p (rad/s).
inline std::vector<SupportInterval> support_intervals(double omega_p, const Model& m) {
  return support_intervals_field((omega_p - m.pair.omega12_0_at_H0) / m.pair.gamma_p, m);
}

/// Integral of the absorption density over all h, for probe offset p (G).
/// Returns the h-integral of A alone (units of G); callers scale by n/|grad H|.
inline double integrate_support_field(double p, const Model& m, const FieldProfile& profile,
                                      double rel_tol = quad::kDefaultRelTol) {
  const auto g = detail::reduce(p, m);
  const double hd = m.pair.H_drive;
  const double absD = std::abs(g.D);
  const double window = 0.5 * profile.gradient_abs * profile.extent / hd;  // reduced units

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < g.roots.size(); ++i) {
    const double a = g.roots[i];
    const double b = g.roots[i + 1];
    if (!(b > a)) continue;
    if (detail::reduced_p(g, 0.5 * (a + b)) <= 0.0) continue;
    if (g.multiplicity[i] > 1 || g.multiplicity[i + 1] > 1) {
      throw QuadratureError("probe level is tangent to the upper frequency bound; amplitude diverges",
                            std::numeric_limits<double>::infinity(),
                            std::numeric_limits<double>::infinity());
    }
    const bool a_is_q = (a == g.q);
    const bool b_is_q = (b == g.q);

    if (std::isfinite(window) && (a < -window || b > window)) {
      // Finite sample: clip to the field window; clipped ends are not singular.
      const double lo = std::max(a, -window);
      const double hi = std::min(b, window);
      if (!(hi > lo)) continue;
      auto density = [&](double u) {
        const double pu = detail::reduced_p(g, u);
        if (!(pu > 0.0)) return 0.0;
        const double x = (g.q - u) / g.D;
        return (1.0 - x) * absD * std::sqrt(1.0 + u * u) / (2.0 * kPi * std::sqrt(pu));
      };
      total += quad::endpoint_singular_integral(density, lo, hi, rel_tol).value;
      continue;
    }

    auto regular = [&](double u, double da, double db) {
      double qmu = g.q - u;
      if (a_is_q) qmu = -da;
      if (b_is_q) qmu = db;
      const double x = qmu / g.D;
      const double rest = std::abs(detail::remaining_factor(g, i, i + 1, u));
      return (1.0 - x) * absD * std::sqrt(1.0 + u * u) / (2.0 * kPi * std::sqrt(rest));
    };
    total += quad::arcsine_integral(regular, a, b, rel_tol).value;
  }
  return total * hd;
}

/// Gradient-integrated absorption at one sweep offset:
/// (n / |grad H|) * sum over support intervals of the h-integral of A.
inline double integrate_point(double sweep_offset, SweepMode mode, const Model& m,
                              const FieldProfile& profile,
                              double rel_tol = quad::kDefaultRelTol) {
  validate(profile);
  const double p = probe_field_offset(sweep_offset, mode, m.pair);
  return m.gas.n_total / profile.gradient_abs * integrate_support_field(p, m, profile, rel_tol);
}

/// Far-wing amplitude: mean of the two wings at +-50 field-width scales.
/// A finite sample pulls the probe point in to half its field half-range,
/// otherwise the wing would fall outside the sample.
inline double baseline_amplitude(const Model& m, const FieldProfile& profile,
                                 double rel_tol = quad::kDefaultRelTol) {
  validate(profile);
  const double w = std::max(width_field_scale(m), m.pair.H_drive);
  const double p = std::min(kBaselineOffsetInWidths * w,
                            0.25 * profile.gradient_abs * profile.extent);
  const double scale = m.gas.n_total / profile.gradient_abs;
  return 0.5 * scale *
         (integrate_support_field(p, m, profile, rel_tol) +
          integrate_support_field(-p, m, profile, rel_tol));
}

/// Default grid: centred on the drive (or probe) resonance, spanning 20
/// closed-form linewidths in the swept variable.
inline SweepSpec default_sweep(const Model& m, SweepMode mode) {
  const double gamma = mode == SweepMode::DriveSweep ? m.pair.gamma_d : m.pair.gamma_p;
  SweepSpec s;
  s.mode = mode;
  s.center = 0.0;
  s.span = kDefaultSpanInWidths * 1.5 * std::abs(gamma) * width_field_scale(m);
  s.points = kDefaultSweepPoints;
  return s;
}

inline void validate(const SweepSpec& spec) {
  if (!(spec.span > 0.0) || !std::isfinite(spec.span))
    throw Error(ErrorCode::InvalidSweep, "span must be positive");
  if (spec.points < 3) throw Error(ErrorCode::InvalidSweep, "need at least 3 points");
}

inline std::vector<double> sweep_grid(const SweepSpec& spec) {
  validate(spec);
  std::vector<double> grid(static_cast<std::size_t>(spec.points));
  const double step = spec.span / (spec.points - 1);
  const double start = spec.center - 0.5 * spec.span;
  for (int i = 0; i < spec.points; ++i) grid[i] = start + i * step;
  return grid;
}

namespace detail {

inline double parabolic_vertex(const std::vector<SpectrumSample>& s, std::size_t i) {
  if (i == 0 || i + 1 >= s.size()) return s[i].offset;
  const double ym = s[i - 1].amplitude;
  const double y0 = s[i].amplitude;
  const double yp = s[i + 1].amplitude;
  const double denom = ym - 2.0 * y0 + yp;
  if (denom == 0.0) return s[i].offset;
  const double shift = std::clamp(0.5 * (ym - yp) / denom, -0.5, 0.5);
  const double step = 0.5 * (s[i + 1].offset - s[i - 1].offset);
  return s[i].offset + shift * step;
}

}  // namespace detail

/// Positions of the global maximum and minimum, refined by a parabola through
/// the neighbouring samples. Distance is reported in Hz.
inline PeakMetrics peak_metrics(const SpectrumResult& r) {
  if (r.samples.size() < 3) throw Error(ErrorCode::InvalidSweep, "need at least 3 samples");
  auto cmp = [](const SpectrumSample& a, const SpectrumSample& b) {
    return a.amplitude < b.amplitude;
  };
  const auto [mn, mx] = std::minmax_element(r.samples.begin(), r.samples.end(), cmp);
  if (mx->amplitude - mn->amplitude < 1e-6 * r.baseline)
    throw Error(ErrorCode::FlatSpectrum, "max - min below 1e-6 of baseline");
  PeakMetrics pm;
  pm.max_position = detail::parabolic_vertex(r.samples, mx - r.samples.begin());
  pm.min_position = detail::parabolic_vertex(r.samples, mn - r.samples.begin());
  pm.distance_hz = units::angular_to_hz(std::abs(pm.max_position - pm.min_position));
  return pm;
}

/// Evaluates integrate_point on the grid. Grid points are split across worker
/// threads; each writes only its own slots, so the result does not depend on
/// the thread count.
inline SpectrumResult sweep(const SweepSpec& spec, const Model& m, const FieldProfile& profile,
                            const SpectrumOptions& opt = {}) {
  validate(profile);
  const auto grid = sweep_grid(spec);
  SpectrumResult r;
  r.mode = spec.mode;
  r.samples.resize(grid.size());

  const int nthreads =
      std::min<int>(detail::resolve_threads(opt.threads), static_cast<int>(grid.size()));
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&](int tid) {
    try {
      for (std::size_t i = tid; i < grid.size(); i += nthreads) {
        r.samples[i] = {grid[i], integrate_point(grid[i], spec.mode, m, profile, opt.rel_tol)};
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };
  if (nthreads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  r.baseline = baseline_amplitude(m, profile, opt.rel_tol);

  const auto drive = effective_precession(width_field_scale(m), m.pair);
  const auto check = fast_driving_check(drive, opt.tau, opt.fast_driving_threshold);
  if (const auto* w = std::get_if<FastDrivingWarn>(&check)) {
    r.warnings.push_back("fast-driving condition not met: omega_eff*tau = " +
                         std::to_string(w->ratio) + " < " +
                         std::to_string(opt.fast_driving_threshold));
  }

  try {
    r.metrics = peak_metrics(r);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FlatSpectrum) throw;
  }
  return r;
}

}  // namespace inedor
