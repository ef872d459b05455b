#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"

using namespace inedor;

namespace {

const Model& hydrogen_model() {
  static const Model m = hydrogen::hydrogen_preset().model();
  return m;
}

const SpectrumResult& hydrogen_drive_sweep() {
  static const SpectrumResult r = [] {
    const auto& m = hydrogen_model();
    return sweep(default_sweep(m, SweepMode::DriveSweep), m, FieldProfile{});
  }();
  return r;
}

}  // namespace

TEST(SweepSpec, Validation) {
  EXPECT_THROW(validate(SweepSpec{SweepMode::DriveSweep, 0.0, 0.0, 10}), Error);
  EXPECT_THROW(validate(SweepSpec{SweepMode::DriveSweep, 0.0, 1.0, 2}), Error);
  EXPECT_NO_THROW(validate(SweepSpec{SweepMode::DriveSweep, 0.0, 1.0, 3}));
}

TEST(SweepSpec, DefaultSpanIsTwentyWidths) {
  const auto& m = hydrogen_model();
  const auto s = default_sweep(m, SweepMode::DriveSweep);
  const double w13 = width_closed_form(m).delta_omega13;
  EXPECT_NEAR(s.span, 20.0 * w13, 1e-9 * s.span);
  EXPECT_EQ(s.points, 2000);
  EXPECT_EQ(s.center, 0.0);
  const auto p = default_sweep(m, SweepMode::ProbeSweep);
  EXPECT_NEAR(p.span, 20.0 * width_closed_form(m).delta_omega12, 1e-9 * p.span);
}

TEST(Sweep, SortedNonNegativePositiveBaseline) {
  const auto& r = hydrogen_drive_sweep();
  ASSERT_EQ(r.samples.size(), 2000u);
  EXPECT_GT(r.baseline, 0.0);
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    EXPECT_GE(r.samples[i].amplitude, 0.0);
    if (i > 0) {
      EXPECT_GT(r.samples[i].offset, r.samples[i - 1].offset);
    }
  }
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Sweep, HydrogenShape) {
  const auto& r = hydrogen_drive_sweep();
  ASSERT_TRUE(r.metrics.has_value());
  const auto& pm = *r.metrics;
  // 330 Hz numerical max-to-min distance, +-15%.
  EXPECT_NEAR(pm.distance_hz, 330.0, 0.15 * 330.0);
  // Wings flat and equal to within 1%.
  const double left = r.samples.front().amplitude / r.baseline;
  const double right = r.samples.back().amplitude / r.baseline;
  EXPECT_LT(std::abs(left - right), 0.01);
  EXPECT_LT(std::abs(left - 1.0), 0.01);
  EXPECT_LT(std::abs(right - 1.0), 0.01);
  // Sharp peak above baseline, hole below baseline, peak first in drive frequency.
  const auto [mn, mx] = std::minmax_element(r.samples.begin(), r.samples.end(),
                                            [](auto& a, auto& b) { return a.amplitude < b.amplitude; });
  EXPECT_GT(mx->amplitude, 1.5 * r.baseline);
  EXPECT_LT(mn->amplitude, 0.9 * r.baseline);
  EXPECT_LT(pm.max_position, pm.min_position);
  // Peak sits at the probe level equal to the minimum of the upper bound.
  const double w13 = width_closed_form(hydrogen_model()).delta_omega13;
  EXPECT_NEAR(pm.max_position, -w13, 0.05 * w13);
}

TEST(IntegratePoint, FeaturesRelativeToBaseline) {
  const auto& m = hydrogen_model();
  const FieldProfile prof;
  const double base = baseline_amplitude(m, prof);
  const double gd = m.pair.gamma_d;
  const double w = width_field_scale(m);
  // Far detuned on both sides.
  for (double o : {-200.0 * gd * w, 200.0 * gd * w})
    EXPECT_NEAR(integrate_point(o, SweepMode::DriveSweep, m, prof) / base, 1.0, 1e-2);
  // Probe level just above the local minimum of the upper bound: the peak.
  const double hs = *stationary_field_exact(m);
  const double pmin = upper_bound_field(hs, m);
  const double at_peak = m.gas.n_total * integrate_support_field(pmin * (1 + 1e-4), m, prof);
  EXPECT_GT(at_peak, base);
  // Inside the drive resonance: the hole.
  EXPECT_LT(integrate_point(-0.5 * gd * w, SweepMode::DriveSweep, m, prof), base);
}

TEST(Sweep, MirrorBetweenDriveAndProbe) {
  const auto& m = hydrogen_model();
  const FieldProfile prof;
  SweepSpec d = default_sweep(m, SweepMode::DriveSweep);
  d.points = 401;
  d.center = 0.1 * d.span;  // asymmetric grid so the mapping is non-trivial
  const auto rd = sweep(d, m, prof);
  const double k = m.pair.gamma_p / m.pair.gamma_d;
  SweepSpec p{SweepMode::ProbeSweep, -k * d.center, k * d.span, d.points};
  const auto rp = sweep(p, m, prof);
  ASSERT_EQ(rd.samples.size(), rp.samples.size());
  const std::size_t n = rd.samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double a = rd.samples[i].amplitude;
    const double b = rp.samples[n - 1 - i].amplitude;
    EXPECT_NEAR(a, b, 1e-6 * std::max(a, b)) << i;
  }
}

TEST(Sweep, GradientInvariance) {
  const auto& m = hydrogen_model();
  SweepSpec s = default_sweep(m, SweepMode::DriveSweep);
  s.points = 600;
  const auto r1 = sweep(s, m, FieldProfile{1.0});
  const auto r2 = sweep(s, m, FieldProfile{2.0});
  for (std::size_t i = 0; i < r1.samples.size(); ++i)
    EXPECT_NEAR(r1.samples[i].amplitude / r2.samples[i].amplitude, 2.0, 2e-6);
  EXPECT_NEAR(r1.baseline / r2.baseline, 2.0, 2e-6);
  const double step_hz = units::angular_to_hz(s.span / (s.points - 1));
  EXPECT_NEAR(r1.metrics->distance_hz, r2.metrics->distance_hz, step_hz);
}

TEST(Sweep, SignFlipMirrors) {
  const auto pos = hydrogen::hydrogen_preset().model();
  const auto neg = hydrogen::hydrogen_preset_physical_sign().model();
  SweepSpec s = default_sweep(pos, SweepMode::DriveSweep);
  s.points = 801;  // symmetric about zero
  const auto a = sweep(s, pos, FieldProfile{});
  const auto b = sweep(s, neg, FieldProfile{});
  const std::size_t n = a.samples.size();
  for (std::size_t i = 0; i < n; ++i)
    EXPECT_NEAR(a.samples[i].amplitude, b.samples[n - 1 - i].amplitude, 1e-6 * a.samples[i].amplitude);
  const double step = s.span / (s.points - 1);
  EXPECT_NEAR(a.metrics->max_position, -b.metrics->max_position, step);
  EXPECT_NEAR(a.metrics->min_position, -b.metrics->min_position, step);
  EXPECT_GT(b.metrics->max_position, b.metrics->min_position);
}

TEST(Sweep, MonotoneWings) {
  const auto& m = hydrogen_model();
  const auto& r = hydrogen_drive_sweep();
  const double edge = 10.0 * std::abs(m.pair.gamma_d) * width_field_scale(m);
  const double slack = 1e-6 * r.baseline;
  // Walking outwards, |amplitude - baseline| never grows.
  double prev_left = INFINITY, prev_right = INFINITY;
  const std::size_t n = r.samples.size();
  for (std::size_t k = 0; k < n / 2; ++k) {
    const auto& right = r.samples[n / 2 + k];
    const auto& left = r.samples[n / 2 - 1 - k];
    if (right.offset > edge) {
      const double d = std::abs(right.amplitude - r.baseline);
      if (std::isfinite(prev_right)) {
        EXPECT_LE(d, prev_right + slack) << right.offset;
      }
      prev_right = d;
    }
    if (left.offset < -edge) {
      const double d = std::abs(left.amplitude - r.baseline);
      if (std::isfinite(prev_left)) {
        EXPECT_LE(d, prev_left + slack) << left.offset;
      }
      prev_left = d;
    }
  }
  EXPECT_TRUE(std::isfinite(prev_left));
  EXPECT_TRUE(std::isfinite(prev_right));
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
  const auto& m = hydrogen_model();
  SweepSpec s = default_sweep(m, SweepMode::DriveSweep);
  s.points = 300;
  SpectrumOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const auto a = sweep(s, m, FieldProfile{}, one);
  const auto b = sweep(s, m, FieldProfile{}, many);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].offset, b.samples[i].offset);
    EXPECT_EQ(a.samples[i].amplitude, b.samples[i].amplitude);
  }
  EXPECT_EQ(a.baseline, b.baseline);
}

TEST(Sweep, FastDrivingWarning) {
  const auto& m = hydrogen_model();
  SweepSpec s = default_sweep(m, SweepMode::DriveSweep);
  s.points = 5;
  SpectrumOptions opt;
  opt.tau = 1e-3;
  const auto r = sweep(s, m, FieldProfile{}, opt);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("fast-driving"), std::string::npos);
}

TEST(Sweep, LargeFiniteExtentMatchesUnbounded) {
  const auto& m = hydrogen_model();
  const double w = width_field_scale(m);
  for (double p : {-3.0 * w, 0.5 * w, 2.0 * w}) {
    const double inf = integrate_support_field(p, m, FieldProfile{});
    const double fin = integrate_support_field(p, m, FieldProfile{1.0, 1e3});
    EXPECT_NEAR(fin, inf, 1e-9 * inf);
  }
  // A sample shorter than the support loses weight.
  const double clipped = integrate_support_field(0.5 * w, m, FieldProfile{1.0, 2.0 * m.pair.H_drive});
  EXPECT_LT(clipped, integrate_support_field(0.5 * w, m, FieldProfile{}));
}

TEST(Sweep, BaselineStaysInsideNarrowSample) {
  // Half-range 2.5 G, narrower than 50 field widths (2.8 G).
  const auto& m = hydrogen_model();
  const FieldProfile narrow{10.0, 0.5};
  ASSERT_LT(0.5 * narrow.gradient_abs * narrow.extent, 50.0 * width_field_scale(m));
  const double unbounded = baseline_amplitude(m, FieldProfile{10.0});
  EXPECT_NEAR(baseline_amplitude(m, narrow), unbounded, 0.01 * unbounded);
}

TEST(PeakMetrics, FlatSpectrum) {
  SpectrumResult r;
  r.baseline = 1.0;
  for (int i = 0; i < 5; ++i) r.samples.push_back({double(i), 1.0});
  try {
    peak_metrics(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FlatSpectrum);
  }
}

TEST(PeakMetrics, ParabolicRefinement) {
  SpectrumResult r;
  r.baseline = 1.0;
  // y = -(x - 0.3)^2 + 5 sampled on integers has its vertex at 0.3.
  for (int i = -5; i <= 5; ++i) r.samples.push_back({double(i), 5.0 - (i - 0.3) * (i - 0.3) + 30.0});
  const auto pm = peak_metrics(r);
  EXPECT_NEAR(pm.max_position, 0.3, 1e-12);
}

TEST(PeakMetrics, NeedsThreeSamples) {
  SpectrumResult r;
  r.baseline = 1.0;
  r.samples = {{0.0, 1.0}, {1.0, 2.0}};
  EXPECT_THROW(peak_metrics(r), Error);
}
