#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace inedor;

TEST(Hydrogen, ThreeDimensionalDensity) {
  const hydrogen::HydrogenParams p;
  EXPECT_NEAR(p.n_3d(), 6e19, 6e19 * 1e-12);
  EXPECT_NEAR(hydrogen::hydrogen_preset().gas.n_total, 6e19, 6e19 * 1e-12);
}

TEST(Hydrogen, PinnedContactAmplitude) {
  EXPECT_NEAR(contact_field_amplitude(hydrogen::hydrogen_preset().model()), 89.0, 1e-12 * 89.0);
  EXPECT_NEAR(contact_field_amplitude(hydrogen::hydrogen_preset_physical_sign().model()), -89.0,
              1e-12 * 89.0);
}

TEST(Hydrogen, RabiFrequency) {
  const auto m = hydrogen::hydrogen_preset().model();
  EXPECT_NEAR(rabi_frequency(m.pair), 26.8, 0.05);
}

TEST(Hydrogen, CoherenceFactorInRange) {
  const double c = hydrogen::hydrogen_preset().gas.coherence13;
  EXPECT_GT(c, 0.0);
  EXPECT_LE(c, 1.0);
}

TEST(Hydrogen, PerDensityCoefficient) {
  const hydrogen::HydrogenParams p;
  const auto r = hydrogen::contact_field_shift(p.n_2d, p.l, p.delta_a, kConstants.gamma_electron);
  // Independent arithmetic: 4 pi hbar |da| / (m gamma_e).
  const double coeff = 4.0 * 3.141592653589793 * 1.054571817e-27 * 3e-9 / (1.6735e-24 * 1.76085963e7);
  EXPECT_NEAR(r.per_density_coeff, coeff, 1e-9 * coeff);
  EXPECT_NEAR(r.per_density_coeff, 1.35e-18, 0.01e-18);
  EXPECT_GE(r.per_density_coeff, 1.0e-18);
  EXPECT_LE(r.per_density_coeff, 2.0e-18);
  EXPECT_NEAR(r.delta_H_c, 81.0, 0.5);
  // Within a third (the relative uncertainty of da) of the 89 G pinned value.
  EXPECT_LT(std::abs(r.delta_H_c - 89.0) / 89.0, 1.0 / 3.0);
}

TEST(Hydrogen, ContactFieldShiftEdgeCases) {
  EXPECT_EQ(hydrogen::contact_field_shift(3e12, 5e-8, 0.0, kConstants.gamma_electron).delta_H_c, 0.0);
  try {
    hydrogen::contact_field_shift(3e12, 0.0, -3e-9, kConstants.gamma_electron);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveLength);
  }
}

TEST(Hydrogen, MinDetectablePopulation) {
  const auto p = hydrogen::hydrogen_preset();
  const auto r = hydrogen::min_detectable_population(p.model(), p.params, 1e-9);
  // Order of magnitude: n3 ~ 2e6 cm^-2, n3/n ~ 1e-6.
  EXPECT_GT(r.n3_min_2d, 2e6 / 3.0);
  EXPECT_LT(r.n3_min_2d, 2e6 * 3.0);
  EXPECT_GT(r.fraction, 1e-6 / 3.0);
  EXPECT_LT(r.fraction, 1e-6 * 3.0);
  // Independent: delta_omega_p / (gamma_e * 89 G) times n_2d.
  EXPECT_NEAR(r.fraction, 1e-9 * 4.5e4 / 89.0, 1e-12 * r.fraction + 1e-20);
  EXPECT_FALSE(r.limited_by_homogeneous_width);
}

TEST(Hydrogen, ZeroSourceWidth) {
  const auto p = hydrogen::hydrogen_preset();
  const auto r = hydrogen::min_detectable_population(p.model(), p.params, 0.0);
  EXPECT_EQ(r.n3_min_2d, 0.0);
  EXPECT_TRUE(r.limited_by_homogeneous_width);
}

TEST(Hydrogen, ProbeFrequency) {
  const auto m = hydrogen::hydrogen_preset().model();
  EXPECT_NEAR(m.pair.omega12_0_at_H0, kConstants.gamma_electron * 4.5e4, 1.0);
  EXPECT_NEAR(units::angular_to_hz(m.pair.omega12_0_at_H0), 1.26e11, 0.01e11);
}
