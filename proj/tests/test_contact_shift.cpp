#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace inedor;

namespace {

GasSpec bose(double n, std::array<double, 3> f, LambdaMatrix l, double c = 1.0) {
  GasSpec g;
  g.statistics = Statistics::Bose;
  g.n_total = n;
  g.pop_fractions = f;
  g.lambda = l;
  g.coherence13 = c;
  return g;
}

GasSpec fermi(double n, std::array<double, 3> f, LambdaMatrix l, double c) {
  auto g = bose(n, f, l, c);
  g.statistics = Statistics::Fermi;
  return g;
}

}  // namespace

TEST(Lambda, FromScatteringLength) {
  const double m = kConstants.hydrogen_mass;
  EXPECT_EQ(lambda_from_scattering_length(0.0, m), 0.0);
  const double l = lambda_from_scattering_length(-3e-9, m);
  EXPECT_NEAR(l, -2.5053e-38, 0.0001e-38);
  // Independent arithmetic.
  const double hb = 1.054571817e-27;
  EXPECT_NEAR(l, 4.0 * 3.14159265358979 * hb * hb * -3e-9 / 1.6735e-24, 1e-9 * std::abs(l));
  EXPECT_DOUBLE_EQ(lambda_from_scattering_length(-6e-9, m), 2.0 * l);
  // Consistent with the per-density field coefficient: |l| / (hbar gamma_e) = 1.35e-18 G cm^3.
  EXPECT_NEAR(std::abs(l) / (hb * kConstants.gamma_electron), 1.35e-18, 0.01e-18);
  EXPECT_THROW(lambda_from_scattering_length(1e-9, 0.0), Error);
}

TEST(BoseShift, TwoLevelCancelsForEqualLambdas) {
  const auto g = bose(1e14, {0.6, 0.4, 0.0}, {3e-32, 3e-32, 3e-32, 1e-32, 5e-32});
  const auto s = bose_shift(g);
  EXPECT_EQ(s.two_level_term, 0.0);
  EXPECT_EQ(s.third_state_term, 0.0);
  EXPECT_EQ(s.total, 0.0);
}

TEST(BoseShift, AllLambdasEqualGiveZero) {
  for (auto f : {std::array<double, 3>{1, 0, 0}, {0.2, 0.3, 0.5}, {0, 0, 1}}) {
    const auto s = bose_shift(bose(3e15, f, {2e-32, 2e-32, 2e-32, 2e-32, 2e-32}, 0.7));
    EXPECT_EQ(s.total, 0.0);
  }
}

TEST(BoseShift, MatchesFormula) {
  const LambdaMatrix l{1e-32, 1.5e-32, 2.5e-32, 0.5e-32, 4e-32};
  const auto g = bose(2e14, {0.5, 0.2, 0.3}, l, 0.4);
  const double hb = kConstants.hbar;
  const double n1 = 1e14, n2 = 0.4e14, n3 = 0.6e14;
  const double two = (2 * n1 * (l.l12 - l.l11) + 2 * n2 * (l.l22 - l.l12)) / hb;
  const double three = 2 * n3 * 0.4 * (l.l23 - l.l13) / hb;
  const auto s = bose_shift(g);
  EXPECT_NEAR(s.two_level_term, two, 1e-12 * std::abs(two));
  EXPECT_NEAR(s.third_state_term, three, 1e-12 * std::abs(three));
  EXPECT_NEAR(s.total, s.two_level_term + s.third_state_term, 1e-12 * std::abs(s.total));
}

TEST(BoseShift, HydrogenAllInThirdState) {
  // n3 = 6e19 with the preset's coherence factor: total / gamma_e = -89 G.
  const auto p = hydrogen::hydrogen_preset_physical_sign();
  auto g = p.gas;
  g.pop_fractions = {0.0, 0.0, 1.0};
  EXPECT_NEAR(g.density(3), 6e19, 6e19 * 1e-12);
  const auto s = bose_shift(g);
  EXPECT_NEAR(s.total / kConstants.gamma_electron, -89.0, 1e-9);
}

TEST(BoseShift, Linearity) {
  const auto g = bose(2e14, {0.5, 0.2, 0.3}, {1e-32, 1.5e-32, 2.5e-32, 0.5e-32, 4e-32}, 0.4);
  for (double a : {0.1, 2.0, 37.0}) {
    auto h = g;
    h.n_total *= a;
    EXPECT_NEAR(bose_shift(h).total, a * bose_shift(g).total, 1e-12 * std::abs(a * bose_shift(g).total));
  }
}

TEST(BoseShift, WrongStatistics) {
  const auto g = fermi(1e14, {1, 0, 0}, {}, 0.5);
  try {
    bose_shift(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongStatistics);
  }
}

TEST(FermiShift, ZeroWhenFullyCoherent) {
  const auto g = fermi(1e14, {0.5, 0.0, 0.5}, {1e-32, 2e-32, 3e-32, 1e-32, 9e-32}, 0.0);
  EXPECT_EQ(fermi_shift(g).total, 0.0);
}

TEST(FermiShift, ZeroForEqualLambdas) {
  const auto g = fermi(1e14, {0.5, 0.0, 0.5}, {1e-32, 2e-32, 3e-32, 4e-32, 4e-32}, 0.5);
  EXPECT_EQ(fermi_shift(g).total, 0.0);
}

TEST(FermiShift, ZeroWithoutThirdState) {
  for (double l23 : {-5e-32, 0.0, 7e-32}) {
    const auto g = fermi(1e14, {0.3, 0.7, 0.0}, {1e-32, 2e-32, 3e-32, 4e-32, l23}, 0.9);
    EXPECT_EQ(fermi_shift(g).total, 0.0);
    EXPECT_EQ(fermi_shift(g).two_level_term, 0.0);
  }
}

TEST(FermiShift, IncoherentLimit) {
  const double dl = 3e-32;
  const double n3 = 1e12;
  const auto g = fermi(n3, {0.0, 0.0, 1.0}, {0, 0, 0, 1e-32, 1e-32 + dl}, 0.5);
  EXPECT_NEAR(fermi_shift(g).total, n3 * dl / kConstants.hbar, 1e-12 * n3 * dl / kConstants.hbar);
}

TEST(FermiShift, WrongStatistics) {
  EXPECT_THROW(fermi_shift(bose(1e14, {1, 0, 0}, {})), Error);
}

TEST(ContactShift, Dispatch) {
  const auto g = fermi(1e12, {0.0, 0.0, 1.0}, {0, 0, 0, 1e-32, 4e-32}, 0.5);
  EXPECT_EQ(contact_shift(g).total, fermi_shift(g).total);
  auto b = g;
  b.statistics = Statistics::Bose;
  EXPECT_EQ(contact_shift(b).total, bose_shift(b).total);
}

TEST(ContactShift, ModulationAmplitudeEqualsThirdStateTerm) {
  // 2 n dl_eff / hbar is the third-state term with everyone in |3>.
  const auto m = fixtures::toy_model(50.0);
  auto g = m.gas;
  g.pop_fractions = {0, 0, 1};
  EXPECT_NEAR(full_contact_shift(m.gas), bose_shift(g).third_state_term,
              1e-12 * std::abs(full_contact_shift(m.gas)));
}
