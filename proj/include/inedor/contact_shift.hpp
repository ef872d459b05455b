#pragma once

#include "inedor/constants.hpp"
#include "inedor/error.hpp"
#include "inedor/model.hpp"

namespace inedor {

/// Probe-transition contact shift split into the two-level (|1>,|2>) part and
/// the part induced by the third state. All terms in rad/s.
struct ShiftBreakdown {
  double two_level_term = 0.0;
  double third_state_term = 0.0;
  double total = 0.0;
};

/// lambda = 4 pi hbar^2 a / m, erg cm^3. Scattering length in cm.
inline double lambda_from_scattering_length(double a, double mass) {
  if (!(mass > 0.0)) throw Error(ErrorCode::NonPositiveMass, "mass must be positive");
  const double hbar = kConstants.hbar;
  return 4.0 * kPi * hbar * hbar * a / mass;
}

inline ShiftBreakdown bose_shift(const GasSpec& gas) {
  if (gas.statistics != Statistics::Bose)
    throw Error(ErrorCode::WrongStatistics, "bose_shift called on a Fermi gas");
  const auto& l = gas.lambda;
  const double hbar = kConstants.hbar;
  ShiftBreakdown s;
  s.two_level_term =
      (2.0 * gas.density(1) * (l.l12 - l.l11) + 2.0 * gas.density(2) * (l.l22 - l.l12)) / hbar;
  s.third_state_term = 2.0 * gas.density(3) * gas.coherence13 * (l.l23 - l.l13) / hbar;
  s.total = s.two_level_term + s.third_state_term;
  return s;
}

/// Fermions in identical internal states do not collide in s-wave, so only the
/// incoherent admixture of |3> contributes.
inline ShiftBreakdown fermi_shift(const GasSpec& gas) {
  if (gas.statistics != Statistics::Fermi)
    throw Error(ErrorCode::WrongStatistics, "fermi_shift called on a Bose gas");
  const auto& l = gas.lambda;
  ShiftBreakdown s;
  s.third_state_term = 2.0 * gas.density(3) * gas.coherence13 * (l.l23 - l.l13) / kConstants.hbar;
  s.total = s.third_state_term;
  return s;
}

inline ShiftBreakdown contact_shift(const GasSpec& gas) {
  return gas.statistics == Statistics::Bose ? bose_shift(gas) : fermi_shift(gas);
}

}  // namespace inedor
