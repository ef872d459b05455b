#pragma once

#include "inedor.hpp"

namespace inedor::fixtures {

/// A generic Bose gas with a positive third-state interaction difference.
inline Model toy_model(double delta_H_c = 50.0, double H_d = 1.0) {
  GasSpec gas;
  gas.statistics = Statistics::Bose;
  gas.n_total = 1e14;
  gas.pop_fractions = {1.0, 0.0, 0.0};
  gas.lambda = {1e-32, 1e-32, 1e-32, 1e-32, 2e-32};
  gas.coherence13 = 1.0;
  ResonancePair pair;
  pair.gamma_d = 2.0e4;
  pair.gamma_p = 1.5e7;
  pair.H_drive = H_d;
  pair.H0 = 1e3;
  pair.omega12_0_at_H0 = pair.gamma_p * pair.H0;
  // Scale l23 - l13 so that Delta H_c comes out as requested.
  const double dl = delta_H_c * kConstants.hbar * pair.gamma_p / (2.0 * gas.n_total);
  gas.lambda.l23 = gas.lambda.l13 + dl;
  return validate(gas, pair);
}

inline Model with_contact_field(Model m, double delta_H_c) {
  const double dl = delta_H_c * kConstants.hbar * m.pair.gamma_p / (2.0 * m.gas.n_total * m.gas.coherence13);
  m.gas.lambda.l23 = m.gas.lambda.l13 + dl;
  return validate(m);
}

}  // namespace inedor::fixtures
