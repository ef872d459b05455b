#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "inedor/constants.hpp"
#include "inedor/error.hpp"

namespace inedor {

enum class Statistics { Bose, Fermi };

/// Symmetric (Bose) or antisymmetric (Fermi) interaction matrix elements, erg cm^3.
/// Which symmetry the entries carry follows GasSpec::statistics.
struct LambdaMatrix {
  double l11 = 0.0;
  double l12 = 0.0;
  double l22 = 0.0;
  double l13 = 0.0;
  double l23 = 0.0;

  bool operator==(const LambdaMatrix&) const = default;
};

struct GasSpec {
  Statistics statistics = Statistics::Bose;
  double n_total = 0.0;                         // cm^-3
  std::array<double, 3> pop_fractions{1.0, 0.0, 0.0};
  LambdaMatrix lambda;
  double coherence13 = 1.0;                     // |C+13|^2 (Bose) or |C-13|^2 (Fermi)
  double mass = kConstants.hydrogen_mass;       // g

  double density(int state) const { return n_total * pop_fractions.at(state - 1); }

  bool operator==(const GasSpec&) const = default;
};

struct ResonancePair {
  double gamma_d = 0.0;          // drive transition, rad s^-1 G^-1
  double gamma_p = 0.0;          // probe transition, rad s^-1 G^-1
  double omega12_0_at_H0 = 0.0;  // zero-density probe frequency at H0, rad/s
  double H_drive = 0.0;          // G
  double H0 = 0.0;               // G, field at which the drive is resonant

  bool operator==(const ResonancePair&) const = default;
};

struct FieldProfile {
  double gradient_abs = 1.0;  // G/cm
  double extent = std::numeric_limits<double>::infinity();  // cm

  bool operator==(const FieldProfile&) const = default;
};

/// A gas/resonance pair that has passed validate().
struct Model {
  GasSpec gas;
  ResonancePair pair;

  bool operator==(const Model&) const = default;
};

inline std::vector<Violation> check(const GasSpec& gas, const ResonancePair& pair) {
  std::vector<Violation> out;
  if (!(gas.n_total > 0.0))
    out.push_back({ErrorCode::NonPositiveDensity, "n_total = " + std::to_string(gas.n_total)});
  double sum = 0.0;
  for (double f : gas.pop_fractions) {
    if (!(f >= 0.0 && f <= 1.0))
      out.push_back({ErrorCode::PopulationOutOfRange, "fraction " + std::to_string(f)});
    sum += f;
  }
  if (!(std::abs(sum - 1.0) <= 1e-12))
    out.push_back({ErrorCode::PopulationSumMismatch, "sum = " + std::to_string(sum)});
  if (!(gas.coherence13 >= 0.0 && gas.coherence13 <= 1.0))
    out.push_back({ErrorCode::CoherenceOutOfRange, "coherence13 = " + std::to_string(gas.coherence13)});
  if (!(gas.mass > 0.0))
    out.push_back({ErrorCode::NonPositiveMass, "mass = " + std::to_string(gas.mass)});
  if (pair.gamma_d == 0.0 || !std::isfinite(pair.gamma_d))
    out.push_back({ErrorCode::ZeroGyromagneticRatio, "gamma_d"});
  if (pair.gamma_p == 0.0 || !std::isfinite(pair.gamma_p))
    out.push_back({ErrorCode::ZeroGyromagneticRatio, "gamma_p"});
  if (!(pair.H_drive > 0.0))
    out.push_back({ErrorCode::NonPositiveDriveField, "H_drive = " + std::to_string(pair.H_drive)});
  return out;
}

/// Returns the model unchanged, or throws ValidationError listing every violation.
inline Model validate(const GasSpec& gas, const ResonancePair& pair) {
  auto violations = check(gas, pair);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return Model{gas, pair};
}

inline Model validate(const Model& model) { return validate(model.gas, model.pair); }

inline void validate(const FieldProfile& profile) {
  if (!(profile.gradient_abs > 0.0) || !std::isfinite(profile.gradient_abs))
    throw Error(ErrorCode::NonPositiveGradient, "gradient_abs must be positive");
  if (!(profile.extent > 0.0))
    throw Error(ErrorCode::NonPositiveLength, "extent must be positive");
}

// ---------------------------------------------------------------------------
// Derived quantities shared by the dynamics, lineshape and spectrum code.

/// Coherence-weighted interaction difference |C13|^2 (l23 - l13), erg cm^3.
/// With this normalisation 2 n dl_eff / hbar is exactly the third-state term of
/// the contact shift when every atom sits in |3>.
inline double delta_lambda_eff(const GasSpec& gas) {
  return gas.coherence13 * (gas.lambda.l23 - gas.lambda.l13);
}

/// Full modulation amplitude 2 n dl_eff / hbar (rad/s), signed.
inline double full_contact_shift(const GasSpec& gas) {
  return 2.0 * gas.n_total * delta_lambda_eff(gas) / kConstants.hbar;
}

/// Contact-shift amplitude in probe field units, Delta H_c (G), signed.
inline double contact_field_amplitude(const Model& m) {
  return full_contact_shift(m.gas) / m.pair.gamma_p;
}

inline double rabi_frequency(const ResonancePair& pair) { return pair.gamma_d * pair.H_drive; }

/// Zeeman-only probe frequency at field H0 + h.
inline double zeeman_probe_frequency(double h, const ResonancePair& pair) {
  return pair.omega12_0_at_H0 + pair.gamma_p * h;
}

inline void require_contact_shift(const Model& m) {
  if (delta_lambda_eff(m.gas) == 0.0)
    throw Error(ErrorCode::ZeroContactShift, "coherence-weighted l23 - l13 vanishes");
}

}  // namespace inedor
