#pragma once

// Two-dimensional atomic hydrogen ENDOR parameters. The drive is the |a>-|b>
// nuclear transition (proton gyromagnetic ratio), the probe the |b>-|c> ESR
// transition (electron gyromagnetic ratio). Atoms adsorbed on a surface are
// treated as a 3D gas of density n_2d / l.

#include <cmath>
#include <tuple>

#include "inedor/constants.hpp"
#include "inedor/contact_shift.hpp"
#include "inedor/error.hpp"
#include "inedor/model.hpp"

namespace inedor::hydrogen {

struct HydrogenParams {
  double n_2d = 3e12;                         // cm^-2
  double l = 5e-8;                            // out-of-plane delocalization, cm
  double delta_a = -30.0 * units::kPicometre; // a_s - a_t, cm
  double delta_a_uncertainty = 10.0 * units::kPicometre;
  double a_triplet = 72.0 * units::kPicometre; // reference level for the lambda matrix, cm
  double H_drive = 1e-3;                      // G
  double polarizing_field = 4.5e4;            // G
  double gamma_p = kConstants.gamma_electron;
  double gamma_d = kConstants.gamma_proton;
  int contact_sign = +1;                      // +1: sign-flipped as in the model figures
  double delta_H_c = 89.0;                    // pinned contact-shift amplitude, G
  double reported_per_density_coeff = 1.5e-18;  // G cm^3
  double reported_per_density_uncertainty = 0.5e-18;
  double source_relative_width = 1e-9;

  double n_3d() const { return n_2d / l; }
};

struct Preset {
  GasSpec gas;
  ResonancePair pair;
  HydrogenParams params;

  Model model() const { return Model{gas, pair}; }
};

struct ContactFieldShift {
  double delta_H_c = 0.0;          // G
  double per_density_coeff = 0.0;  // G cm^3
};

/// Contact-shift amplitude in field units from the singlet-triplet scattering
/// length difference: 4 pi hbar |da| / (m gamma) per unit 3D density.
inline ContactFieldShift contact_field_shift(double n_2d, double l, double delta_a,
                                             double gamma_probe,
                                             double mass = kConstants.hydrogen_mass) {
  if (!(l > 0.0)) throw Error(ErrorCode::NonPositiveLength, "delocalization length must be positive");
  if (!(mass > 0.0)) throw Error(ErrorCode::NonPositiveMass, "mass must be positive");
  ContactFieldShift r;
  r.per_density_coeff = 4.0 * kPi * kConstants.hbar * std::abs(delta_a) / (mass * gamma_probe);
  r.delta_H_c = r.per_density_coeff * (n_2d / l);
  return r;
}

/// Builds the preset from `params`. The coherence factor |C+13|^2 is solved
/// for so that the contact-shift amplitude equals params.delta_H_c.
inline Preset make_preset(const HydrogenParams& params) {
  const double m = kConstants.hydrogen_mass;
  const double n = params.n_3d();
  const double l_t = lambda_from_scattering_length(params.a_triplet, m);
  const double dl = std::abs(lambda_from_scattering_length(params.delta_a, m));
  const double sign = params.contact_sign >= 0 ? 1.0 : -1.0;

  Preset p;
  p.params = params;
  p.gas.statistics = Statistics::Bose;
  p.gas.n_total = n;
  p.gas.pop_fractions = {1.0, 0.0, 0.0};
  p.gas.lambda = {l_t, l_t, l_t, l_t, l_t + sign * dl};
  p.gas.mass = m;
  p.gas.coherence13 =
      params.delta_H_c * kConstants.hbar * params.gamma_p / (2.0 * n * (p.gas.lambda.l23 - l_t) * sign);

  p.pair.gamma_d = params.gamma_d;
  p.pair.gamma_p = params.gamma_p;
  p.pair.H_drive = params.H_drive;
  p.pair.H0 = params.polarizing_field;
  p.pair.omega12_0_at_H0 = params.gamma_p * params.polarizing_field;

  // Throws if the back-solved coherence left [0, 1].
  validate(p.gas, p.pair);
  return p;
}

/// Default preset: contact shift sign-flipped (positive), Delta H_c = 89 G.
inline Preset hydrogen_preset() { return make_preset(HydrogenParams{}); }

/// Same physics with the physical (negative) contact shift.
inline Preset hydrogen_preset_physical_sign() {
  HydrogenParams params;
  params.contact_sign = -1;
  return make_preset(params);
}

struct MinDetectable {
  double n3_min_2d = 0.0;   // cm^-2
  double fraction = 0.0;    // n3 / n
  bool limited_by_homogeneous_width = false;  // zero source width: no bound from the source
};

/// Smallest |3> population whose full modulation amplitude equals the probe
/// source width, source_relative_width * omega12^(0)(H0).
inline MinDetectable min_detectable_population(const Model& m, const HydrogenParams& params,
                                               double source_relative_width) {
  MinDetectable r;
  if (!(source_relative_width > 0.0)) {
    r.limited_by_homogeneous_width = true;
    return r;
  }
  const double source_width = source_relative_width * std::abs(m.pair.omega12_0_at_H0);
  const double full = std::abs(full_contact_shift(m.gas));
  if (full == 0.0) throw Error(ErrorCode::ZeroContactShift, "no modulation");
  r.fraction = source_width / full;
  r.n3_min_2d = r.fraction * params.n_2d;
  return r;
}

}  // namespace inedor::hydrogen
