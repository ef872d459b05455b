#pragma once

#include <cmath>

#include "inedor/model.hpp"
#include "inedor/rabi.hpp"

namespace inedor {

struct LineshapePoint {
  double x = 0.0;           // reduced detuning, also the |3> fraction at resonance
  double sin2_theta = 0.0;
  double density = 0.0;     // time-averaged absorption density, arbitrary units
};

/// Field names keep the Zeeman-only (lower) / Zeeman plus mean-field (upper)
/// identity; for a negative contact shift `upper` lies below `lower`.
struct FrequencyBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Lorentzian in h: (2 n dl_eff / hbar) H_d^2 / (H_d^2 + h^2), signed.
inline double modulation_amplitude(double h, const GasSpec& gas, const ResonancePair& pair) {
  const double hd2 = pair.H_drive * pair.H_drive;
  return full_contact_shift(gas) * hd2 / (hd2 + h * h);
}

inline FrequencyBounds probe_bounds(double h, const GasSpec& gas, const ResonancePair& pair) {
  FrequencyBounds b;
  b.lower = zeeman_probe_frequency(h, pair);
  b.upper = b.lower + modulation_amplitude(h, gas, pair);
  return b;
}

inline double reduced_x(double h, double omega_p, const GasSpec& gas, const ResonancePair& pair) {
  const double full = full_contact_shift(gas);
  if (full == 0.0) throw Error(ErrorCode::ZeroContactShift, "reduced detuning undefined");
  return (omega_p - zeeman_probe_frequency(h, pair)) / full;
}

/// (1 - x) / (2 pi sqrt(x (s - x))) on the open support 0 < x < s, zero elsewhere.
/// Integrates to (1 - s/2)/2 over the support: one traversal of the Rabi half-cycle.
inline double arcsine_density(double x, double sin2_theta) {
  if (!(x > 0.0 && x < sin2_theta)) return 0.0;
  return (1.0 - x) / (2.0 * kPi * std::sqrt(x * (sin2_theta - x)));
}

inline LineshapePoint absorption_density(double h, double omega_p, const GasSpec& gas,
                                         const ResonancePair& pair) {
  LineshapePoint pt;
  pt.sin2_theta = effective_precession(h, pair).sin2_theta;
  pt.x = reduced_x(h, omega_p, gas, pair);
  pt.density = arcsine_density(pt.x, pt.sin2_theta);
  return pt;
}

/// Field scale of the linewidth, (2 |Delta H_c| H_d^2)^(1/3) in gauss: the
/// large-contact-shift position of the stationary point of the upper bound.
inline double width_field_scale(const Model& m) {
  const double dhc = std::abs(contact_field_amplitude(m));
  return std::cbrt(2.0 * dhc * m.pair.H_drive * m.pair.H_drive);
}

}  // namespace inedor
