#pragma once

// Relaxation-free Rabi precession on the drive transition and the resulting
// time-dependent probe frequency. The drive frequency itself is taken as
// constant (|2> is assumed to stay essentially empty).

#include <cmath>
#include <variant>

#include "inedor/model.hpp"

namespace inedor {

struct DriveState {
  double h = 0.0;           // static field offset from the drive resonance, G
  double sin2_theta = 1.0;  // maximal transfer fraction
  double omega_eff = 0.0;   // generalized Rabi rate, rad/s
  double omega_rabi = 0.0;  // gamma_d H_d, rad/s

  double period() const { return kTwoPi / omega_eff; }
};

inline DriveState effective_precession(double h, const ResonancePair& pair) {
  const double hd2 = pair.H_drive * pair.H_drive;
  const double r2 = hd2 + h * h;
  DriveState s;
  s.h = h;
  s.sin2_theta = hd2 / r2;
  s.omega_eff = std::abs(pair.gamma_d) * std::sqrt(r2);
  s.omega_rabi = std::abs(pair.gamma_d) * pair.H_drive;
  return s;
}

/// Fraction of the gas in |3> at time t.
inline double transfer_fraction(const DriveState& s, double t) {
  const double sn = std::sin(0.5 * s.omega_eff * t);
  return s.sin2_theta * sn * sn;
}

struct Populations {
  double n1 = 0.0;
  double n3 = 0.0;
};

inline Populations populations_at(const DriveState& s, double t, double n) {
  Populations p;
  p.n3 = n * transfer_fraction(s, t);
  p.n1 = n - p.n3;
  return p;
}

inline double probe_frequency_at(const DriveState& s, double t, const GasSpec& gas,
                                 const ResonancePair& pair) {
  return zeeman_probe_frequency(s.h, pair) + full_contact_shift(gas) * transfer_fraction(s, t);
}

/// Mean of probe_frequency_at over one period (mean of sin^2 is 1/2).
inline double mean_probe_frequency(const DriveState& s, const GasSpec& gas,
                                   const ResonancePair& pair) {
  return zeeman_probe_frequency(s.h, pair) + 0.5 * full_contact_shift(gas) * s.sin2_theta;
}

struct FastDrivingPass {};
struct FastDrivingWarn {
  double ratio;
};
using FastDrivingResult = std::variant<FastDrivingPass, FastDrivingWarn>;

inline constexpr double kDefaultFastDrivingThreshold = 10.0;

/// The detector averages over many modulation cycles only if omega_eff tau is large.
inline FastDrivingResult fast_driving_check(const DriveState& s, double tau,
                                            double threshold = kDefaultFastDrivingThreshold) {
  const double ratio = s.omega_eff * tau;
  if (ratio >= threshold) return FastDrivingPass{};
  return FastDrivingWarn{ratio};
}

inline bool passes(const FastDrivingResult& r) {
  return std::holds_alternative<FastDrivingPass>(r);
}

}  // namespace inedor
