#pragma once

// CGS-Gaussian throughout: gauss, cm, g, erg, s. Frequencies are angular (rad/s)
// everywhere except at I/O boundaries.

#include <numbers>

namespace inedor {

struct PhysicalConstants {
  double hbar = 1.054571817e-27;        // erg s
  double gamma_electron = 1.76085963e7; // rad s^-1 G^-1
  double gamma_proton = 2.6752218744e4; // rad s^-1 G^-1
  double hydrogen_mass = 1.6735e-24;    // g
};

inline constexpr PhysicalConstants kConstants{};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

namespace units {

inline constexpr double kPicometre = 1e-10;  // cm

inline constexpr double hz_to_angular(double hz) { return kTwoPi * hz; }
inline constexpr double angular_to_hz(double omega) { return omega / kTwoPi; }

inline constexpr double field_to_angular(double gauss, double gamma) { return gamma * gauss; }
inline constexpr double angular_to_field(double omega, double gamma) { return omega / gamma; }

}  // namespace units
}  // namespace inedor
