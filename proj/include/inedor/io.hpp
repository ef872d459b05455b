#pragma once

// Run configuration (flat JSON, unit-suffixed keys) and the CSV / JSON writers.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "json.hpp"

#include "inedor/constants.hpp"
#include "inedor/contact_shift.hpp"
#include "inedor/error.hpp"
#include "inedor/hydrogen.hpp"
#include "inedor/model.hpp"
#include "inedor/spectrum.hpp"

namespace inedor::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kPresetHydrogen = "hydrogen-2d";
inline constexpr const char* kPresetHydrogenPhysical = "hydrogen-2d-physical-sign";

struct RunConfig {
  std::string preset;  // empty for fully explicit parameters
  Model model;
  FieldProfile profile;
  hydrogen::HydrogenParams hydrogen;  // meaningful only with a hydrogen preset

  std::optional<SweepMode> mode;
  std::optional<double> center_hz;
  std::optional<double> span_hz;
  std::optional<int> points;

  double tolerance = quad::kDefaultRelTol;
  double fast_driving_threshold = kDefaultFastDrivingThreshold;
  double tau_s = 1.0;

  std::string out;
  std::string summary;
};

inline RunConfig preset_config(const std::string& name) {
  RunConfig c;
  c.preset = name;
  hydrogen::Preset p;
  if (name == kPresetHydrogen) {
    p = hydrogen::hydrogen_preset();
  } else if (name == kPresetHydrogenPhysical) {
    p = hydrogen::hydrogen_preset_physical_sign();
  } else {
    throw Error(ErrorCode::ConfigError, "unknown preset '" + name + "'");
  }
  c.model = p.model();
  c.hydrogen = p.params;
  return c;
}

inline SweepMode parse_mode(const std::string& s) {
  if (s == "drive") return SweepMode::DriveSweep;
  if (s == "probe") return SweepMode::ProbeSweep;
  throw Error(ErrorCode::ConfigError, "mode must be 'drive' or 'probe', got '" + s + "'");
}

inline std::string mode_name(SweepMode m) { return m == SweepMode::DriveSweep ? "drive" : "probe"; }

namespace detail {

inline double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw Error(ErrorCode::ConfigError, "'" + key + "' must be a number");
  return v.get<double>();
}

inline std::string text(const json& v, const std::string& key) {
  if (!v.is_string()) throw Error(ErrorCode::ConfigError, "'" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace detail

/// Parses a flat JSON config. A `preset` key, if present, is applied first and
/// the remaining keys override it. Unknown keys (including unknown unit
/// suffixes) are rejected. The result is validated.
inline RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigError, "config must be a JSON object");
  RunConfig c;
  if (auto it = j.find("preset"); it != j.end()) c = preset_config(detail::text(*it, "preset"));

  auto& gas = c.model.gas;
  auto& pair = c.model.pair;
  std::optional<double> n2d, l;
  std::map<std::string, double> scattering_pm;

  using Setter = std::function<void(const json&, const std::string&)>;
  auto num = [](double& target) -> Setter {
    return [&target](const json& v, const std::string& k) { target = detail::number(v, k); };
  };
  auto scaled = [](double& target, double factor) -> Setter {
    return [&target, factor](const json& v, const std::string& k) {
      target = factor * detail::number(v, k);
    };
  };
  const std::map<std::string, Setter> keys = {
      {"preset", [](const json&, const std::string&) {}},
      {"statistics",
       [&](const json& v, const std::string& k) {
         const auto s = detail::text(v, k);
         if (s == "bose") gas.statistics = Statistics::Bose;
         else if (s == "fermi") gas.statistics = Statistics::Fermi;
         else throw Error(ErrorCode::ConfigError, "statistics must be 'bose' or 'fermi'");
       }},
      {"n_per_cm3", num(gas.n_total)},
      {"n2d_per_cm2", [&](const json& v, const std::string& k) { n2d = detail::number(v, k); }},
      {"l_cm", [&](const json& v, const std::string& k) { l = detail::number(v, k); }},
      {"pop_fractions",
       [&](const json& v, const std::string& k) {
         if (!v.is_array() || v.size() != 3)
           throw Error(ErrorCode::ConfigError, "'" + k + "' must be an array of 3 numbers");
         for (int i = 0; i < 3; ++i) gas.pop_fractions[i] = detail::number(v[i], k);
       }},
      {"coherence13", num(gas.coherence13)},
      {"mass_g", num(gas.mass)},
      {"lambda11_erg_cm3", num(gas.lambda.l11)},
      {"lambda12_erg_cm3", num(gas.lambda.l12)},
      {"lambda22_erg_cm3", num(gas.lambda.l22)},
      {"lambda13_erg_cm3", num(gas.lambda.l13)},
      {"lambda23_erg_cm3", num(gas.lambda.l23)},
      {"gamma_d_rad_per_s_per_gauss", num(pair.gamma_d)},
      {"gamma_p_rad_per_s_per_gauss", num(pair.gamma_p)},
      {"gamma_d_hz_per_gauss", scaled(pair.gamma_d, kTwoPi)},
      {"gamma_p_hz_per_gauss", scaled(pair.gamma_p, kTwoPi)},
      {"omega12_0_rad_per_s", num(pair.omega12_0_at_H0)},
      {"omega12_0_hz", scaled(pair.omega12_0_at_H0, kTwoPi)},
      {"H_drive_gauss", num(pair.H_drive)},
      {"H0_gauss", num(pair.H0)},
      {"gradient_gauss_per_cm", num(c.profile.gradient_abs)},
      {"extent_cm", num(c.profile.extent)},
      {"mode", [&](const json& v, const std::string& k) { c.mode = parse_mode(detail::text(v, k)); }},
      {"center_hz", [&](const json& v, const std::string& k) { c.center_hz = detail::number(v, k); }},
      {"span_hz", [&](const json& v, const std::string& k) { c.span_hz = detail::number(v, k); }},
      {"points",
       [&](const json& v, const std::string& k) {
         if (!v.is_number_integer()) throw Error(ErrorCode::ConfigError, "'" + k + "' must be an integer");
         c.points = v.get<int>();
       }},
      {"tolerance", num(c.tolerance)},
      {"fast_driving_threshold", num(c.fast_driving_threshold)},
      {"tau_s", num(c.tau_s)},
      {"out", [&](const json& v, const std::string& k) { c.out = detail::text(v, k); }},
      {"summary", [&](const json& v, const std::string& k) { c.summary = detail::text(v, k); }},
  };
  const std::vector<std::string> scattering_keys = {"a11_pm", "a12_pm", "a22_pm", "a13_pm",
                                                    "a23_pm"};

  for (const auto& [key, value] : j.items()) {
    if (auto it = keys.find(key); it != keys.end()) {
      it->second(value, key);
    } else if (std::find(scattering_keys.begin(), scattering_keys.end(), key) !=
               scattering_keys.end()) {
      scattering_pm[key] = detail::number(value, key);
    } else {
      throw Error(ErrorCode::ConfigError, "unknown key or unsupported unit: '" + key + "'");
    }
  }

  if (n2d || l) {
    if (c.preset.empty() && !(n2d && l))
      throw Error(ErrorCode::ConfigError, "n2d_per_cm2 and l_cm must be given together");
    if (n2d) c.hydrogen.n_2d = *n2d;
    if (l) c.hydrogen.l = *l;
    if (!(c.hydrogen.l > 0.0)) throw Error(ErrorCode::NonPositiveLength, "l_cm must be positive");
    gas.n_total = c.hydrogen.n_3d();
  }
  for (const auto& [key, a_pm] : scattering_pm) {
    const double lam = lambda_from_scattering_length(a_pm * units::kPicometre, gas.mass);
    if (key == "a11_pm") gas.lambda.l11 = lam;
    if (key == "a12_pm") gas.lambda.l12 = lam;
    if (key == "a22_pm") gas.lambda.l22 = lam;
    if (key == "a13_pm") gas.lambda.l13 = lam;
    if (key == "a23_pm") gas.lambda.l23 = lam;
  }

  c.model = validate(c.model);
  validate(c.profile);
  if (c.points && *c.points < 3) throw Error(ErrorCode::ConfigError, "points must be >= 3");
  if (c.span_hz && !(*c.span_hz > 0.0)) throw Error(ErrorCode::ConfigError, "span_hz must be positive");
  if (!(c.tolerance > 0.0)) throw Error(ErrorCode::ConfigError, "tolerance must be positive");
  if (!(c.tau_s > 0.0)) throw Error(ErrorCode::ConfigError, "tau_s must be positive");
  return c;
}

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

/// Explicit-parameter form of a config; parse_config(to_json(c)) reproduces
/// c.model and c.profile exactly.
inline ordered_json to_json(const RunConfig& c) {
  const auto& g = c.model.gas;
  const auto& p = c.model.pair;
  ordered_json j;
  j["statistics"] = g.statistics == Statistics::Bose ? "bose" : "fermi";
  j["n_per_cm3"] = g.n_total;
  j["pop_fractions"] = {g.pop_fractions[0], g.pop_fractions[1], g.pop_fractions[2]};
  j["coherence13"] = g.coherence13;
  j["mass_g"] = g.mass;
  j["lambda11_erg_cm3"] = g.lambda.l11;
  j["lambda12_erg_cm3"] = g.lambda.l12;
  j["lambda22_erg_cm3"] = g.lambda.l22;
  j["lambda13_erg_cm3"] = g.lambda.l13;
  j["lambda23_erg_cm3"] = g.lambda.l23;
  j["gamma_d_rad_per_s_per_gauss"] = p.gamma_d;
  j["gamma_p_rad_per_s_per_gauss"] = p.gamma_p;
  j["omega12_0_rad_per_s"] = p.omega12_0_at_H0;
  j["H_drive_gauss"] = p.H_drive;
  j["H0_gauss"] = p.H0;
  j["gradient_gauss_per_cm"] = c.profile.gradient_abs;
  if (std::isfinite(c.profile.extent)) j["extent_cm"] = c.profile.extent;
  if (c.mode) j["mode"] = mode_name(*c.mode);
  if (c.center_hz) j["center_hz"] = *c.center_hz;
  if (c.span_hz) j["span_hz"] = *c.span_hz;
  if (c.points) j["points"] = *c.points;
  j["tolerance"] = c.tolerance;
  j["fast_driving_threshold"] = c.fast_driving_threshold;
  j["tau_s"] = c.tau_s;
  return j;
}

// ---------------------------------------------------------------------------
// Writers. Output goes to a sibling temp file which is then renamed over the
// target, so readers never see a partial file.

inline void write_atomically(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot rename onto '" + path.string() + "'");
  }
}

/// %.12g, independent of the global locale.
inline std::string format_number(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  os << v;
  return os.str();
}

/// Header `sweep_offset_hz,amplitude_arb`; amplitudes normalised to the baseline.
inline std::string spectrum_csv(const SpectrumResult& r) {
  std::string s = "sweep_offset_hz,amplitude_arb\n";
  for (const auto& smp : r.samples) {
    s += format_number(units::angular_to_hz(smp.offset));
    s += ',';
    s += format_number(smp.amplitude / r.baseline);
    s += '\n';
  }
  return s;
}

inline void write_spectrum_csv(const SpectrumResult& r, const std::filesystem::path& path) {
  write_atomically(path, spectrum_csv(r));
}

struct SummaryReport {
  double delta_H_c_gauss = 0.0;
  double h_star_gauss = 0.0;
  double width_drive_hz = 0.0;
  double width_probe_hz = 0.0;
  std::optional<double> max_to_min_hz;  // spectrum runs only
  std::optional<double> baseline;       // spectrum runs only
  std::vector<std::string> warnings;
};

inline ordered_json to_json(const SummaryReport& r) {
  ordered_json j;
  j["delta_H_c_gauss"] = r.delta_H_c_gauss;
  j["h_star_gauss"] = r.h_star_gauss;
  j["width_drive_hz"] = r.width_drive_hz;
  j["width_probe_hz"] = r.width_probe_hz;
  if (r.max_to_min_hz) j["max_to_min_hz"] = *r.max_to_min_hz;
  if (r.baseline) j["baseline"] = *r.baseline;
  j["warnings"] = r.warnings;
  return j;
}

inline std::string summary_json(const SummaryReport& r) { return to_json(r).dump(2) + "\n"; }

inline void write_summary_json(const SummaryReport& r, const std::filesystem::path& path) {
  write_atomically(path, summary_json(r));
}

}  // namespace inedor::io
