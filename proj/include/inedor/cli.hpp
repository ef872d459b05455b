#pragma once

// Command-line front end. run() never exits the process; it returns the exit
// code so tests can drive it in-process.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "inedor/error.hpp"
#include "inedor/hydrogen.hpp"
#include "inedor/io.hpp"
#include "inedor/lineshape.hpp"
#include "inedor/linewidth.hpp"
#include "inedor/oracle.hpp"
#include "inedor/spectrum.hpp"

namespace inedor::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2 };

struct CommonFlags {
  std::string preset;
  std::string config;
  std::string mode;
  std::optional<int> points;
  std::optional<double> span_hz;
  std::string out;
  std::string summary;
  std::optional<double> tolerance;
};

struct OracleFlags {
  std::vector<double> h_over_hd{0.3, 1.0, 3.0, 56.0};
  int bins = 100;
  std::int64_t samples = 1'000'000;
};

struct BoundsFlags {
  double range_in_hd = 200.0;
};

struct ScanFlags {
  std::string parameter = "all";
  std::vector<double> factors{0.5, 0.8, 1.25, 2.0, 3.2, 5.0};
};

namespace detail {

inline void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--preset", f.preset, "hydrogen-2d or hydrogen-2d-physical-sign")
      ->check(CLI::IsMember({io::kPresetHydrogen, io::kPresetHydrogenPhysical}));
  app->add_option("--config", f.config, "flat JSON config with unit-suffixed keys");
  app->add_option("--mode", f.mode, "drive or probe")->check(CLI::IsMember({"drive", "probe"}));
  app->add_option("--points", f.points, "number of grid points");
  app->add_option("--span-hz", f.span_hz, "sweep span in Hz");
  app->add_option("--out", f.out, "output CSV path (default: stdout)");
  app->add_option("--summary", f.summary, "summary JSON path (default: stdout for reports)");
  app->add_option("--tolerance", f.tolerance, "relative quadrature tolerance");
}

inline io::RunConfig resolve(const CommonFlags& f) {
  io::RunConfig c;
  if (!f.config.empty()) {
    // A config names its own preset via the "preset" key.
    if (!f.preset.empty())
      throw Error(ErrorCode::ConfigError, "--preset and --config are mutually exclusive");
    c = io::load_config(f.config);
  } else if (!f.preset.empty()) {
    c = io::preset_config(f.preset);
  } else {
    throw Error(ErrorCode::ConfigError, "either --preset or --config is required");
  }
  if (!f.mode.empty()) c.mode = io::parse_mode(f.mode);
  if (f.points) {
    if (*f.points < 3) throw Error(ErrorCode::ConfigError, "--points must be >= 3");
    c.points = f.points;
  }
  if (f.span_hz) {
    if (!(*f.span_hz > 0.0)) throw Error(ErrorCode::ConfigError, "--span-hz must be positive");
    c.span_hz = f.span_hz;
  }
  if (f.tolerance) {
    if (!(*f.tolerance > 0.0)) throw Error(ErrorCode::ConfigError, "--tolerance must be positive");
    c.tolerance = *f.tolerance;
  }
  if (!f.out.empty()) c.out = f.out;
  if (!f.summary.empty()) c.summary = f.summary;
  return c;
}

inline SpectrumOptions options(const io::RunConfig& c) {
  SpectrumOptions opt;
  opt.rel_tol = c.tolerance;
  opt.tau = c.tau_s;
  opt.fast_driving_threshold = c.fast_driving_threshold;
  return opt;
}

inline void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) out << content;
  else io::write_atomically(path, content);
}

inline io::SummaryReport width_summary(const Model& m) {
  const auto w = width_closed_form(m);
  io::SummaryReport r;
  r.delta_H_c_gauss = contact_field_amplitude(m);
  r.h_star_gauss = w.h_star;
  r.width_drive_hz = units::angular_to_hz(w.delta_omega13);
  r.width_probe_hz = units::angular_to_hz(w.delta_omega12);
  r.warnings = w.warnings;
  return r;
}

inline void warn(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

}  // namespace detail

inline int cmd_spectrum(const io::RunConfig& c, std::ostream& out, std::ostream& err) {
  const SweepMode mode = c.mode.value_or(SweepMode::DriveSweep);
  SweepSpec spec = default_sweep(c.model, mode);
  if (c.span_hz) spec.span = units::hz_to_angular(*c.span_hz);
  if (c.center_hz) spec.center = units::hz_to_angular(*c.center_hz);
  if (c.points) spec.points = *c.points;

  const auto result = sweep(spec, c.model, c.profile, detail::options(c));
  io::SummaryReport summary = detail::width_summary(c.model);
  summary.warnings.insert(summary.warnings.end(), result.warnings.begin(), result.warnings.end());
  summary.baseline = result.baseline;
  if (result.metrics) summary.max_to_min_hz = result.metrics->distance_hz;
  else summary.warnings.push_back("spectrum is flat; no max-to-min distance");
  detail::warn(summary.warnings, err);

  detail::emit(c.out, io::spectrum_csv(result), out);
  if (!c.summary.empty()) io::write_summary_json(summary, c.summary);
  return kOk;
}

inline int cmd_linewidth(const io::RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto summary = detail::width_summary(c.model);
  detail::warn(summary.warnings, err);
  detail::emit(c.summary, io::summary_json(summary), out);
  return kOk;
}

/// Probe-frequency bounds vs static field offset, as offsets from
/// omega12^(0)(H0) in Hz.
inline int cmd_bounds(const io::RunConfig& c, const BoundsFlags& b, std::ostream& out,
                      std::ostream& err) {
  const int points = c.points.value_or(2001);
  const double hd = c.model.pair.H_drive;
  if (!(b.range_in_hd > 0.0)) throw Error(ErrorCode::ConfigError, "--range-hd must be positive");
  const double w0 = c.model.pair.omega12_0_at_H0;

  std::string csv = "h_gauss,lower_offset_hz,upper_offset_hz\n";
  for (int i = 0; i < points; ++i) {
    const double h = hd * b.range_in_hd * (-1.0 + 2.0 * i / (points - 1));
    const auto fb = probe_bounds(h, c.model.gas, c.model.pair);
    csv += io::format_number(h) + ',' + io::format_number(units::angular_to_hz(fb.lower - w0)) +
           ',' + io::format_number(units::angular_to_hz(fb.upper - w0)) + '\n';
  }
  detail::emit(c.out, csv, out);

  if (!c.summary.empty()) {
    auto summary = detail::width_summary(c.model);
    detail::warn(summary.warnings, err);
    io::write_summary_json(summary, c.summary);
  }
  return kOk;
}

inline int cmd_oracle(const io::RunConfig& c, const OracleFlags& o, std::ostream& out,
                      std::ostream&) {
  const double hd = c.model.pair.H_drive;
  std::string table = "h_over_hd,x_lo,x_hi,empirical,analytic\n";
  std::string report = "h_over_hd,bins,samples,max_relative_deviation\n";
  for (double r : o.h_over_hd) {
    const double h = r * hd;
    const auto emp = oracle::simulate_density(h, c.model, o.bins, o.samples);
    const double dev = oracle::compare_to_analytic(emp, c.model, h);
    auto density = [s = emp.sin2_theta](double x) { return arcsine_density(x, s); };
    for (std::size_t i = 0; i < emp.bins(); ++i) {
      // Edge bins hold an integrable singularity; their analytic weight is
      // still finite, but the comparison above skips them.
      double analytic = std::nan("");
      try {
        analytic = oracle::analytic_bin_weight(emp.edges[i], emp.edges[i + 1], emp.sin2_theta,
                                               density);
      } catch (const QuadratureError&) {
      }
      table += io::format_number(r) + ',' + io::format_number(emp.edges[i]) + ',' +
               io::format_number(emp.edges[i + 1]) + ',' + io::format_number(emp.weights[i]) +
               ',' + io::format_number(analytic) + '\n';
    }
    report += io::format_number(r) + ',' + std::to_string(o.bins) + ',' +
              std::to_string(o.samples) + ',' + io::format_number(dev) + '\n';
  }
  out << report;
  if (!c.out.empty()) io::write_atomically(c.out, table);
  return kOk;
}

inline int cmd_scan(const io::RunConfig& c, const ScanFlags& s, std::ostream& out,
                    std::ostream& err) {
  std::vector<std::pair<std::string, ScanParameter>> params;
  if (s.parameter == "all" || s.parameter == "density") params.emplace_back("density", ScanParameter::Density);
  if (s.parameter == "all" || s.parameter == "drive") params.emplace_back("drive", ScanParameter::DriveField);
  if (s.parameter == "all" || s.parameter == "gradient") params.emplace_back("gradient", ScanParameter::Gradient);

  io::ordered_json j;
  for (const auto& [name, p] : params) {
    ScanSpec spec;
    spec.parameter = p;
    spec.factors = s.factors;
    spec.mode = c.mode.value_or(SweepMode::DriveSweep);
    if (c.points) spec.points = *c.points;
    const auto fit = scaling_fit(c.model, c.profile, spec, detail::options(c));
    io::ordered_json e;
    e["width_exponent"] = fit.exponent;
    e["amplitude_exponent"] = fit.baseline_exponent;
    io::ordered_json pts = io::ordered_json::array();
    for (const auto& pt : fit.points)
      pts.push_back({{"factor", pt.factor}, {"max_to_min_hz", pt.distance_hz}, {"baseline", pt.baseline}});
    e["points"] = pts;
    j[name] = e;
  }
  (void)err;
  detail::emit(c.summary, j.dump(2) + "\n", out);
  return kOk;
}

/// Parses argv and dispatches. Exit codes: 0 success, 1 usage / validation /
/// I/O error, 2 numerical failure.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Interaction-enhanced double resonance spectra", "inedor"};
  app.require_subcommand(1);

  CommonFlags spectrum_f, bounds_f, linewidth_f, oracle_f, scan_f;
  OracleFlags oracle_o;
  BoundsFlags bounds_o;
  ScanFlags scan_o;

  auto* spectrum = app.add_subcommand("spectrum", "absorption vs sweep offset (CSV)");
  detail::add_common(spectrum, spectrum_f);
  auto* bounds = app.add_subcommand("bounds", "probe-frequency bounds vs static field (CSV)");
  detail::add_common(bounds, bounds_f);
  bounds->add_option("--range-hd", bounds_o.range_in_hd, "half-range of h in units of H_d");
  auto* linewidth = app.add_subcommand("linewidth", "closed-form width report (JSON)");
  detail::add_common(linewidth, linewidth_f);
  auto* oracle_cmd = app.add_subcommand("oracle", "time-domain check of the absorption density");
  detail::add_common(oracle_cmd, oracle_f);
  oracle_cmd->add_option("--h-over-hd", oracle_o.h_over_hd, "static offsets in units of H_d");
  oracle_cmd->add_option("--bins", oracle_o.bins, "histogram bins");
  oracle_cmd->add_option("--samples", oracle_o.samples, "time samples per Rabi period");
  auto* scan = app.add_subcommand("scan", "power-law fits of the numerical width (JSON)");
  detail::add_common(scan, scan_f);
  scan->add_option("--parameter", scan_o.parameter, "density, drive, gradient or all")
      ->check(CLI::IsMember({"density", "drive", "gradient", "all"}));
  scan->add_option("--factors", scan_o.factors, "multiplicative scan factors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kValidation;
  }

  try {
    if (*spectrum) return cmd_spectrum(detail::resolve(spectrum_f), out, err);
    if (*bounds) return cmd_bounds(detail::resolve(bounds_f), bounds_o, out, err);
    if (*linewidth) return cmd_linewidth(detail::resolve(linewidth_f), out, err);
    if (*oracle_cmd) return cmd_oracle(detail::resolve(oracle_f), oracle_o, out, err);
    if (*scan) return cmd_scan(detail::resolve(scan_f), scan_o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.code()) ? kNumerical : kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}

}  // namespace inedor::cli
