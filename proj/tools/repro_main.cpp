// Reproduction suite for the hydrogen numbers, bounds curve and spectrum shape. Cases with a
// CLI invocation run the inedor binary and read back its files; the rest call
// the library. Prints a markdown pass/fail table; exit status 1 lists the
// failing cases on stderr.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "inedor.hpp"
#include "json.hpp"
#include "inedor/io.hpp"

namespace {

using namespace inedor;

enum class Origin { Reference, Derived };  // quoted value, or follows from the model

enum class Compare {
  Relative,  // |c - e| <= tolerance |e|
  Factor,    // max(c/e, e/c) <= tolerance
  Below,     // c < e
};

struct ReproCase {
  std::string name;
  std::string invocation;  // equivalent CLI call
  double expected = 0.0;
  double tolerance = 0.0;
  Compare compare = Compare::Relative;
  Origin origin = Origin::Derived;
  std::function<double()> compute;
};

struct Outcome {
  double value = std::nan("");
  bool pass = false;
  std::string error;
};

Outcome evaluate(const ReproCase& c) {
  Outcome o;
  try {
    o.value = c.compute();
    switch (c.compare) {
      case Compare::Relative:
        o.pass = std::abs(o.value - c.expected) <= c.tolerance * std::abs(c.expected);
        break;
      case Compare::Factor: {
        const double r = o.value / c.expected;
        o.pass = r > 0.0 && std::max(r, 1.0 / r) <= c.tolerance;
        break;
      }
      case Compare::Below:
        o.pass = o.value < c.expected;
        break;
    }
  } catch (const std::exception& e) {
    o.error = e.what();
    std::replace(o.error.begin(), o.error.end(), '\n', ' ');
    std::replace(o.error.begin(), o.error.end(), '|', '/');
  }
  return o;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace fs = std::filesystem;

// Runs the CLI with outputs redirected into a scratch directory.
class Cli {
 public:
  Cli(std::string exe, fs::path dir) : exe_(std::move(exe)), dir_(std::move(dir)) {}

  fs::path file(const std::string& name) const { return dir_ / name; }

  void run(const std::string& args) const {
    const std::string cmd = quote(exe_) + ' ' + args + " >" + quote(file("stdout").string()) +
                            " 2>" + quote(file("stderr").string());
    if (std::system(cmd.c_str()) != 0) {
      std::ifstream err(file("stderr"));
      std::stringstream msg;
      msg << err.rdbuf();
      throw std::runtime_error("`inedor " + args + "` failed: " + msg.str());
    }
  }

 private:
  static std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
  }

  std::string exe_;
  fs::path dir_;
};

const Cli* g_cli = nullptr;

const Cli& cli() {
  if (!g_cli) throw std::runtime_error("no CLI binary available");
  return *g_cli;
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return nlohmann::json::parse(in);
}

// Numeric CSV with one header line.
std::vector<std::vector<double>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("empty CSV " + path.string());
  return rows;
}

const std::string kLinewidthArgs = "linewidth --preset hydrogen-2d";
const std::string kSpectrumArgs = "spectrum --preset hydrogen-2d --mode drive";
const std::string kBoundsArgs = "bounds --preset hydrogen-2d --range-hd 200 --points 20001";

const nlohmann::json& linewidth_report() {
  static const nlohmann::json j = [] {
    cli().run(kLinewidthArgs + " --summary " + cli().file("linewidth.json").string());
    return read_json(cli().file("linewidth.json"));
  }();
  return j;
}

struct SpectrumFacts {
  double distance_hz = 0.0;
  double max_position_hz = 0.0;
  double wing_ratio = 0.0;     // right wing / left wing
  double min_over_baseline = 0.0;
};

// The CSV amplitude column is already divided by the baseline.
const SpectrumFacts& spectrum_facts() {
  static const SpectrumFacts facts = [] {
    const auto csv = cli().file("spectrum.csv");
    const auto summary = cli().file("spectrum.json");
    cli().run(kSpectrumArgs + " --out " + csv.string() + " --summary " + summary.string());
    const auto rows = read_csv(csv);
    SpectrumFacts f;
    f.distance_hz = read_json(summary).at("max_to_min_hz").get<double>();
    const auto peak = std::max_element(rows.begin(), rows.end(),
                                       [](const auto& a, const auto& b) { return a[1] < b[1]; });
    const auto hole = std::min_element(rows.begin(), rows.end(),
                                       [](const auto& a, const auto& b) { return a[1] < b[1]; });
    f.max_position_hz = (*peak)[0];
    f.wing_ratio = rows.back()[1] / rows.front()[1];
    f.min_over_baseline = (*hole)[1];
    return f;
  }();
  return facts;
}

struct BoundsFacts {
  double upper_at_zero_hz = 0.0;
  double argmin_gauss = 0.0;  // minimum of the upper bound on h > H_d
};

const BoundsFacts& bounds_facts(double H_drive) {
  static const BoundsFacts facts = [H_drive] {
    const auto csv = cli().file("bounds.csv");
    cli().run(kBoundsArgs + " --out " + csv.string());
    const auto rows = read_csv(csv);
    BoundsFacts f;
    double best_abs_h = std::numeric_limits<double>::infinity();
    double best_upper = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
      if (std::abs(r[0]) < best_abs_h) best_abs_h = std::abs(r[0]), f.upper_at_zero_hz = r[2];
      if (r[0] > H_drive && r[2] < best_upper) best_upper = r[2], f.argmin_gauss = r[0];
    }
    return f;
  }();
  return facts;
}

std::vector<ReproCase> cases() {
  const auto preset = hydrogen::hydrogen_preset();
  const auto m = preset.model();
  const auto& p = preset.params;
  std::vector<ReproCase> out;

  const std::string lw = "inedor " + kLinewidthArgs;
  const std::string sp = "inedor " + kSpectrumArgs;
  const std::string bd = "inedor " + kBoundsArgs;

  out.push_back({"width-350Hz", lw, 350.0, 0.05, Compare::Relative, Origin::Reference,
                 [] { return linewidth_report().at("width_drive_hz").get<double>(); }});
  out.push_back({"numeric-330Hz", sp, 330.0, 0.15, Compare::Relative, Origin::Reference,
                 [] { return spectrum_facts().distance_hz; }});
  out.push_back({"h-5.7e-2G", lw, 5.7e-2, 0.03, Compare::Relative, Origin::Reference,
                 [] { return linewidth_report().at("h_star_gauss").get<double>(); }});
  out.push_back({"contact-amplitude-89G", lw, 89.0, 1e-12, Compare::Relative, Origin::Reference,
                 [] { return linewidth_report().at("delta_H_c_gauss").get<double>(); }});
  out.push_back({"per-density-coeff", "(library) hydrogen::contact_field_shift", 1.5e-18, 1.0 / 3.0,
                 Compare::Relative, Origin::Reference, [p] {
                   return hydrogen::contact_field_shift(p.n_2d, p.l, p.delta_a, p.gamma_p)
                       .per_density_coeff;
                 }});
  out.push_back({"density-3d", "(library) HydrogenParams::n_3d", 6e19, 1e-12, Compare::Relative,
                 Origin::Reference, [p] { return p.n_3d(); }});
  out.push_back({"rabi-30-per-s", "(library) rabi_frequency", 30.0, 0.15, Compare::Relative, Origin::Reference,
                 [m] { return rabi_frequency(m.pair); }});
  out.push_back({"min-n3-2e6", "(library) hydrogen::min_detectable_population", 2e6, 3.0, Compare::Factor,
                 Origin::Reference, [m, p] {
                   return hydrogen::min_detectable_population(m, p, p.source_relative_width)
                       .n3_min_2d;
                 }});
  out.push_back({"min-fraction-1e-6", "(library) hydrogen::min_detectable_population", 1e-6, 3.0,
                 Compare::Factor, Origin::Reference, [m, p] {
                   return hydrogen::min_detectable_population(m, p, p.source_relative_width)
                       .fraction;
                 }});

  // Bounds curve: the upper bound at h = 0 sits the full contact shift above the
  // Zeeman line; its local minimum on h > H_d sits at the stationary field.
  const double hd = m.pair.H_drive;
  out.push_back({"bounds-upper-at-zero-Hz", bd, units::angular_to_hz(m.pair.gamma_p * 89.0), 1e-9,
                 Compare::Relative, Origin::Derived, [hd] { return bounds_facts(hd).upper_at_zero_hz; }});
  out.push_back({"bounds-upper-minimum-G", bd, width_closed_form(m).h_star, 0.01, Compare::Relative,
                 Origin::Derived, [hd] { return bounds_facts(hd).argmin_gauss; }});

  // Drive-sweep spectrum shape.
  out.push_back({"spectrum-peak-position-Hz", sp, -units::angular_to_hz(width_closed_form(m).delta_omega13),
                 0.05, Compare::Relative, Origin::Derived, [] { return spectrum_facts().max_position_hz; }});
  out.push_back({"spectrum-wings-equal", sp, 1.0, 0.01, Compare::Relative, Origin::Derived,
                 [] { return spectrum_facts().wing_ratio; }});
  out.push_back({"spectrum-hole-below-baseline", sp, 1.0, 0.0, Compare::Below, Origin::Derived,
                 [] { return spectrum_facts().min_over_baseline; }});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string out_path;
  // Default CLI: the inedor binary next to this one.
  std::string exe = (fs::path(argv[0]).parent_path() / "inedor").string();
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--out" && i + 1 < argc) out_path = argv[++i];
    else if (a == "--cli" && i + 1 < argc) exe = argv[++i];
    else {
      std::cerr << "usage: inedor_repro [--cli path/to/inedor] [--out report.md]\n";
      return 1;
    }
  }

  const fs::path scratch = fs::temp_directory_path() / ("inedor_repro." + std::to_string(::getpid()));
  fs::create_directories(scratch);
  const Cli runner(exe, scratch);
  g_cli = &runner;

  std::ostringstream md;
  md << "| case | invocation | expected | tolerance | origin | computed | result |\n"
     << "|---|---|---|---|---|---|---|\n";
  std::vector<std::string> failures;
  for (const auto& c : cases()) {
    const auto o = evaluate(c);
    std::string tol;
    switch (c.compare) {
      case Compare::Relative: tol = fmt(100.0 * c.tolerance) + "%"; break;
      case Compare::Factor: tol = "factor " + fmt(c.tolerance); break;
      case Compare::Below: tol = "below"; break;
    }
    md << "| " << c.name << " | `" << c.invocation << "` | " << fmt(c.expected) << " | " << tol
       << " | " << (c.origin == Origin::Reference ? "reference" : "derived") << " | "
       << (o.error.empty() ? fmt(o.value) : o.error) << " | " << (o.pass ? "PASS" : "FAIL")
       << " |\n";
    if (!o.pass) failures.push_back(c.name);
  }

  std::error_code ec;
  fs::remove_all(scratch, ec);

  if (out_path.empty()) std::cout << md.str();
  else inedor::io::write_atomically(out_path, md.str());

  if (!failures.empty()) {
    std::cerr << "ReproFailure:";
    for (const auto& f : failures) std::cerr << ' ' << f;
    std::cerr << '\n';
    return 1;
  }
  return 0;
}
