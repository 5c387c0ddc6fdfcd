#include "wedgescatter/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "wedgescatter/eigen_oracle.hpp"
#include "wedgescatter/errors.hpp"
#include "wedgescatter/io.hpp"
#include "wedgescatter/spectral_scan.hpp"

namespace wedgescatter::cli {

namespace {

int parse_power(const std::string& name) {
  static const std::map<std::string, int> powers{{"x4", 4}, {"x6", 6}, {"x8", 8}};
  const auto it = powers.find(name);
  if (it == powers.end()) throw UsageError("unknown potential '" + name + "' (expected x4, x6 or x8)");
  return it->second;
}

PotentialSpec spec_of(const RunConfig& c) { return make_potential(c.power, c.cutoff); }

// Contour oracle range covering the first three levels of every preset potential.
constexpr double kOracleEmin = 0.5;
constexpr double kOracleEmax = 13.0;
constexpr double kOracleDe = 0.05;

std::vector<double> oracle_energies(const RunConfig& c, int power, int count) {
  switch (c.oracle) {
    case OracleChoice::None:
      return {};
    case OracleChoice::Partner:
      return hermitian_partner_eigen(count, c.half_width, c.intervals).energies;
    case OracleChoice::Contour: {
      ContourConfig cfg;
      cfg.ray_radius = c.ray_radius;
      return contour_eigenvalues(make_potential(power, 1.0), kOracleEmin, kOracleEmax, kOracleDe, count, cfg, c.ctrl)
          .energies;
    }
  }
  return {};
}

std::string oracle_name(OracleChoice o) {
  switch (o) {
    case OracleChoice::Contour:
      return "contour";
    case OracleChoice::Partner:
      return "partner";
    case OracleChoice::None:
      return "none";
  }
  return "none";
}

std::vector<ReflectionZero> annotate(const RunConfig& c, int power, std::vector<ReflectionZero> zeros) {
  if (c.oracle == OracleChoice::None) return zeros;
  const auto oracle = oracle_energies(c, power, 3);
  return match_eigenvalues(std::move(zeros), oracle, c.window, oracle_name(c.oracle));
}

// Writes `text` to `path` (LF endings, binary mode) or to `out` when path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open output file '" + path + "'");
  file << text;
  if (!file) throw Error("failed writing output file '" + path + "'");
}

std::string scan_text(const ScanSeries& series, OutputFormat format) {
  if (format == OutputFormat::Json) return scan_to_json(series).dump(2) + "\n";
  std::ostringstream os;
  write_scan_csv(os, series);
  return os.str();
}

std::string json_text(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

std::vector<ReflectionZero> zeros_from_csv(const RunConfig& c) {
  std::ifstream in(c.from_csv, std::ios::binary);
  if (!in) throw UsageError("cannot open scan CSV '" + c.from_csv + "'");
  const auto rows = read_scan_csv(in);
  std::vector<double> energies;
  std::vector<double> magnitudes;
  for (const auto& r : rows) {
    energies.push_back(r.energy);
    magnitudes.push_back(r.magnitude);
  }
  const auto spec = spec_of(c);
  std::vector<ReflectionZero> zeros;
  for (const auto& b : locate_minima(energies, magnitudes, c.depth_factor)) {
    zeros.push_back(refine_zero(spec, c.kind, b, c.ctrl, c.e_tol));
  }
  return zeros;
}

void run_scan(const RunConfig& c, std::ostream& out) {
  const auto series = scan_energies(spec_of(c), c.kind, c.e_min, c.e_max, c.de, c.ctrl);
  emit(c.out, scan_text(series, c.format), out);
}

void run_zeros(const RunConfig& c, std::ostream& out) {
  std::vector<ReflectionZero> zeros;
  if (!c.from_csv.empty()) {
    zeros = zeros_from_csv(c);
  } else {
    const auto series = scan_energies(spec_of(c), c.kind, c.e_min, c.e_max, c.de, c.ctrl);
    zeros = find_zeros(series, c.depth_factor, c.ctrl, c.e_tol);
  }
  emit(c.out, json_text(zeros_to_json(annotate(c, c.power, std::move(zeros)))), out);
}

void run_eigen(const RunConfig& c, std::ostream& out) {
  EigenResult result;
  if (c.method == EigenMethod::HermitianPartner) {
    result = hermitian_partner_eigen(c.count, c.half_width, c.intervals);
  } else {
    ContourConfig cfg;
    cfg.ray_radius = c.ray_radius;
    result = contour_eigenvalues(make_potential(c.power, 1.0), c.e_min, c.e_max, c.de, c.count, cfg, c.ctrl);
  }
  emit(c.out, json_text(eigen_to_json(result)), out);
}

void run_figure(const RunConfig& c, std::ostream& out) {
  const FigurePreset& preset = figure_preset(c.figure_id);
  std::filesystem::create_directories(c.out_dir);
  const std::filesystem::path dir(c.out_dir);

  const auto oracle = oracle_energies(c, preset.power, 3);
  auto one_run = [&](double cutoff, const std::string& stem) {
    const PotentialSpec spec = make_potential(preset.power, cutoff);
    const auto series = scan_energies(spec, preset.kind, preset.e_min, preset.e_max, preset.de, c.ctrl);
    auto zeros = find_zeros(series, c.depth_factor, c.ctrl, c.e_tol);
    if (c.oracle != OracleChoice::None) zeros = match_eigenvalues(std::move(zeros), oracle, c.window, oracle_name(c.oracle));
    emit((dir / (stem + "_scan.csv")).string(), scan_text(series, OutputFormat::Csv), out);
    emit((dir / (stem + "_zeros.json")).string(), json_text(zeros_to_json(zeros)), out);
    out << stem << ":";
    for (const auto& z : zeros) out << ' ' << format_double(z.energy);
    out << '\n';
  };

  const std::string stem = "fig" + std::to_string(preset.id);
  one_run(preset.cutoff, stem);
  if (preset.comparison_cutoff) {
    std::ostringstream suffix;
    suffix << stem << "_L" << format_double(*preset.comparison_cutoff);
    one_run(*preset.comparison_cutoff, suffix.str());
  }
}

}  // namespace

void RunConfig::validate() const {
  ctrl.validate();
  if (!(depth_factor > 0.0)) throw UsageError("--depth-factor must be positive");
  if (!(e_tol > 0.0)) throw UsageError("--etol must be positive");
  if (!(window >= 0.0)) throw UsageError("--window must be nonnegative");
  switch (subcommand) {
    case Subcommand::Scan:
    case Subcommand::Zeros:
      make_potential(power, cutoff);
      if (from_csv.empty()) {
        if (!(e_min > 0.0) || !(e_max > e_min)) throw UsageError("energy range must satisfy 0 < --emin < --emax");
        if (!(de > 0.0)) throw UsageError("--de must be positive");
      }
      break;
    case Subcommand::Eigen:
      if (count < 1) throw UsageError("--count must be >= 1");
      if (method == EigenMethod::HermitianPartner && power != 4) {
        throw UsageError("the Hermitian-partner oracle exists only for --potential x4");
      }
      if (method == EigenMethod::ContourShooting) {
        if (!(e_min > 0.0) || !(e_max > e_min)) throw UsageError("energy range must satisfy 0 < --emin < --emax");
        if (!(de > 0.0)) throw UsageError("--de must be positive");
      }
      break;
    case Subcommand::Figure:
      figure_preset(figure_id);
      break;
  }
}

const std::vector<FigurePreset>& figure_presets() {
  using enum BoundaryKind;
  static const std::vector<FigurePreset> presets{
      {2, 4, 1.0, PlaneWave, 0.5, 21.0, 0.01, std::nullopt},
      {3, 4, 2.0, PlaneWave, 0.5, 28.0, 0.01, std::nullopt},
      {4, 4, 5.0, PlaneWave, 0.2, 28.0, 0.01, std::nullopt},
      {5, 4, 5.0, Wkb, 0.5, 3.0, 0.005, std::nullopt},
      {6, 4, 5.0, Wkb, 5.0, 7.0, 0.005, std::nullopt},
      {7, 4, 7.0, Wkb, 11.0, 12.5, 0.005, 5.0},
      {8, 6, 5.0, Wkb, 0.5, 3.0, 0.005, std::nullopt},
      {9, 6, 5.0, Wkb, 4.5, 6.0, 0.005, std::nullopt},
      {10, 6, 5.0, Wkb, 10.5, 12.0, 0.005, std::nullopt},
      {11, 8, 5.0, Wkb, 0.5, 3.0, 0.005, std::nullopt},
      {12, 8, 5.0, Wkb, 4.5, 6.0, 0.005, std::nullopt},
      {13, 8, 5.0, Wkb, 10.5, 12.5, 0.005, std::nullopt},
  };
  return presets;
}

const FigurePreset& figure_preset(int id) {
  for (const auto& p : figure_presets()) {
    if (p.id == id) return p;
  }
  throw UsageError("unknown figure id " + std::to_string(id) + " (expected 2..13)");
}

RunConfig parse_args(int argc, const char* const* argv) {
  RunConfig c;
  CLI::App app{"Reflectionless scattering off cut-off upside-down potentials", "wedgescatter"};
  app.require_subcommand(1);

  std::string potential = "x4";
  std::string bc = "plane";
  std::string format = "csv";
  std::string oracle = "contour";
  std::string method = "contour";

  auto add_tolerances = [&](CLI::App* sub) {
    sub->add_option("--rtol", c.ctrl.rel_tol, "Relative integration tolerance")->capture_default_str();
    sub->add_option("--atol", c.ctrl.abs_tol, "Absolute integration tolerance")->capture_default_str();
    sub->add_option("--max-steps", c.ctrl.max_steps, "Step budget per integration")->capture_default_str();
  };
  auto add_scan_options = [&](CLI::App* sub) {
    sub->add_option("--potential", potential, "Well: x4, x6 or x8")->capture_default_str();
    sub->add_option("--cutoff", c.cutoff, "Box half width L")->capture_default_str();
    sub->add_option("--bc", bc, "Boundary condition: plane or wkb")->capture_default_str();
    sub->add_option("--emin", c.e_min, "Lowest grid energy")->capture_default_str();
    sub->add_option("--emax", c.e_max, "Highest grid energy")->capture_default_str();
    sub->add_option("--de", c.de, "Grid spacing")->capture_default_str();
    sub->add_option("--out", c.out, "Output path (stdout when omitted)");
    add_tolerances(sub);
  };
  auto add_zero_options = [&](CLI::App* sub) {
    sub->add_option("--depth-factor", c.depth_factor, "Minimum depth relative to the series median")
        ->capture_default_str();
    sub->add_option("--etol", c.e_tol, "Refinement width")->capture_default_str();
    sub->add_option("--window", c.window, "Eigenvalue matching window")->capture_default_str();
    sub->add_option("--oracle", oracle, "Eigenvalue oracle for matching: contour, partner or none")
        ->capture_default_str();
  };

  auto* scan = app.add_subcommand("scan", "Tabulate the reflection magnitude over an energy grid");
  add_scan_options(scan);
  scan->add_option("--format", format, "csv or json")->capture_default_str();

  auto* zeros = app.add_subcommand("zeros", "Locate and refine reflectionless energies");
  add_scan_options(zeros);
  add_zero_options(zeros);
  zeros->add_option("--from-csv", c.from_csv, "Bracket minima from a previously written scan CSV");

  auto* eigen = app.add_subcommand("eigen", "Bound-state energies from an independent oracle");
  eigen->add_option("--potential", potential, "Well: x4, x6 or x8")->capture_default_str();
  eigen->add_option("--method", method, "contour or partner")->capture_default_str();
  eigen->add_option("--count", c.count, "Number of levels")->capture_default_str();
  eigen->add_option("--emin", c.e_min, "Contour scan lower energy");
  eigen->add_option("--emax", c.e_max, "Contour scan upper energy");
  eigen->add_option("--de", c.de, "Contour scan spacing");
  eigen->add_option("--ray-radius", c.ray_radius, "Contour ray length r0")->capture_default_str();
  eigen->add_option("--half-width", c.half_width, "Partner box half width")->capture_default_str();
  eigen->add_option("--intervals", c.intervals, "Partner mesh intervals")->capture_default_str();
  eigen->add_option("--out", c.out, "Output path (stdout when omitted)");
  add_tolerances(eigen);

  auto* figure = app.add_subcommand("figure", "Run a figure preset (ids 2..13)");
  figure->add_option("--id", c.figure_id, "Figure id")->required();
  figure->add_option("--out-dir", c.out_dir, "Directory for the scan CSV and zeros JSON")->capture_default_str();
  add_zero_options(figure);
  add_tolerances(figure);

  // Contour-eigen defaults differ from the scan defaults.
  eigen->preparse_callback([&](std::size_t) {
    c.e_min = kOracleEmin;
    c.e_max = kOracleEmax;
    c.de = kOracleDe;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream help;
    std::ostringstream ignored;
    app.exit(e, help, ignored);
    throw HelpRequested{help.str()};
  } catch (const CLI::CallForAllHelp& e) {
    std::ostringstream help;
    std::ostringstream ignored;
    app.exit(e, help, ignored);
    throw HelpRequested{help.str()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (*scan) c.subcommand = Subcommand::Scan;
  if (*zeros) c.subcommand = Subcommand::Zeros;
  if (*eigen) c.subcommand = Subcommand::Eigen;
  if (*figure) c.subcommand = Subcommand::Figure;

  if (c.subcommand != Subcommand::Figure) c.power = parse_power(potential);
  c.kind = parse_boundary_kind(bc);
  if (format == "csv") c.format = OutputFormat::Csv;
  else if (format == "json") c.format = OutputFormat::Json;
  else throw UsageError("unknown --format '" + format + "' (expected csv or json)");
  if (oracle == "contour") c.oracle = OracleChoice::Contour;
  else if (oracle == "partner") c.oracle = OracleChoice::Partner;
  else if (oracle == "none") c.oracle = OracleChoice::None;
  else throw UsageError("unknown --oracle '" + oracle + "'");
  if (method == "contour") c.method = EigenMethod::ContourShooting;
  else if (method == "partner") c.method = EigenMethod::HermitianPartner;
  else throw UsageError("unknown --method '" + method + "' (expected contour or partner)");

  if (c.subcommand == Subcommand::Figure) {
    c.power = figure_preset(c.figure_id).power;
  }
  if (c.oracle == OracleChoice::Partner && c.power != 4) {
    throw UsageError("--oracle partner is available only for x4");
  }
  c.validate();
  return c;
}

void execute(const RunConfig& config, std::ostream& out) {
  switch (config.subcommand) {
    case Subcommand::Scan:
      run_scan(config, out);
      break;
    case Subcommand::Zeros:
      run_zeros(config, out);
      break;
    case Subcommand::Eigen:
      run_eigen(config, out);
      break;
    case Subcommand::Figure:
      run_figure(config, out);
      break;
  }
}

namespace {
void report(std::ostream& err, std::string_view kind, std::string_view message) {
  nlohmann::ordered_json record;
  record["error"] = {{"kind", kind}, {"message", message}};
  err << record.dump() << '\n';
}
}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(argc, argv);
  } catch (const HelpRequested& help) {
    out << help.text;
    return 0;
  } catch (const UsageError& e) {
    report(err, e.kind(), e.what());
    return 2;
  }
  try {
    execute(config, out);
  } catch (const UsageError& e) {
    report(err, e.kind(), e.what());
    return 2;
  } catch (const Error& e) {
    report(err, e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    report(err, "internal", e.what());
    return 1;
  }
  return 0;
}

}  // namespace wedgescatter::cli
