#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wedgescatter/eigen_oracle.hpp"
#include "wedgescatter/scattering.hpp"

namespace wedgescatter::cli {

enum class Subcommand { Scan, Zeros, Eigen, Figure };
enum class OutputFormat { Csv, Json };
enum class OracleChoice { Contour, Partner, None };

struct RunConfig {
  Subcommand subcommand = Subcommand::Scan;
  int power = 4;
  double cutoff = 1.0;
  BoundaryKind kind = BoundaryKind::PlaneWave;
  double e_min = 0.5;
  double e_max = 21.0;
  double de = 0.01;
  StepControl ctrl;
  std::string out;  // empty: stdout
  OutputFormat format = OutputFormat::Csv;

  // zeros / figure
  double depth_factor = 0.2;
  double e_tol = 1e-6;
  double window = 0.1;
  OracleChoice oracle = OracleChoice::Contour;
  std::string from_csv;

  // eigen
  EigenMethod method = EigenMethod::ContourShooting;
  int count = 3;
  double ray_radius = 7.0;
  double half_width = 6.0;
  int intervals = 4000;

  // figure
  int figure_id = 0;
  std::string out_dir = ".";

  /// Rejects configurations that would violate an operation's preconditions.
  void validate() const;
};

struct FigurePreset {
  int id;
  int power;
  double cutoff;
  BoundaryKind kind;
  double e_min;
  double e_max;
  double de;
  /// Extra run at another cutoff written next to the main one (Fig. 7 at L = 5).
  std::optional<double> comparison_cutoff;
};

const std::vector<FigurePreset>& figure_presets();
/// Throws UsageError for ids outside 2..13.
const FigurePreset& figure_preset(int id);

/// Thrown by parse_args for --help.
struct HelpRequested {
  std::string text;
};

/// Parses argv (argv[0] is the program name). Throws UsageError on bad flags.
RunConfig parse_args(int argc, const char* const* argv);

/// Executes a validated configuration; files are written as described by the flags.
void execute(const RunConfig& config, std::ostream& out);

/// parse_args + execute with exit codes: 0 success, 1 numerical failure, 2 usage
/// error. Errors are reported on `err` as a one-line JSON record.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wedgescatter::cli
