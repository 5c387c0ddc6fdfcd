#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wedgescatter/scattering.hpp"

namespace wedgescatter {

struct ScanSeries {
  PotentialSpec spec;
  BoundaryKind kind = BoundaryKind::PlaneWave;
  std::vector<ScatterPoint> points;

  std::vector<double> energies() const;
  /// Magnitudes with failed points reported as NaN.
  std::vector<double> magnitudes() const;
  /// Nonempty, strictly increasing energies, uniform spec and kind.
  void validate() const;
};

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  /// Grid point inside the bracket with the smallest sampled magnitude.
  double center = 0.0;
  double center_magnitude = 0.0;
};

struct ReflectionZero {
  double energy = 0.0;
  double residual = 0.0;
  Bracket bracket;
  std::optional<double> matched_eigenvalue;
  std::string oracle;
};

struct MinimizeResult {
  double x = 0.0;
  double value = 0.0;
};

/// E_min, E_min + dE, ... up to E_max (inclusive within round-off). Built from
/// the index so the grid is reproducible.
std::vector<double> energy_grid(double e_min, double e_max, double de);

/// One scattering_run per grid energy. Integration failures mark the point as
/// failed instead of aborting the scan.
ScanSeries scan_energies(const PotentialSpec& spec, BoundaryKind kind, double e_min, double e_max, double de,
                         const StepControl& ctrl = {});

/// Brackets (E[i-1], E[i+1]) around strict interior local minima whose magnitude
/// is below depth_factor * median(magnitudes). NaN samples never form minima.
std::vector<Bracket> locate_minima(std::span<const double> energies, std::span<const double> magnitudes,
                                   double depth_factor = 0.2);
std::vector<Bracket> locate_minima(const ScanSeries& series, double depth_factor = 0.2);

/// Golden-section minimization on [lo, hi] until the bracket is narrower than tol.
/// `hint` is an already evaluated interior point (e.g. the grid minimum). Throws
/// RefinementError if no interior probe lies below both endpoints.
MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol,
                                       std::optional<MinimizeResult> hint = std::nullopt);

ReflectionZero refine_zero(const PotentialSpec& spec, BoundaryKind kind, const Bracket& bracket,
                           const StepControl& ctrl = {}, double e_tol = 1e-6);

/// locate_minima + refine_zero over a series.
std::vector<ReflectionZero> find_zeros(const ScanSeries& series, double depth_factor = 0.2,
                                       const StepControl& ctrl = {}, double e_tol = 1e-6);

/// Annotates each zero with the nearest oracle energy within `window`.
std::vector<ReflectionZero> match_eigenvalues(std::vector<ReflectionZero> zeros,
                                              std::span<const double> oracle_energies, double window = 0.1,
                                              const std::string& oracle = "contour");

}  // namespace wedgescatter
