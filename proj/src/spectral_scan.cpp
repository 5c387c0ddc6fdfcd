#include "wedgescatter/spectral_scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wedgescatter/errors.hpp"
#include "wedgescatter/parallel.hpp"

namespace wedgescatter {

std::vector<double> ScanSeries::energies() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.energy);
  return out;
}

std::vector<double> ScanSeries::magnitudes() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.failed ? std::numeric_limits<double>::quiet_NaN() : p.magnitude);
  return out;
}

void ScanSeries::validate() const {
  if (points.empty()) throw UsageError("scan series is empty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].kind != kind) throw UsageError("scan series mixes boundary kinds");
    if (i > 0 && !(points[i].energy > points[i - 1].energy)) {
      throw UsageError("scan energies must be strictly increasing");
    }
  }
}

std::vector<double> energy_grid(double e_min, double e_max, double de) {
  if (!(e_min > 0.0) || !(e_max > e_min)) throw UsageError("energy range must satisfy 0 < E_min < E_max");
  if (!(de > 0.0)) throw UsageError("energy step must be positive");
  const auto n = static_cast<std::size_t>(std::floor((e_max - e_min) / de + 1e-9)) + 1;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = e_min + static_cast<double>(i) * de;
  return grid;
}

ScanSeries scan_energies(const PotentialSpec& spec, BoundaryKind kind, double e_min, double e_max, double de,
                         const StepControl& ctrl) {
  spec.validate();
  ctrl.validate();
  const auto grid = energy_grid(e_min, e_max, de);

  ScanSeries series{spec, kind, std::vector<ScatterPoint>(grid.size())};
  parallel_for(grid.size(), [&](std::size_t i) {
    try {
      series.points[i] = scattering_run(spec, grid[i], kind, ctrl);
    } catch (const Error& e) {
      ScatterPoint& p = series.points[i];
      p.energy = grid[i];
      p.kind = kind;
      p.failed = true;
      p.failure = std::string(e.kind()) + ": " + e.what();
      p.magnitude = p.incident_magnitude = p.reflected_magnitude = std::numeric_limits<double>::quiet_NaN();
    }
  });
  return series;
}

namespace {
double median_of_finite(std::span<const double> values) {
  std::vector<double> finite;
  finite.reserve(values.size());
  for (double v : values) {
    if (std::isfinite(v)) finite.push_back(v);
  }
  if (finite.empty()) return std::numeric_limits<double>::quiet_NaN();
  const auto mid = finite.begin() + static_cast<std::ptrdiff_t>(finite.size() / 2);
  std::nth_element(finite.begin(), mid, finite.end());
  if (finite.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(finite.begin(), mid);
  return 0.5 * (lower + upper);
}
}  // namespace

std::vector<Bracket> locate_minima(std::span<const double> energies, std::span<const double> magnitudes,
                                   double depth_factor) {
  if (energies.size() != magnitudes.size()) throw UsageError("energies and magnitudes differ in length");
  if (energies.size() < 3) throw UsageError("locate_minima needs at least 3 samples");
  const double threshold = depth_factor * median_of_finite(magnitudes);

  std::vector<Bracket> out;
  for (std::size_t i = 1; i + 1 < magnitudes.size(); ++i) {
    const double prev = magnitudes[i - 1];
    const double here = magnitudes[i];
    const double next = magnitudes[i + 1];
    if (!std::isfinite(prev) || !std::isfinite(here) || !std::isfinite(next)) continue;
    if (here < prev && here < next && here < threshold) {
      out.push_back({energies[i - 1], energies[i + 1], energies[i], here});
    }
  }
  return out;
}

std::vector<Bracket> locate_minima(const ScanSeries& series, double depth_factor) {
  series.validate();
  const auto e = series.energies();
  const auto m = series.magnitudes();
  return locate_minima(e, m, depth_factor);
}

MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol,
                                       std::optional<MinimizeResult> hint) {
  if (!(hi > lo)) throw UsageError("golden-section bracket must have lo < hi");
  if (!(tol > 0.0)) throw UsageError("golden-section tolerance must be positive");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

  const double f_lo = f(lo);
  const double f_hi = f(hi);
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);

  MinimizeResult best = f1 <= f2 ? MinimizeResult{x1, f1} : MinimizeResult{x2, f2};
  if (hint && hint->x > lo && hint->x < hi && hint->value < best.value) best = *hint;
  if (!(best.value < f_lo && best.value < f_hi)) {
    throw RefinementError("bracket is not unimodal: no interior point lies below both endpoints");
  }

  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      if (x1 >= x2) x1 = 0.5 * (a + x2);
      f1 = f(x1);
      if (f1 < best.value) best = {x1, f1};
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      if (x2 <= x1) x2 = 0.5 * (x1 + b);
      f2 = f(x2);
      if (f2 < best.value) best = {x2, f2};
    }
  }
  return best;
}

ReflectionZero refine_zero(const PotentialSpec& spec, BoundaryKind kind, const Bracket& bracket,
                           const StepControl& ctrl, double e_tol) {
  auto magnitude = [&](double e) { return scattering_run(spec, e, kind, ctrl).magnitude; };
  std::optional<MinimizeResult> hint;
  if (bracket.center > bracket.lo && bracket.center < bracket.hi) {
    hint = MinimizeResult{bracket.center, magnitude(bracket.center)};
  }
  const MinimizeResult best = golden_section_minimize(magnitude, bracket.lo, bracket.hi, e_tol, hint);
  ReflectionZero zero;
  zero.energy = best.x;
  zero.residual = best.value;
  zero.bracket = bracket;
  return zero;
}

std::vector<ReflectionZero> find_zeros(const ScanSeries& series, double depth_factor, const StepControl& ctrl,
                                       double e_tol) {
  const auto brackets = locate_minima(series, depth_factor);
  std::vector<ReflectionZero> zeros(brackets.size());
  parallel_for(brackets.size(), [&](std::size_t i) {
    zeros[i] = refine_zero(series.spec, series.kind, brackets[i], ctrl, e_tol);
  });
  return zeros;
}

std::vector<ReflectionZero> match_eigenvalues(std::vector<ReflectionZero> zeros,
                                              std::span<const double> oracle_energies, double window,
                                              const std::string& oracle) {
  if (!std::is_sorted(oracle_energies.begin(), oracle_energies.end())) {
    throw UsageError("oracle energies must be sorted");
  }
  for (auto& zero : zeros) {
    zero.matched_eigenvalue.reset();
    zero.oracle.clear();
    const double* nearest = nullptr;
    for (const double& e : oracle_energies) {
      if (!nearest || std::abs(e - zero.energy) < std::abs(*nearest - zero.energy)) nearest = &e;
    }
    if (nearest && std::abs(*nearest - zero.energy) <= window) {
      zero.matched_eigenvalue = *nearest;
      zero.oracle = oracle;
    }
  }
  return zeros;
}

}  // namespace wedgescatter
