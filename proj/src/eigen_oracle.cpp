#include "wedgescatter/eigen_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wedgescatter/errors.hpp"
#include "wedgescatter/parallel.hpp"
#include "wedgescatter/spectral_scan.hpp"

namespace wedgescatter {

std::string_view to_string(EigenMethod method) {
  return method == EigenMethod::HermitianPartner ? "partner" : "contour";
}

namespace {

// Number of eigenvalues of the tridiagonal matrix strictly below lambda.
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double lambda) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double coupling = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
    q = diag[i] - lambda - (i == 0 ? 0.0 : coupling / q);
    if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::abs(diag[i]) + std::abs(lambda) + 1.0);
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag, const std::vector<double>& off,
                                            int count, double tol) {
  const auto n = diag.size();
  if (n == 0 || off.size() + 1 != n) throw UsageError("tridiagonal matrix has inconsistent dimensions");
  if (count < 1 || static_cast<std::size_t>(count) > n) throw UsageError("requested eigenvalue count out of range");

  // Gershgorin interval
  double lower = std::numeric_limits<double>::infinity();
  double upper = -lower;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off[i]) : 0.0);
    lower = std::min(lower, diag[i] - r);
    upper = std::max(upper, diag[i] + r);
  }

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    double lo = k == 0 ? lower : values.back();
    double hi = upper;
    for (int it = 0; it < 400 && hi - lo > tol * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (sturm_count(diag, off, mid) > k) hi = mid;
      else lo = mid;
    }
    values.push_back(0.5 * (lo + hi));
  }
  return values;
}

std::vector<double> finite_difference_spectrum(double kinetic, const std::function<double(double)>& potential,
                                               double half_width, int intervals, int count) {
  if (!(kinetic > 0.0) || !(half_width > 0.0)) throw UsageError("kinetic coefficient and half width must be positive");
  if (intervals < 4) throw UsageError("need at least 4 mesh intervals");
  const double h = 2.0 * half_width / intervals;
  const auto interior = static_cast<std::size_t>(intervals - 1);
  std::vector<double> diag(interior);
  std::vector<double> off(interior - 1, -kinetic / (h * h));
  for (std::size_t i = 0; i < interior; ++i) {
    const double x = -half_width + h * static_cast<double>(i + 1);
    diag[i] = 2.0 * kinetic / (h * h) + potential(x);
  }
  return tridiagonal_eigenvalues(diag, off, count);
}

namespace {

EigenResult richardson_spectrum(int power, double kinetic, const std::function<double(double)>& potential,
                                double half_width, int intervals, int count) {
  if (count < 1) throw UsageError("eigenvalue count must be >= 1");
  const auto coarse = finite_difference_spectrum(kinetic, potential, half_width, intervals, count);
  const auto fine = finite_difference_spectrum(kinetic, potential, half_width, 2 * intervals, count);

  EigenResult result{EigenMethod::HermitianPartner, power, {}, {}};
  for (int i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    result.energies.push_back((4.0 * fine[k] - coarse[k]) / 3.0);
    result.residuals.push_back(std::abs(fine[k] - coarse[k]) / 3.0);
  }

  const double wall = std::min(potential(-half_width), potential(half_width));
  if (wall < 10.0 * result.energies.back()) {
    throw DomainError("box half width " + std::to_string(half_width) +
                      " too small: wall potential must exceed 10x the highest requested level");
  }
  // Ground-state tail: doubling the box at fixed spacing must not move E0.
  const auto doubled = finite_difference_spectrum(kinetic, potential, 2.0 * half_width, 2 * intervals, 1);
  if (std::abs(doubled[0] - coarse[0]) > 1e-6 * std::max(1.0, std::abs(coarse[0]))) {
    throw DomainError("ground state not converged in box half width " + std::to_string(half_width));
  }
  return result;
}

}  // namespace

EigenResult hermitian_partner_eigen(int count, double half_width, int intervals) {
  return richardson_spectrum(4, 1.0, [](double x) { return 4.0 * x * x * x * x - 2.0 * x; }, half_width, intervals,
                             count);
}

EigenResult harmonic_oscillator_eigen(int count, double half_width, int intervals) {
  return richardson_spectrum(2, 1.0, [](double x) { return x * x; }, half_width, intervals, count);
}

namespace {

constexpr cplx I{0.0, 1.0};
// Growth allowed per ray segment before the state is rescaled (e^200 ~ 1e87).
constexpr double kSegmentGrowth = 200.0;
// A refined minimum counts as an eigenvalue when |W| drops this far below the bracket walls.
constexpr double kZeroContrast = 1e-3;

void validate_config(const PotentialSpec& spec, const ContourConfig& cfg, double e_max) {
  if (!(cfg.ray_radius > 0.0)) throw UsageError("ray radius must be positive");
  if (ipow(cfg.ray_radius, spec.power) < 100.0 * std::abs(e_max)) {
    throw UsageError("ray radius too small: need r0^m >= 100 * E_max");
  }
  const WedgeGeometry wedges = stokes_wedges(spec);
  if (cfg.right_angle && !wedges.right.contains(*cfg.right_angle)) {
    throw UsageError("right ray angle lies outside the right Stokes wedge");
  }
  if (cfg.left_angle && !wedges.left.contains(*cfg.left_angle)) {
    throw UsageError("left ray angle lies outside the left Stokes wedge");
  }
}

// Recessive solution along the ray at angle theta, integrated from the tip to the origin.
WaveState shoot_ray(const PotentialSpec& spec, double energy, double radius, double theta, const StepControl& ctrl) {
  const int p = (spec.power + 2) / 2;
  const cplx direction = std::polar(1.0, theta);
  const cplx tip = radius * direction;

  // sqrt(Q) on the branch that tends to x^(m/2) at large |x|.
  const cplx xm = ipow(tip, spec.power);
  const cplx root_q = ipow(tip, spec.power / 2) * std::sqrt(1.0 + energy / (spec.depth * xm));
  const cplx q = q_eval(spec, energy, tip);
  // exp(sign * i x^p / p) must decay outward.
  const double sign = (I * ipow(tip, p)).real() < 0.0 ? 1.0 : -1.0;
  WaveState state{tip, 1.0, sign * I * std::sqrt(spec.depth) * root_q - q_prime(spec, tip) / (4.0 * q)};

  double r = radius;
  while (r > 0.0) {
    const double rp = std::pow(r, p) - kSegmentGrowth * p / std::sqrt(spec.depth);
    const double r_next = rp > 0.0 ? std::pow(rp, 1.0 / p) : 0.0;
    const cplx to = r_next > 0.0 ? r_next * direction : cplx(0.0, 0.0);
    try {
      state = propagate(state, energy, spec, to, ctrl);
    } catch (const OverflowError& e) {
      throw InstabilityError(std::string("contour ray overflow: ") + e.what());
    }
    if (r_next > 0.0) {
      const double n = state.norm();
      state.value /= n;
      state.derivative /= n;
    }
    r = r_next;
  }
  return state;
}

}  // namespace

cplx contour_wronskian(const PotentialSpec& spec, double energy, const ContourConfig& cfg, const StepControl& ctrl) {
  spec.validate();
  if (!(spec.depth > 0.0)) throw UsageError("contour shooting needs a nonzero well depth");
  validate_config(spec, cfg, energy);
  const WedgeGeometry wedges = stokes_wedges(spec);
  const double right_angle = cfg.right_angle.value_or(wedges.right_center.radians());
  const double left_angle = cfg.left_angle.value_or(wedges.left_center.radians());

  const WaveState right = shoot_ray(spec, energy, cfg.ray_radius, right_angle, ctrl);
  const WaveState left = shoot_ray(spec, energy, cfg.ray_radius, left_angle, ctrl);
  const cplx w = wronskian(left, right);
  const double scale = left.norm() * right.norm();
  if (!std::isfinite(std::abs(w)) || !(scale > 0.0)) throw InstabilityError("contour Wronskian is not finite");
  return w / scale;
}

double refine_contour_eigenvalue(const PotentialSpec& spec, double lo, double hi, const ContourConfig& cfg,
                                 const StepControl& ctrl, double tol) {
  auto residual = [&](double e) { return std::abs(contour_wronskian(spec, e, cfg, ctrl)); };
  return golden_section_minimize(residual, lo, hi, tol).x;
}

EigenResult contour_eigenvalues(const PotentialSpec& spec, double e_min, double e_max, double de, int count,
                                const ContourConfig& cfg, const StepControl& ctrl) {
  spec.validate();
  if (count < 1) throw UsageError("eigenvalue count must be >= 1");
  validate_config(spec, cfg, e_max);
  const auto grid = energy_grid(e_min, e_max, de);

  std::vector<double> magnitude(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    magnitude[i] = std::abs(contour_wronskian(spec, grid[i], cfg, ctrl));
  });
  // |W| has an envelope that falls by decades with E, so a median-relative depth
  // gate would drop real levels. Take every strict local minimum and keep the ones
  // that refine to a true zero.
  const auto brackets = locate_minima(grid, magnitude, std::numeric_limits<double>::infinity());

  std::vector<std::optional<MinimizeResult>> refined(brackets.size());
  parallel_for(brackets.size(), [&](std::size_t i) {
    auto residual = [&](double e) { return std::abs(contour_wronskian(spec, e, cfg, ctrl)); };
    const MinimizeResult best = golden_section_minimize(
        residual, brackets[i].lo, brackets[i].hi, 1e-8, MinimizeResult{brackets[i].center, brackets[i].center_magnitude});
    const double walls = std::min(residual(brackets[i].lo), residual(brackets[i].hi));
    if (best.value < kZeroContrast * walls) refined[i] = best;
  });

  std::vector<MinimizeResult> zeros;
  for (const auto& r : refined) {
    if (r) zeros.push_back(*r);
  }
  if (zeros.size() < static_cast<std::size_t>(count)) {
    throw InsufficientRangeError("found " + std::to_string(zeros.size()) + " eigenvalues in [" +
                                 std::to_string(e_min) + ", " + std::to_string(e_max) + "], requested " +
                                 std::to_string(count));
  }
  EigenResult result{EigenMethod::ContourShooting, spec.power, {}, {}};
  for (int i = 0; i < count; ++i) {
    result.energies.push_back(zeros[static_cast<std::size_t>(i)].x);
    result.residuals.push_back(zeros[static_cast<std::size_t>(i)].value);
  }
  return result;
}

}  // namespace wedgescatter
