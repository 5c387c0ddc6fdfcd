#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "wedgescatter/potential.hpp"
#include "wedgescatter/propagator.hpp"

namespace wedgescatter {

enum class EigenMethod { HermitianPartner, ContourShooting };

std::string_view to_string(EigenMethod method);

struct EigenResult {
  EigenMethod method = EigenMethod::HermitianPartner;
  int power = 4;
  std::vector<double> energies;
  /// Richardson correction size (partner) or |W| at the refined energy (contour).
  std::vector<double> residuals;
};

/// Lowest `count` eigenvalues of the symmetric tridiagonal matrix (diag, off),
/// by Sturm-sequence bisection to absolute width `tol`.
std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag, const std::vector<double>& off,
                                            int count, double tol = 1e-13);

/// Lowest eigenvalues of -kinetic * psi'' + V psi = E psi with psi(+-a) = 0,
/// central differences on `intervals` uniform intervals.
std::vector<double> finite_difference_spectrum(double kinetic, const std::function<double(double)>& potential,
                                               double half_width, int intervals, int count);

/// -psi'' + (4x^4 - 2x) psi = E psi, isospectral with p^2 - x^4. Richardson
/// extrapolated over N and 2N intervals. Throws DomainError if the box is too
/// small for the requested levels.
EigenResult hermitian_partner_eigen(int count, double half_width = 6.0, int intervals = 4000);

/// -psi'' + x^2 psi = E psi with the same machinery (sanity mode, levels 1, 3, 5, ...).
EigenResult harmonic_oscillator_eigen(int count, double half_width = 10.0, int intervals = 4000);

struct ContourConfig {
  double ray_radius = 7.0;
  /// Default: wedge center rays.
  std::optional<double> right_angle;
  std::optional<double> left_angle;
};

/// Normalized Wronskian of the right- and left-wedge recessive solutions at the origin.
/// Vanishes at eigenvalues. Throws InstabilityError on overflow along a ray.
cplx contour_wronskian(const PotentialSpec& spec, double energy, const ContourConfig& cfg = {},
                       const StepControl& ctrl = {});

/// Scans |W| on [e_min, e_max], refines local minima by golden section to width
/// 1e-8 and returns the lowest `count`. Throws InsufficientRangeError if fewer are found.
EigenResult contour_eigenvalues(const PotentialSpec& spec, double e_min, double e_max, double de, int count,
                                const ContourConfig& cfg = {}, const StepControl& ctrl = {});

/// Refines a single contour eigenvalue inside [lo, hi].
double refine_contour_eigenvalue(const PotentialSpec& spec, double lo, double hi, const ContourConfig& cfg = {},
                                 const StepControl& ctrl = {}, double tol = 1e-8);

}  // namespace wedgescatter
