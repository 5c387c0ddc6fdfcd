#pragma once

#include <string>
#include <string_view>

#include "wedgescatter/potential.hpp"
#include "wedgescatter/propagator.hpp"

namespace wedgescatter {

/// Boundary-condition protocol at x = L.
enum class BoundaryKind {
  PlaneWave,  // outgoing plane wave e^{i sqrt(E) x}, observable |R/T|
  Wkb,        // outgoing WKB wave built from Q(L), observable |D-|
};

std::string_view to_string(BoundaryKind kind);
/// Accepts "plane" / "wkb"; throws UsageError otherwise.
BoundaryKind parse_boundary_kind(std::string_view text);

/// Incident and reflected amplitudes at x = -L.
///   PlaneWave: incident = A = e^{-2iL sqrt(E)}/T, reflected = B = R/T.
///   Wkb:       incident = D+, reflected = D-.
struct Amplitudes {
  cplx incident;
  cplx reflected;
};

struct ScatterPoint {
  double energy = 0.0;
  BoundaryKind kind = BoundaryKind::PlaneWave;
  double magnitude = 0.0;  // |R/T| or |D-|
  double incident_magnitude = 0.0;
  double reflected_magnitude = 0.0;
  Amplitudes amplitudes;
  WaveState endpoint;
  bool failed = false;
  std::string failure;

  /// |R|^2 + |T|^2 for plane-wave points.
  double flux_sum() const;
};

/// y(L) = 1, y'(L) = i sqrt(E). Throws DomainError for E <= 0.
WaveState plane_wave_bc(double energy, double cutoff);

/// Right-moving WKB wave normalized at x: phi = 1, phi' = i sqrt(Q(x)) - Q'(x) / (4 Q(x)).
WaveState wkb_right_mover(const PotentialSpec& spec, double energy, double x);

/// wkb_right_mover at x = L. Throws DomainError when Q(L) <= 0.
WaveState wkb_bc(const PotentialSpec& spec, double energy);

/// A = (y - i y'/sqrt(E))/2, B = (y + i y'/sqrt(E))/2.
Amplitudes rt_amplitudes(const WaveState& end, double energy, double cutoff);

/// Splits phi, phi' at end.x into WKB right/left movers built from Q and Q' at
/// end.x:  phi = D- + D+,  phi' = D-(-i sqrt Q - q) + D+(i sqrt Q - q),  q = Q'/(4Q).
Amplitudes dminus_amplitudes(const WaveState& end, const PotentialSpec& spec, double energy);

/// Boundary state at L, propagate to -L, decompose.
ScatterPoint scattering_run(const PotentialSpec& spec, double energy, BoundaryKind kind,
                            const StepControl& ctrl = {});

}  // namespace wedgescatter
