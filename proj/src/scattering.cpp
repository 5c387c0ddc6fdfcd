#include "wedgescatter/scattering.hpp"

#include <cmath>

#include "wedgescatter/errors.hpp"

namespace wedgescatter {

namespace {
constexpr cplx I{0.0, 1.0};

void require_on_left_edge(const WaveState& end, double cutoff) {
  if (end.x != cplx(-cutoff, 0.0)) throw UsageError("amplitudes must be taken at x = -L");
}
}  // namespace

std::string_view to_string(BoundaryKind kind) {
  return kind == BoundaryKind::PlaneWave ? "plane" : "wkb";
}

BoundaryKind parse_boundary_kind(std::string_view text) {
  if (text == "plane") return BoundaryKind::PlaneWave;
  if (text == "wkb") return BoundaryKind::Wkb;
  throw UsageError("unknown boundary condition '" + std::string(text) + "' (expected plane or wkb)");
}

double ScatterPoint::flux_sum() const {
  const double a2 = incident_magnitude * incident_magnitude;
  const double b2 = reflected_magnitude * reflected_magnitude;
  return (1.0 + b2) / a2;
}

WaveState plane_wave_bc(double energy, double cutoff) {
  if (!(energy > 0.0)) throw DomainError("plane-wave boundary condition needs E > 0");
  if (!(cutoff > 0.0)) throw UsageError("cutoff L must be positive");
  return {cplx(cutoff, 0.0), 1.0, I * std::sqrt(energy)};
}

WaveState wkb_right_mover(const PotentialSpec& spec, double energy, double x) {
  const double q = q_eval(spec, energy, x);
  if (!(q > 0.0)) throw DomainError("WKB boundary condition needs Q > 0");
  const double qp = q_prime(spec, x);
  return {cplx(x, 0.0), 1.0, I * std::sqrt(q) - qp / (4.0 * q)};
}

WaveState wkb_bc(const PotentialSpec& spec, double energy) {
  spec.validate();
  if (!(energy > 0.0)) throw DomainError("WKB boundary condition needs E > 0");
  return wkb_right_mover(spec, energy, spec.cutoff);
}

Amplitudes rt_amplitudes(const WaveState& end, double energy, double cutoff) {
  if (!(energy > 0.0)) throw DomainError("plane-wave amplitudes need E > 0");
  require_on_left_edge(end, cutoff);
  const double k = std::sqrt(energy);
  const cplx scaled = I * end.derivative / k;
  return {0.5 * (end.value - scaled), 0.5 * (end.value + scaled)};
}

Amplitudes dminus_amplitudes(const WaveState& end, const PotentialSpec& spec, double energy) {
  const double x = end.x.real();
  if (end.x.imag() != 0.0) throw UsageError("WKB decomposition needs a real coordinate");
  const double q = q_eval(spec, energy, x);
  if (!(q > 0.0)) throw DomainError("WKB decomposition needs Q > 0");
  const double root = std::sqrt(q);
  const double shift = q_prime(spec, x) / (4.0 * q);
  // phi' + shift*phi = i*root*(D+ - D-)
  const cplx difference = (end.derivative + shift * end.value) / (I * root);
  return {0.5 * (end.value + difference), 0.5 * (end.value - difference)};
}

ScatterPoint scattering_run(const PotentialSpec& spec, double energy, BoundaryKind kind, const StepControl& ctrl) {
  spec.validate();
  if (!(energy > 0.0)) throw DomainError("scattering energy must be positive");
  const WaveState start = kind == BoundaryKind::PlaneWave ? plane_wave_bc(energy, spec.cutoff) : wkb_bc(spec, energy);
  const WaveState end = propagate(start, energy, spec, cplx(-spec.cutoff, 0.0), ctrl);

  ScatterPoint point;
  point.energy = energy;
  point.kind = kind;
  point.endpoint = end;
  point.amplitudes =
      kind == BoundaryKind::PlaneWave ? rt_amplitudes(end, energy, spec.cutoff) : dminus_amplitudes(end, spec, energy);
  point.incident_magnitude = std::abs(point.amplitudes.incident);
  point.reflected_magnitude = std::abs(point.amplitudes.reflected);
  point.magnitude = point.reflected_magnitude;
  return point;
}

}  // namespace wedgescatter
