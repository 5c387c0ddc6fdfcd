#pragma once

#include <cstdint>
#include <functional>

#include "wedgescatter/potential.hpp"

namespace wedgescatter {

/// Point on the integration path with phi and phi' there.
struct WaveState {
  cplx x;
  cplx value;
  cplx derivative;

  bool finite() const;
  /// sqrt(|phi|^2 + |phi'|^2)
  double norm() const;
};

struct StepControl {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::int64_t max_steps = 10'000'000;
  double initial_step = 1e-3;

  void validate() const;
};

/// Coefficient k(x) of phi'' = k(x) phi.
using Coefficient = std::function<cplx(cplx)>;

/// Adaptive Dormand-Prince 8(5,3) with PI step control along the straight segment
/// start.x -> x_to. The returned state sits exactly at x_to.
/// Throws IntegrationError when max_steps is exhausted and OverflowError on non-finite states.
WaveState integrate_linear(const WaveState& start, cplx x_to, const Coefficient& k, const StepControl& ctrl);

/// Classical fourth-order Runge-Kutta with a fixed step (reference mode).
WaveState integrate_linear_fixed(const WaveState& start, cplx x_to, const Coefficient& k, double step);

/// Solves -phi'' + V phi = E phi from start.x to x_to.
///
/// When both endpoints are real the cut-off potential is used and the path is
/// split at x = +-L so no step straddles the jump in V. When either endpoint is
/// complex the uncut potential -x^m is used along the straight segment.
WaveState propagate(const WaveState& start, double energy, const PotentialSpec& spec, cplx x_to,
                    const StepControl& ctrl = {});

/// Same path rules as propagate(), fixed-step RK4.
WaveState propagate_fixed_step(const WaveState& start, double energy, const PotentialSpec& spec, cplx x_to,
                               double step);

/// a.value * b.derivative - a.derivative * b.value; throws UsageError if the coordinates differ.
cplx wronskian(const WaveState& a, const WaveState& b);

}  // namespace wedgescatter
