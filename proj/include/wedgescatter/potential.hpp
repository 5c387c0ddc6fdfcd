#pragma once

#include <complex>
#include <numbers>

namespace wedgescatter {

using cplx = std::complex<double>;

/// Cut-off upside-down monomial well: V(x) = -depth * x^power for |x| <= cutoff,
/// V(x) = 0 outside. depth = 0 gives the free particle.
struct PotentialSpec {
  int power = 4;
  double cutoff = 1.0;
  double depth = 1.0;

  /// Throws UsageError unless power is even and >= 4, cutoff > 0, depth >= 0.
  void validate() const;
};

PotentialSpec make_potential(int power, double cutoff);

/// Cut-off potential on the real axis.
double potential_value(const PotentialSpec& spec, double x);

/// Uncut potential -depth * x^power continued to complex x.
cplx uncut_potential(const PotentialSpec& spec, cplx x);

/// z^n by repeated squaring; n >= 0.
cplx ipow(cplx z, int n);
double ipow(double z, int n);

/// Q(x) = E + depth * x^power.
double q_eval(const PotentialSpec& spec, double energy, double x);
cplx q_eval(const PotentialSpec& spec, double energy, cplx x);

/// Q'(x) = depth * power * x^(power-1).
double q_prime(const PotentialSpec& spec, double x);
cplx q_prime(const PotentialSpec& spec, cplx x);

/// Exact rational multiple of pi: (num/den)*pi.
struct PiFraction {
  long num = 0;
  long den = 1;

  double radians() const { return std::numbers::pi * static_cast<double>(num) / static_cast<double>(den); }
  PiFraction normalized() const;
  friend PiFraction operator+(PiFraction a, PiFraction b);
  friend PiFraction operator-(PiFraction a, PiFraction b);
  friend PiFraction operator-(PiFraction a);
  friend bool operator==(PiFraction a, PiFraction b);
};

struct AngularRange {
  PiFraction lo;
  PiFraction hi;
  bool contains(double theta) const { return lo.radians() < theta && theta < hi.radians(); }
};

struct Rational {
  long num = 0;
  long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(Rational a, Rational b) { return a.num * b.den == b.num * a.den; }
};

/// PT-symmetric pair of Stokes wedges in which the bound states decay, plus the
/// asymptotic data: phi ~ |x|^(-prefactor_power) * exp(-i x^order / order).
struct WedgeGeometry {
  PiFraction opening;
  AngularRange right;
  AngularRange left;
  PiFraction right_center;
  PiFraction left_center;
  int exponent_order = 0;
  Rational prefactor_power;
};

WedgeGeometry stokes_wedges(const PotentialSpec& spec);

/// PT reflection of an angle about the imaginary axis: theta -> -pi - theta.
PiFraction pt_reflect(PiFraction theta);

}  // namespace wedgescatter
