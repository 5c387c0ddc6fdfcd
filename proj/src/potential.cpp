#include "wedgescatter/potential.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "wedgescatter/errors.hpp"

namespace wedgescatter {

void PotentialSpec::validate() const {
  if (power < 4 || power % 2 != 0) {
    throw UsageError("potential power must be an even integer >= 4, got " + std::to_string(power));
  }
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
    throw UsageError("cutoff L must be positive and finite");
  }
  if (!(depth >= 0.0) || !std::isfinite(depth)) {
    throw UsageError("well depth must be nonnegative and finite");
  }
}

PotentialSpec make_potential(int power, double cutoff) {
  PotentialSpec spec{power, cutoff, 1.0};
  spec.validate();
  return spec;
}

template <typename T>
static T ipow_impl(T z, int n) {
  T result{1};
  while (n > 0) {
    if (n & 1) result *= z;
    z *= z;
    n >>= 1;
  }
  return result;
}

cplx ipow(cplx z, int n) { return ipow_impl(z, n); }
double ipow(double z, int n) { return ipow_impl(z, n); }

double potential_value(const PotentialSpec& spec, double x) {
  if (std::abs(x) > spec.cutoff) return 0.0;
  return -spec.depth * ipow(x, spec.power);
}

cplx uncut_potential(const PotentialSpec& spec, cplx x) { return -spec.depth * ipow(x, spec.power); }

double q_eval(const PotentialSpec& spec, double energy, double x) {
  return energy + spec.depth * ipow(x, spec.power);
}

cplx q_eval(const PotentialSpec& spec, double energy, cplx x) {
  return energy + spec.depth * ipow(x, spec.power);
}

double q_prime(const PotentialSpec& spec, double x) {
  return spec.depth * spec.power * ipow(x, spec.power - 1);
}

cplx q_prime(const PotentialSpec& spec, cplx x) {
  return spec.depth * static_cast<double>(spec.power) * ipow(x, spec.power - 1);
}

PiFraction PiFraction::normalized() const {
  long n = num;
  long d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long g = std::gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return {n, d};
}

PiFraction operator+(PiFraction a, PiFraction b) {
  return PiFraction{a.num * b.den + b.num * a.den, a.den * b.den}.normalized();
}

PiFraction operator-(PiFraction a, PiFraction b) { return a + (-b); }

PiFraction operator-(PiFraction a) { return PiFraction{-a.num, a.den}.normalized(); }

bool operator==(PiFraction a, PiFraction b) { return a.num * b.den == b.num * a.den; }

PiFraction pt_reflect(PiFraction theta) { return PiFraction{-1, 1} - theta; }

WedgeGeometry stokes_wedges(const PotentialSpec& spec) {
  spec.validate();
  const long m = spec.power;
  WedgeGeometry g;
  // Solutions behave like exp(+-i x^p / p) with p = (m+2)/2; decay sectors have width pi/p.
  g.opening = PiFraction{2, m + 2}.normalized();
  g.right = {-g.opening, PiFraction{0, 1}};
  g.left = {PiFraction{-1, 1}, PiFraction{-1, 1} + g.opening};
  const PiFraction half = PiFraction{1, m + 2}.normalized();
  g.right_center = -half;
  g.left_center = PiFraction{-1, 1} + half;
  g.exponent_order = static_cast<int>((m + 2) / 2);
  const long gcd = std::gcd(m, 4L);
  g.prefactor_power = {m / gcd, 4 / gcd};
  return g;
}

}  // namespace wedgescatter
