#include "wedgescatter/propagator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "dop853_tableau.hpp"
#include "wedgescatter/errors.hpp"

namespace wedgescatter {

bool WaveState::finite() const {
  return std::isfinite(x.real()) && std::isfinite(x.imag()) && std::isfinite(value.real()) &&
         std::isfinite(value.imag()) && std::isfinite(derivative.real()) && std::isfinite(derivative.imag());
}

double WaveState::norm() const { return std::sqrt(std::norm(value) + std::norm(derivative)); }

void StepControl::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw UsageError("step-control tolerances must be positive");
  if (max_steps <= 0) throw UsageError("max_steps must be positive");
  if (!(initial_step > 0.0)) throw UsageError("initial step must be positive");
}

namespace {

// Overflow guard well below DBL_MAX so that one more RK stage cannot reach inf.
constexpr double kHugeMagnitude = 1e250;

struct Vec2 {
  cplx value;
  cplx derivative;
};

Vec2 operator+(Vec2 a, Vec2 b) { return {a.value + b.value, a.derivative + b.derivative}; }
Vec2 operator*(double s, Vec2 a) { return {s * a.value, s * a.derivative}; }

std::string describe(cplx x) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << x.real() << "," << x.imag() << ")";
  return os.str();
}

// Straight path x(s) = from + s * dir, s in [0, length], |dir| = 1.
struct Path {
  cplx from;
  cplx dir;
  double length;

  cplx at(double s) const { return from + s * dir; }
};

Path make_path(cplx from, cplx to) {
  const double length = std::abs(to - from);
  if (!(length > 0.0)) throw UsageError("integration path has zero length");
  return {from, (to - from) / length, length};
}

// d/ds (phi, phi') along the path.
Vec2 rhs(const Path& path, const Coefficient& k, double s, const Vec2& y) {
  return {path.dir * y.derivative, path.dir * k(path.at(s)) * y.value};
}

void check_finite(const Vec2& y, cplx where) {
  const bool ok = std::isfinite(y.value.real()) && std::isfinite(y.value.imag()) &&
                  std::isfinite(y.derivative.real()) && std::isfinite(y.derivative.imag()) &&
                  std::abs(y.value) < kHugeMagnitude && std::abs(y.derivative) < kHugeMagnitude;
  if (!ok) throw OverflowError("non-finite wave state near x = " + describe(where), where);
}

// Mixed abs/rel scale per complex component; the 5th- and 3rd-order estimates are
// blended as in the reference DOP853 code so that the controller sees an O(h^8) error.
double error_norm(const Vec2& err5, const Vec2& err3, const Vec2& y0, const Vec2& y1, const StepControl& ctrl) {
  const double sv = ctrl.abs_tol + ctrl.rel_tol * std::max(std::abs(y0.value), std::abs(y1.value));
  const double sd = ctrl.abs_tol + ctrl.rel_tol * std::max(std::abs(y0.derivative), std::abs(y1.derivative));
  // Scale before squaring; states near the overflow guard would square to inf.
  auto sq = [](double r) { return r * r; };
  const double e5 = sq(std::abs(err5.value) / sv) + sq(std::abs(err5.derivative) / sd);
  const double e3 = sq(std::abs(err3.value) / sv) + sq(std::abs(err3.derivative) / sd);
  if (e5 == 0.0 && e3 == 0.0) return 0.0;
  return e5 / std::sqrt(2.0 * (e5 + 0.01 * e3));
}

Vec2 dopri_segment(const Path& path, const Coefficient& k, Vec2 y, const StepControl& ctrl) {
  using namespace detail;
  constexpr double safety = 0.9, fac_min = 0.2, fac_max = 10.0;
  constexpr double alpha = 0.7 / 8.0, beta = 0.4 / 8.0;
  constexpr std::size_t n = kB.size();

  double s = 0.0;
  double h = std::min(ctrl.initial_step, path.length);
  double err_prev = 1e-4;
  bool rejected_last = false;
  std::array<Vec2, n + 1> stages;
  stages[0] = rhs(path, k, s, y);

  for (std::int64_t step = 0; step < ctrl.max_steps; ++step) {
    if (path.length - s <= 1e-15 * path.length) return y;
    const bool last = s + h >= path.length;
    if (last) h = path.length - s;

    for (std::size_t i = 1; i < n; ++i) {
      Vec2 acc{};
      for (std::size_t j = 0; j < i; ++j) acc = acc + kA[i][j] * stages[j];
      stages[i] = rhs(path, k, s + kC[i] * h, y + h * acc);
    }
    Vec2 incr{};
    for (std::size_t i = 0; i < n; ++i) incr = incr + kB[i] * stages[i];
    const Vec2 y_new = y + h * incr;
    const double s_new = last ? path.length : s + h;
    stages[n] = rhs(path, k, s_new, y_new);
    Vec2 err5{}, err3{};
    for (std::size_t i = 0; i <= n; ++i) {
      err5 = err5 + kE5[i] * stages[i];
      err3 = err3 + kE3[i] * stages[i];
    }

    double en = h * error_norm(err5, err3, y, y_new, ctrl);
    if (!std::isfinite(en)) en = 1e10;

    if (en <= 1.0) {
      check_finite(y_new, path.at(s_new));
      en = std::max(en, 1e-10);
      double fac = safety * std::pow(en, -alpha) * std::pow(err_prev, beta);
      fac = std::clamp(fac, fac_min, fac_max);
      if (rejected_last) fac = std::min(fac, 1.0);
      err_prev = en;
      rejected_last = false;
      s = s_new;
      y = y_new;
      stages[0] = stages[n];
      if (last) return y;
      h *= fac;
    } else {
      const double fac = std::max(fac_min, safety * std::pow(en, -alpha));
      h *= fac;
      rejected_last = true;
      if (h < 1e-14 * path.length) {
        throw IntegrationError("step size underflow near x = " + describe(path.at(s)), path.at(s));
      }
    }
  }
  throw IntegrationError("step budget exhausted; furthest x = " + describe(path.at(s)), path.at(s));
}

Vec2 rk4_segment(const Path& path, const Coefficient& k, Vec2 y, double step) {
  const auto n = static_cast<std::int64_t>(std::ceil(path.length / step));
  const double h = path.length / static_cast<double>(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const double s = h * static_cast<double>(i);
    const Vec2 k1 = rhs(path, k, s, y);
    const Vec2 k2 = rhs(path, k, s + 0.5 * h, y + (0.5 * h) * k1);
    const Vec2 k3 = rhs(path, k, s + 0.5 * h, y + (0.5 * h) * k2);
    const Vec2 k4 = rhs(path, k, s + h, y + h * k3);
    y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    check_finite(y, path.at(s + h));
  }
  return y;
}

bool is_real(cplx z) { return z.imag() == 0.0; }

// Breakpoints of the real-axis path: endpoints plus any of +-L strictly between them.
std::vector<double> real_breakpoints(double from, double to, double cutoff) {
  std::vector<double> points{from};
  const double lo = std::min(from, to);
  const double hi = std::max(from, to);
  std::vector<double> inner;
  for (double b : {-cutoff, cutoff}) {
    if (b > lo && b < hi) inner.push_back(b);
  }
  if (to < from) std::sort(inner.rbegin(), inner.rend());
  else std::sort(inner.begin(), inner.end());
  points.insert(points.end(), inner.begin(), inner.end());
  points.push_back(to);
  return points;
}

template <typename Segment>
WaveState propagate_impl(const WaveState& start, double energy, const PotentialSpec& spec, cplx x_to,
                         Segment&& segment) {
  spec.validate();
  if (start.x == x_to) throw UsageError("propagate: start and end coordinates coincide");
  if (!start.finite()) throw OverflowError("non-finite start state", start.x);

  if (is_real(start.x) && is_real(x_to)) {
    const auto points = real_breakpoints(start.x.real(), x_to.real(), spec.cutoff);
    WaveState state = start;
    for (std::size_t i = 1; i < points.size(); ++i) {
      const double a = points[i - 1];
      const double b = points[i];
      // Each piece lies entirely inside or outside the box; sample V at its midpoint.
      const bool inside = std::abs(0.5 * (a + b)) < spec.cutoff;
      Coefficient k;
      if (inside) {
        k = [&spec, energy](cplx x) { return uncut_potential(spec, x) - energy; };
      } else {
        k = [energy](cplx) { return cplx(-energy, 0.0); };
      }
      state = segment(state, cplx(b, 0.0), k);
    }
    state.x = x_to;
    return state;
  }

  const Coefficient k = [&spec, energy](cplx x) { return uncut_potential(spec, x) - energy; };
  return segment(start, x_to, k);
}

}  // namespace

WaveState integrate_linear(const WaveState& start, cplx x_to, const Coefficient& k, const StepControl& ctrl) {
  ctrl.validate();
  const Path path = make_path(start.x, x_to);
  const Vec2 end = dopri_segment(path, k, {start.value, start.derivative}, ctrl);
  return {x_to, end.value, end.derivative};
}

WaveState integrate_linear_fixed(const WaveState& start, cplx x_to, const Coefficient& k, double step) {
  if (!(step > 0.0)) throw UsageError("fixed step must be positive");
  const Path path = make_path(start.x, x_to);
  const Vec2 end = rk4_segment(path, k, {start.value, start.derivative}, step);
  return {x_to, end.value, end.derivative};
}

WaveState propagate(const WaveState& start, double energy, const PotentialSpec& spec, cplx x_to,
                    const StepControl& ctrl) {
  return propagate_impl(start, energy, spec, x_to, [&ctrl](const WaveState& s, cplx to, const Coefficient& k) {
    return integrate_linear(s, to, k, ctrl);
  });
}

WaveState propagate_fixed_step(const WaveState& start, double energy, const PotentialSpec& spec, cplx x_to,
                               double step) {
  return propagate_impl(start, energy, spec, x_to, [step](const WaveState& s, cplx to, const Coefficient& k) {
    return integrate_linear_fixed(s, to, k, step);
  });
}

cplx wronskian(const WaveState& a, const WaveState& b) {
  if (a.x != b.x) throw UsageError("wronskian: states sit at different coordinates");
  return a.value * b.derivative - a.derivative * b.value;
}

}  // namespace wedgescatter
