#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wedgescatter/errors.hpp"
#include "wedgescatter/scattering.hpp"

using namespace wedgescatter;

namespace {
constexpr cplx I{0.0, 1.0};
}

TEST_CASE("plane_wave_bc") {
  const WaveState a = plane_wave_bc(4.0, 1.0);
  CHECK(a.x == cplx(1.0));
  CHECK(a.value == cplx(1.0));
  CHECK(a.derivative == 2.0 * I);
  const WaveState b = plane_wave_bc(1.0, 5.0);
  CHECK(b.x == cplx(5.0));
  CHECK(b.derivative == I);
  const WaveState c = plane_wave_bc(0.76, 1.0);
  CHECK(c.derivative.imag() == doctest::Approx(0.8717797887081347).epsilon(1e-15));
  CHECK_THROWS_AS(plane_wave_bc(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(plane_wave_bc(-2.0, 1.0), DomainError);
}

TEST_CASE("wkb_bc") {
  const WaveState a = wkb_bc(make_potential(4, 5.0), 1.0);
  CHECK(a.x == cplx(5.0));
  CHECK(a.value == cplx(1.0));
  CHECK(a.derivative.real() == doctest::Approx(-125.0 / 626.0));
  CHECK(a.derivative.imag() == doctest::Approx(std::sqrt(626.0)));
  CHECK(a.derivative.real() == doctest::Approx(-0.19968).epsilon(1e-4));
  CHECK(a.derivative.imag() == doctest::Approx(25.01999).epsilon(1e-6));

  // Q(1) = 1, Q'(1) = 6 at E = 0 (right mover built directly; wkb_bc itself rejects E = 0)
  const WaveState b = wkb_right_mover(make_potential(6, 1.0), 0.0, 1.0);
  CHECK(b.derivative.real() == doctest::Approx(-1.5));
  CHECK(b.derivative.imag() == doctest::Approx(1.0));
  CHECK_THROWS_AS(wkb_bc(make_potential(6, 1.0), 0.0), DomainError);

  const WaveState c = wkb_bc(make_potential(8, 5.0), 1.36);
  const double q = 390626.36;
  CHECK(c.derivative.real() == doctest::Approx(-625000.0 / (4.0 * q)));
  CHECK(c.derivative.imag() == doctest::Approx(std::sqrt(q)));
}

TEST_CASE("rt_amplitudes decomposition") {
  const double e = 2.0;
  const double cutoff = 1.5;
  const double k = std::sqrt(e);
  const cplx phase = std::exp(-2.0 * I * cutoff * k);
  const auto free = rt_amplitudes({-cutoff, phase, I * k * phase}, e, cutoff);
  CHECK(std::abs(free.reflected) < 1e-15);
  CHECK(std::abs(free.incident) == doctest::Approx(1.0));

  const auto simple = rt_amplitudes({-1.0, 1.0, 0.0}, 1.0, 1.0);
  CHECK(std::abs(simple.reflected) == doctest::Approx(0.5));
  CHECK(std::abs(simple.incident) == doctest::Approx(0.5));

  CHECK_THROWS_AS(rt_amplitudes({1.0, 1.0, 0.0}, 1.0, 1.0), UsageError);
}

TEST_CASE("dminus_amplitudes separates WKB right and left movers") {
  const auto spec = make_potential(4, 5.0);
  const double e = 1.475;
  const double q = q_eval(spec, e, -5.0);
  const double shift = q_prime(spec, -5.0) / (4.0 * q);  // Q'(-L) = -Q'(L)

  const auto right = dminus_amplitudes({-5.0, 1.0, I * std::sqrt(q) - shift}, spec, e);
  CHECK(std::abs(right.reflected) == 0.0);
  CHECK(std::abs(right.incident) == doctest::Approx(1.0));

  const auto left = dminus_amplitudes({-5.0, 1.0, -I * std::sqrt(q) - shift}, spec, e);
  CHECK(std::abs(left.reflected) == doctest::Approx(1.0));
  CHECK(std::abs(left.incident) < 1e-15);

  // The right mover built at -L is pure D+.
  const WaveState at_left = wkb_right_mover(spec, e, -5.0);
  CHECK(std::abs(dminus_amplitudes(at_left, spec, e).reflected) == 0.0);
}

TEST_CASE("property: amplitudes reconstruct the endpoint") {
  auto g = oracle::rng(7);
  const auto spec = make_potential(6, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double e = 0.5 + i * 0.4;
    const WaveState end{-2.0, oracle::random_complex(g, 3.0), oracle::random_complex(g, 30.0)};
    const auto pw = rt_amplitudes(end, e, 2.0);
    const double k = std::sqrt(e);
    // y = A + B, y' = i k (A - B)
    CHECK(std::abs(pw.incident + pw.reflected - end.value) < 1e-13 * end.norm());
    CHECK(std::abs(I * k * (pw.incident - pw.reflected) - end.derivative) < 1e-13 * end.norm());

    const auto wkb = dminus_amplitudes(end, spec, e);
    const double q = q_eval(spec, e, -2.0);
    const double shift = q_prime(spec, -2.0) / (4.0 * q);
    const cplx dphi = wkb.reflected * (-I * std::sqrt(q) - shift) + wkb.incident * (I * std::sqrt(q) - shift);
    CHECK(std::abs(wkb.incident + wkb.reflected - end.value) < 1e-13 * end.norm());
    CHECK(std::abs(dphi - end.derivative) < 1e-12 * end.norm());
  }
}

TEST_CASE("scattering_run reproduces known plane-wave resonances") {
  CHECK(scattering_run(make_potential(4, 1.0), 0.7611, BoundaryKind::PlaneWave).magnitude < 1e-3);
  CHECK(scattering_run(make_potential(4, 1.0), 7.552, BoundaryKind::PlaneWave).magnitude < 1e-3);
  CHECK(scattering_run(make_potential(4, 2.0), 3.0222, BoundaryKind::PlaneWave).magnitude < 1e-3);
  // between resonances the ratio is orders of magnitude larger
  CHECK(scattering_run(make_potential(4, 1.0), 4.0, BoundaryKind::PlaneWave).magnitude > 0.05);
}

TEST_CASE("scattering_run WKB zeros near the bound states") {
  CHECK(scattering_run(make_potential(4, 5.0), 1.4773, BoundaryKind::Wkb).magnitude < 1e-4);
  CHECK(scattering_run(make_potential(6, 5.0), 5.2625, BoundaryKind::Wkb).magnitude < 1e-4);
  CHECK(scattering_run(make_potential(4, 5.0), 3.5, BoundaryKind::Wkb).magnitude > 1e-2);
}

TEST_CASE("property: plane-wave unitarity") {
  for (double cutoff : {1.0, 2.0, 5.0}) {
    for (double e = 0.3; e < 28.0; e += 0.37) {
      const auto p = scattering_run(make_potential(4, cutoff), e, BoundaryKind::PlaneWave);
      CAPTURE(cutoff);
      CAPTURE(e);
      CHECK(std::abs(p.flux_sum() - 1.0) < 1e-8);
      CHECK(p.magnitude == p.reflected_magnitude);
    }
  }
}

TEST_CASE("free particle is reflectionless") {
  PotentialSpec spec = make_potential(4, 3.0);
  spec.depth = 0.0;
  for (double e = 0.5; e <= 30.0; e += 0.5) {
    CHECK(scattering_run(spec, e, BoundaryKind::PlaneWave).magnitude < 1e-9);
  }
}

TEST_CASE("boundary kind parsing") {
  CHECK(parse_boundary_kind("plane") == BoundaryKind::PlaneWave);
  CHECK(parse_boundary_kind("wkb") == BoundaryKind::Wkb);
  CHECK(to_string(BoundaryKind::Wkb) == "wkb");
  CHECK_THROWS_AS(parse_boundary_kind("WKB"), UsageError);
  CHECK_THROWS_AS(scattering_run(make_potential(4, 1.0), -1.0, BoundaryKind::Wkb), DomainError);
}
