#include <doctest.h>

#include <cmath>

#include "scenarios.hpp"
#include "vacbir/errors.hpp"
#include "vacbir/oracle.hpp"
#include "vacbir/quadrature.hpp"
#include "vacbir/signal.hpp"

using namespace vacbir;
using namespace vacbir::testing;
using oracle::FullRate;

namespace {

// The full rate carries the waist denominator (1+2u1^2)(1+2u2^2) in its
// prefactor, angular and offset exponents, where the reduced model has
// 1+2(u1+u2)^2. Both are kept as written; these are the factors that map one
// onto the other.
struct Denominators {
  double full = 0.0;
  double reduced = 0.0;
  double offset = 0.0;  // (1+2u2^2)(x0'/w)^2 + (1+2u1^2)(y0'/w)^2, ellipse frame
  double u1 = 0.0, u2 = 0.0, w = 0.0;

  // Full-rate offset Gaussian over the reduced one.
  double offset_ratio() const { return std::exp(-4.0 * offset * (1.0 / full - 1.0 / reduced)); }
};

Denominators denominators(const beams::Scenario& s) {
  Denominators d;
  d.w = beams::effective_waist(s.pump);
  d.u1 = s.probe.waist_1 / d.w;
  d.u2 = s.probe.waist_2 / d.w;
  const double c = std::cos(s.probe.ellipse_angle);
  const double sn = std::sin(s.probe.ellipse_angle);
  const double x = (s.offsets.x0 * c - s.offsets.y0 * sn) / d.w;
  const double y = (s.offsets.x0 * sn + s.offsets.y0 * c) / d.w;
  d.full = (1.0 + 2.0 * d.u1 * d.u1) * (1.0 + 2.0 * d.u2 * d.u2);
  d.reduced = 1.0 + 2.0 * (d.u1 + d.u2) * (d.u1 + d.u2);
  d.offset = (1.0 + 2.0 * d.u2 * d.u2) * x * x + (1.0 + 2.0 * d.u1 * d.u1) * y * y;
  return d;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("forward peak") {
  const auto s = standard();
  const FullRate rate(s);
  const double omega = s.probe.photon_energy;
  const double dk = rate.spectral_width();
  const double peak = rate.density({omega, 0.0, 0.0});
  CHECK(peak > 0.0);
  CHECK(rate.density({omega + dk, 0.0, 0.0}) < peak);
  CHECK(rate.density({omega - dk, 0.0, 0.0}) < peak);
  const auto d = denominators(s);
  const double div = signal::signal_divergence(s, 0.0);
  CHECK(rate.density({omega, div, 0.0}) ==
        doctest::Approx(peak * std::exp(-2.0 * d.reduced / d.full)).epsilon(0.01));
  // 1/e^2 radius of the full rate's own angular exponent.
  const double p = d.u1 * d.u2;
  const double own = std::sqrt(4.0 * d.full / (omega * omega * d.w * d.w * (d.u1 * d.u1 + 2.0 * p * p)));
  CHECK(rate.density({omega, own, 0.0}) == doctest::Approx(peak * std::exp(-2.0)).epsilon(0.01));
  CHECK(rate.measure_density({omega, 1e-5, 0.3}) ==
        doctest::Approx(omega * omega * std::sin(1e-5) * rate.density({omega, 1e-5, 0.3})).epsilon(1e-14));
}

TEST_CASE("energy integral at small angle reproduces the reduced angular density") {
  auto s = standard(0.6, 1.7);
  s.offsets.x0 = um(0.2);
  s.offsets.z0 = um(1.0);
  s.probe.ellipse_angle = 0.5;
  const FullRate rate(s);
  const signal::SignalModel m(s);
  const auto d = denominators(s);
  const double scale = d.reduced / d.full * d.offset_ratio();
  for (double phi : {0.0, 0.8, 2.0}) {
    const double theta = 1e-7;
    const auto edges = quadrature::panel_edges(rate.k_min(), rate.k_max(), 24);
    const auto est = quadrature::integrate(
        [&](double k) { return rate.measure_density({k, theta, phi}) / theta; }, edges, 1e-10);
    CHECK(est.value == doctest::Approx(scale * m.d2n_perp({theta, phi})).epsilon(1e-3));
  }
}

TEST_CASE("conjugation symmetry in the longitudinal offset") {
  auto s = standard(0.8, 1.4);
  s.offsets.z0 = um(1.5);
  s.offsets.t0 = fs(4.0);
  auto t = s;
  t.offsets.z0 = -s.offsets.z0;
  t.offsets.t0 = -s.offsets.t0;
  const FullRate a(s), b(t);
  const double omega = s.probe.photon_energy;
  for (double dk : {-0.2, 0.0, 0.15}) {
    for (double theta : {0.0, 2e-5, 6e-5}) {
      const oracle::FullRatePoint p{omega + dk, theta, 0.9};
      CHECK(a.density(p) == doctest::Approx(b.density(p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("spectral peak sits at the probe energy") {
  const double rows[7][2] = {{0.1, 0.1}, {1.0 / 3, 1.0 / 3}, {1, 1}, {3, 3}, {3, 0.1}, {0.1, 3}, {3, 1}};
  for (const auto& r : rows) {
    const auto s = standard(r[0], r[1]);
    const auto p = oracle::k_marginal_profile(s);
    const double dk = signal::spectrum_width(s.pump.duration, s.probe.duration);
    CAPTURE(r[0]);
    CAPTURE(r[1]);
    CHECK(std::abs(p.peak_k - s.probe.photon_energy) < dk / 10.0);
    CHECK(p.lower_k < p.peak_k);
    CHECK(p.upper_k > p.peak_k);
  }
}

TEST_CASE("total count, scaling and reproducibility") {
  const auto s = standard();
  const auto full = oracle::integrate_full(s, 1e-3);
  CHECK(full.error <= 1e-3 * full.value);
  CHECK(full.value == doctest::Approx(signal::n_perp_total(s)).epsilon(0.05));

  auto half = s;
  half.pump.pulse_energy *= 0.5;
  CHECK(oracle::integrate_full(half, 1e-3).value == doctest::Approx(0.25 * full.value).epsilon(1e-12));

  auto moved = s;
  moved.offsets.x0 = um(0.4);
  moved.offsets.z0 = um(2.0);
  (void)oracle::integrate_full(moved, 1e-3);
  const auto again = oracle::integrate_full(s, 1e-3);
  CHECK(again.value == full.value);
  CHECK(again.error == full.error);

  CHECK_THROWS_AS(oracle::integrate_full(s, 0.0), DomainError);
}

TEST_CASE("rotated elliptical probe with offsets") {
  auto s = standard(0.5, 2.0);
  s.probe.ellipse_angle = 0.6;
  s.offsets.x0 = um(0.3);
  s.offsets.y0 = um(-0.2);
  s.offsets.z0 = um(1.0);
  s.offsets.t0 = fs(2.0);
  const auto full = oracle::integrate_full(s, 1e-3);
  CHECK(full.value ==
        doctest::Approx(signal::n_perp_total(s) * denominators(s).offset_ratio()).epsilon(0.01));

  // Without offsets the total does not depend on the ellipse orientation.
  auto centred = standard(0.5, 2.0);
  const double upright = oracle::integrate_full(centred, 1e-3).value;
  centred.probe.ellipse_angle = 0.6;
  CHECK(oracle::integrate_full(centred, 1e-3).value == doctest::Approx(upright).epsilon(2e-3));

  auto mirrored = s;
  mirrored.probe.ellipse_angle = -0.6;
  // Mirroring the ellipse without mirroring the offset is a different collision.
  CHECK(signal::n_perp_total(mirrored) != doctest::Approx(signal::n_perp_total(s)).epsilon(1e-3));
}

TEST_CASE("budget doubling") {
  const auto s = standard(1.0 / 3, 1.0 / 3);
  const auto coarse = oracle::integrate_full(s, 2e-3);
  const auto fine = oracle::integrate_full(s, 1e-3);
  CHECK(std::abs(coarse.value - fine.value) <= coarse.error);
}

}  // TEST_SUITE
