#include <doctest.h>

#include <cmath>
#include <random>

#include "properties.hpp"
#include "scenarios.hpp"
#include "vacbir/errors.hpp"
#include "vacbir/signal.hpp"

using namespace vacbir;
using namespace vacbir::testing;
using signal::AngularPoint;
using signal::SignalModel;

namespace {

void check_property(const PropertyResult& r) {
  CAPTURE(r.detail);
  CAPTURE(r.worst);
  CAPTURE(r.cases);
  CHECK(r.ok);
}

// Periodic trapezoid rule, spectrally accurate for smooth periodic integrands.
template <class F>
double periodic_integral(F&& f, int n = 512) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += f(2.0 * kPi * i / n);
  return sum * 2.0 * kPi / n;
}

beams::Scenario with_purity(beams::Scenario s, double factor, double phi = 0.0) {
  s.purity = SignalModel(s).forward_ratio(phi) * factor;
  return s;
}

}  // namespace

TEST_SUITE("signal") {

TEST_CASE("angular point round trip") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1e-4, 1e-4);
  for (int i = 0; i < 1000; ++i) {
    const double x = d(rng), y = d(rng);
    const auto p = AngularPoint::from_cartesian(x, y);
    CHECK(p.phi >= 0.0);
    CHECK(p.phi < 2.0 * kPi);
    CHECK(p.x() == doctest::Approx(x).epsilon(1e-14));
    CHECK(p.y() == doctest::Approx(y).epsilon(1e-14));
  }
  CHECK(AngularPoint::from_cartesian(0.0, 0.0).theta == 0.0);
}

TEST_CASE("forward count for the aligned standard collision") {
  const auto s = standard();
  CHECK(signal::n_perp_total(s) / s.probe.photon_count == doctest::Approx(1.2e-11).epsilon(0.05));
  auto big = standard(3.0, 3.0);
  CHECK(signal::n_perp_total(big) / big.probe.photon_count == doctest::Approx(2.0e-12).epsilon(0.05));
}

TEST_CASE("polar and Cartesian exponents coincide") {
  ScenarioGenerator gen(21);
  for (int i = 0; i < 30; ++i) {
    auto s = gen.next();
    s.probe.ellipse_angle = 0.0;
    const SignalModel m(s);
    const double w = beams::effective_waist(s.pump);
    const double w1 = s.probe.waist_1, w2 = s.probe.waist_2;
    const double u1 = w1 / w, u2 = w2 / w;
    const double dn = 1.0 + 2.0 * (u1 + u2) * (u1 + u2);
    const double om = s.probe.photon_energy;
    const double theta = m.signal_divergence(0.0) * gen.uniform(0.0, 1.5);
    const double phi = gen.uniform(0.0, 2.0 * kPi);
    const double X = theta * std::cos(phi), Y = theta * std::sin(phi);
    const double cart = std::exp(-0.5 * om * om *
                                 (w1 * w1 * (1.0 + 2.0 * u2 * u2) * X * X +
                                  w2 * w2 * (1.0 + 2.0 * u1 * u1) * Y * Y) / dn);
    CHECK(m.d2n_perp({theta, phi}) / m.d2n_perp({0.0, phi}) == doctest::Approx(cart).epsilon(1e-12));
  }
}

TEST_CASE("Gaussian integral of the angular density") {
  check_property(gaussian_integral_consistency(20, 101));
}

TEST_CASE("offset factorization") { check_property(offset_factorization(50, 102)); }

TEST_CASE("azimuthal symmetries in the ellipse frame") {
  ScenarioGenerator gen(22);
  for (int i = 0; i < 20; ++i) {
    auto s = gen.next();
    s.probe.ellipse_angle = 0.0;
    s = with_purity(s, 50.0);
    s.purity = std::min(*s.purity, 0.5);
    const SignalModel m(s);
    const double phi = gen.uniform(0.0, 2.0 * kPi);
    const double theta = m.signal_divergence(phi) * 0.7;
    for (const double other : {-phi, kPi - phi}) {
      CHECK(m.d2n_perp({theta, other}) == doctest::Approx(m.d2n_perp({theta, phi})).epsilon(1e-13));
      CHECK(m.probe_divergence(other) == doctest::Approx(m.probe_divergence(phi)).epsilon(1e-13));
      CHECK(m.signal_divergence(other) == doctest::Approx(m.signal_divergence(phi)).epsilon(1e-13));
      CHECK(m.dn_perp_dphi(other) == doctest::Approx(m.dn_perp_dphi(phi)).epsilon(1e-13));
      CHECK(m.theta_equal(other) == doctest::Approx(m.theta_equal(phi)).epsilon(1e-12));
      CHECK(m.dn_perp_gt_dphi(other) == doctest::Approx(m.dn_perp_gt_dphi(phi)).epsilon(1e-11));
    }
  }
}

TEST_CASE("lab azimuths follow the ellipse") {
  auto s = standard(2.0, 0.5);
  const SignalModel aligned(s);
  s.probe.ellipse_angle = 0.4;
  const SignalModel rotated(s);
  for (double phi : {0.0, 0.3, 1.1, 2.5}) {
    CHECK(rotated.d2n_perp({2e-5, phi + 0.4}) == doctest::Approx(aligned.d2n_perp({2e-5, phi})).epsilon(1e-13));
    CHECK(rotated.signal_divergence(phi + 0.4) == doctest::Approx(aligned.signal_divergence(phi)).epsilon(1e-13));
  }
}

TEST_CASE("waist exchange symmetry") {
  ScenarioGenerator gen(23);
  for (int i = 0; i < 30; ++i) {
    auto s = gen.next();
    s.probe.ellipse_angle = 0.0;
    auto t = s;
    std::swap(t.probe.waist_1, t.probe.waist_2);
    std::swap(t.offsets.x0, t.offsets.y0);
    CHECK(signal::n_perp_total(t) == doctest::Approx(signal::n_perp_total(s)).epsilon(1e-13));
  }
}

TEST_CASE("monotonicity") {
  auto s = standard(0.7, 1.6);
  double last = INFINITY;
  for (int i = 0; i <= 20; ++i) {
    s.offsets.x0 = um(0.1 * i);
    const double v = signal::n_perp_total(s);
    CHECK(v < last);
    last = v;
  }
  s.offsets.x0 = 0.0;
  last = INFINITY;
  for (int i = 0; i <= 20; ++i) {
    s.offsets.y0 = -um(0.1 * i);
    const double v = signal::n_perp_total(s);
    CHECK(v < last);
    last = v;
  }
  const SignalModel m(standard(0.4, 2.0));
  for (double phi : {0.0, 0.9, 2.0}) {
    last = INFINITY;
    for (int i = 0; i <= 30; ++i) {
      const double v = m.d2n_perp({i * 5e-6, phi});
      CHECK(v < last);
      last = v;
    }
  }
}

TEST_CASE("divergences") {
  const auto s = standard();
  const SignalModel m(s);
  CHECK(m.probe_divergence(0.0) == doctest::Approx(30.6e-6).epsilon(2e-3));
  CHECK(m.probe_divergence(1.0) == doctest::Approx(m.probe_divergence(0.0)).epsilon(1e-14));
  const double fwd = m.probe_d2n({0.0, 0.3});
  CHECK(fwd == doctest::Approx(s.probe.photon_count / (2.0 * kPi) * 12914.0 * 12914.0 * s.probe.waist_1 *
                               s.probe.waist_2).epsilon(1e-13));
  CHECK(m.probe_d2n({m.probe_divergence(0.3), 0.3}) == doctest::Approx(fwd * std::exp(-2.0)).epsilon(1e-13));

  // w1 = w2 = w: theta_perp = sqrt(3) theta.
  auto e = standard();
  e.probe.waist_1 = e.probe.waist_2 = beams::effective_waist(e.pump);
  const SignalModel me(e);
  CHECK(me.signal_divergence(0.7) / me.probe_divergence(0.7) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));

  auto tiny = standard();
  tiny.probe.waist_1 = tiny.probe.waist_2 = 1e-3 * beams::effective_waist(tiny.pump);
  const SignalModel mt(tiny);
  CHECK(std::abs(mt.signal_divergence(0.0) / mt.probe_divergence(0.0) - 1.0) < 1e-5);

  check_property(signal_wider_than_probe(40, 103));
}

TEST_CASE("numerical 1/e^2 radius matches theta_perp") {
  const SignalModel m(standard(2.0, 0.5));
  const double peak = m.d2n_perp({0.0, 0.0});
  double lo = 0.0, hi = 10.0 * m.signal_divergence(0.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (m.d2n_perp({mid, 0.0}) > peak * std::exp(-2.0) ? lo : hi) = mid;
  }
  CHECK(lo == doctest::Approx(m.signal_divergence(0.0)).epsilon(0.01));
}

TEST_CASE("point-probe limits") {
  auto s = standard();
  const SignalModel m(s);
  CHECK(m.n_perp_point() == doctest::Approx(m.n_perp_point_nooffset()).epsilon(1e-14));
  CHECK(m.n_perp_point() >= signal::n_perp_total(standard(0.1, 0.1)));
  CHECK(signal::n_perp_total(standard(0.1, 0.1)) / 1e12 >= 2.9e-11 * 0.95);

  const double w = beams::effective_waist(s.pump);
  auto off = s;
  off.offsets.x0 = w / 2.0;
  CHECK(signal::n_perp_point(off) == doctest::Approx(m.n_perp_point() * std::exp(-1.0)).epsilon(1e-13));

  auto narrow = off;
  narrow.probe.waist_1 = narrow.probe.waist_2 = 1e-5 * w;
  CHECK(signal::n_perp_total(narrow) == doctest::Approx(signal::n_perp_point(narrow)).epsilon(1e-8));

  auto shifted = s;
  shifted.offsets.z0 = um(3.0);
  CHECK(signal::n_perp_point_nooffset(shifted) == doctest::Approx(m.n_perp_point()).epsilon(1e-14));
  CHECK(signal::n_perp_point(shifted) < m.n_perp_point());
}

TEST_CASE("theta_equal") {
  check_property(theta_equal_round_trip(60, 104));

  auto s = standard();
  s.purity = 5.7e-10;
  const SignalModel m(s);
  const double t = m.theta_equal(0.0);
  CHECK(t > 0.0);
  CHECK(std::isfinite(t));
  CHECK(m.flip_ratio({t, 0.0}) == doctest::Approx(5.7e-10).epsilon(1e-9));

  const auto at_forward = with_purity(standard(0.8, 1.3), 1.0, 0.4);
  CHECK(SignalModel(at_forward).theta_equal(0.4) == 0.0);

  // theta_equal^2 falls linearly in x0^2.
  auto base = with_purity(standard(0.8, 1.3), 1e3);
  const double a = um(0.2);
  double t2[3];
  for (int k = 0; k < 3; ++k) {
    base.offsets.x0 = a * std::sqrt(static_cast<double>(k));
    t2[k] = SignalModel(base).theta_equal_squared(0.5);
  }
  CHECK(t2[1] > t2[0]);
  CHECK(t2[2] - t2[0] == doctest::Approx(2.0 * (t2[1] - t2[0])).epsilon(1e-9));

  auto low = standard();
  low.purity = 1e-13;
  CHECK_THROWS_AS(signal::theta_equal(low, 0.0), DomainError);
  CHECK_THROWS_AS(signal::theta_equal(standard(), 0.0), PreconditionError);
}

TEST_CASE("azimuthal densities") {
  const SignalModel circ(standard());
  CHECK(circ.dn_perp_dphi(0.0) == doctest::Approx(circ.dn_perp_dphi(2.1)).epsilon(1e-14));

  ScenarioGenerator gen(24);
  for (int i = 0; i < 20; ++i) {
    const SignalModel m(gen.next());
    const double total = periodic_integral([&](double phi) { return m.dn_perp_dphi(phi); });
    CHECK(total == doctest::Approx(m.n_perp_total()).epsilon(1e-10));
  }
}

TEST_CASE("discernible density") {
  const auto at_forward = with_purity(standard(0.6, 1.8), 1.0, 0.9);
  const SignalModel f(at_forward);
  CHECK(f.dn_perp_gt_dphi(0.9) == doctest::Approx(f.dn_perp_dphi(0.9)).epsilon(1e-12));

  ScenarioGenerator gen(25);
  for (int i = 0; i < 20; ++i) {
    auto s = gen.next();
    const double phi = gen.uniform(0.0, 2.0 * kPi);
    s = with_purity(s, std::pow(10.0, gen.uniform(0.3, 3.0)), phi);
    const SignalModel m(s);
    CHECK(m.dn_perp_gt_dphi_numeric(phi) == doctest::Approx(m.dn_perp_gt_dphi(phi)).epsilon(5e-3));
    CHECK(m.dn_perp_gt_dphi(phi) <= m.dn_perp_dphi(phi));
  }
}

TEST_CASE("circular closed form") {
  check_property(circular_discernible_identity(40, 105));

  auto s = standard();
  s.purity = 5.7e-10;
  const SignalModel m(s);
  CHECK(m.n_perp_gt() == doctest::Approx(m.n_perp_gt_circular()).epsilon(1e-8));
  CHECK(m.n_perp_gt_circular() < m.n_perp_total());

  auto e = standard(1.0, 1.2);
  e.purity = 5.7e-10;
  CHECK_THROWS_AS(signal::n_perp_gt_circular(e), PreconditionError);
}

TEST_CASE("background window") {
  auto s = standard();
  s.purity = 5.7e-10;
  const SignalModel plain(s);

  s.background = beams::Background{1e-12, 0.1};
  const SignalModel near(s);
  const auto [ti, tii] = near.background_crossings(0.0);
  CHECK(ti == doctest::Approx(plain.theta_equal(0.0)).epsilon(1e-6));
  CHECK(tii > 2.0 * ti);
  // The upper edge recedes as the halo fades.
  s.background = beams::Background{1e-16, 0.1};
  CHECK(SignalModel(s).background_crossings(0.0).second > tii);
  s.background = beams::Background{1e-12, 0.1};
  CHECK(near.n_perp_gt_background() == doctest::Approx(plain.n_perp_gt_circular()).epsilon(0.01));

  s.background = beams::Background{1e-6, 0.1};
  const SignalModel bg(s);
  const auto [a, b] = bg.background_crossings(0.0);
  CHECK(a < b);
  // The halo only lowers the in-beam density by 1/(1 + b/eps^2).
  CHECK(a <= plain.theta_equal(0.0));
  CHECK(bg.n_perp_gt_background() <= plain.n_perp_gt_circular());

  auto el = standard(0.5, 2.0);
  el.purity = 1e-9;
  el.background = beams::Background{1e-9, 0.1};
  const SignalModel me(el);
  for (double phi : {0.0, 0.7, 1.5}) {
    const auto [lo, hi] = me.background_crossings(phi);
    CHECK(lo < hi);
  }
  auto el_plain = el;
  el_plain.background.reset();
  CHECK(me.n_perp_gt_background() <= SignalModel(el_plain).n_perp_gt());

  auto closed = standard();
  closed.purity = 0.5;
  closed.background = beams::Background{1e-6, 0.1};
  try {
    (void)signal::background_crossings(closed, 0.0);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("no discernible window") != std::string::npos);
  }
}

TEST_CASE("spectral width") {
  CHECK(signal::spectrum_width(fs(30.0), fs(30.0)) == doctest::Approx(0.30).epsilon(0.03));
  CHECK(signal::spectrum_width(fs(30.0), fs(3e9)) == doctest::Approx(8.0 * std::sqrt(2.0) / fs(30.0)).epsilon(1e-12));
  CHECK(signal::spectrum_width(fs(15.0), fs(25.0)) ==
        doctest::Approx(2.0 * signal::spectrum_width(fs(30.0), fs(50.0))).epsilon(1e-14));
}

TEST_CASE("scaling exponents") {
  auto e = standard();
  e.probe.waist_1 = e.probe.waist_2 = beams::effective_waist(e.pump);
  const auto [b1, b2] = signal::scaling_exponents(e);
  CHECK(b1 == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(b2 == doctest::Approx(3.0).epsilon(1e-14));

  const auto s = standard(0.4, 2.2);
  auto t = s;
  std::swap(t.probe.waist_1, t.probe.waist_2);
  const auto p = signal::scaling_exponents(s);
  const auto q = signal::scaling_exponents(t);
  CHECK(p.first == doctest::Approx(q.second).epsilon(1e-14));
  CHECK(p.second == doctest::Approx(q.first).epsilon(1e-14));

  ScenarioGenerator gen(26);
  for (int i = 0; i < 30; ++i) {
    const auto [x, y] = signal::scaling_exponents(gen.next());
    CHECK(x > 2.0);
    CHECK(y > 2.0);
  }

  // Log-slope of the discernible density in omega at phi = 0.
  auto f = standard(0.8, 1.5);
  f.purity = 1e-9;
  const double h = 1e-4;
  auto lo = f, hi = f;
  lo.probe.photon_energy *= std::exp(-h);
  hi.probe.photon_energy *= std::exp(h);
  const double slope = (std::log(signal::dn_perp_gt_dphi(hi, 0.0)) -
                        std::log(signal::dn_perp_gt_dphi(lo, 0.0))) / (2.0 * h);
  CHECK(slope == doctest::Approx(signal::scaling_exponents(f).first).epsilon(0.01));
}

TEST_CASE("omega scaling") { check_property(omega_scaling(40, 106)); }

TEST_CASE("conventional estimate") {
  const auto s = standard();
  const SignalModel m(s);
  const double zr_tau = s.pump.rayleigh_range() / s.pump.duration;
  CHECK(m.heinzl_ratio() ==
        doctest::Approx(512.0 * std::sqrt(kPi / 3.0) * zr_tau * zr_tau / m.f_value()).epsilon(1e-12));
  CHECK(m.heinzl_ratio() == doctest::Approx(m.heinzl_estimate() / m.n_perp_point_nooffset()).epsilon(1e-14));
  CHECK(m.heinzl_ratio_equal_duration_limit() == doctest::Approx(4.0 * std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("report") {
  auto s = standard(0.5, 2.0);
  s.purity = 1e-9;
  const auto r = signal::make_report(s);
  CHECK(r.n_perp == doctest::Approx(signal::n_perp_total(s)));
  CHECK(r.n_perp_over_n == doctest::Approx(r.n_perp / s.probe.photon_count));
  CHECK(r.divergence_by_phi.size() == 7);
  REQUIRE(r.discernible_n_perp);
  CHECK(*r.discernible_n_perp <= r.n_perp);
  CHECK(*r.discernible_n_perp >= 0.0);
  CHECK(!signal::make_report(standard()).discernible_n_perp);
}

}  // TEST_SUITE
