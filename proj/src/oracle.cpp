#include "vacbir/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "vacbir/errors.hpp"
#include "vacbir/parallel.hpp"
#include "vacbir/quadrature.hpp"
#include "vacbir/signal.hpp"
#include "vacbir/special.hpp"
#include "vacbir/units.hpp"

namespace vacbir::oracle {
namespace {

using units::Constants;
using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr int kPanels = 12;

}  // namespace

FullRate::FullRate(const Scenario& s) {
  beams::validate(s);
  frame_ = beams::to_ellipse_frame(s);
  delta0_ = s.probe.ellipse_angle;
  w_ = beams::effective_waist(frame_.pump);
  zr_ = frame_.pump.rayleigh_range();
  const double tau = frame_.pump.duration;
  const double T = frame_.probe.duration;
  s2_ = 1.0 + 0.5 * (tau / T) * (tau / T);

  const double w1 = frame_.probe.waist_1;
  const double w2 = frame_.probe.waist_2;
  const double w2e = w_ * w_;
  denom_ = w2e * w2e + 2.0 * w2e * (w1 * w1 + w2 * w2) + 4.0 * (w1 * w2) * (w1 * w2);

  const double m = Constants::electron_mass;
  const double m4 = m * m * m * m;
  const double e2 = Constants::elementary_charge_squared;
  const double probe_field = e2 * beams::peak_field_squared(beams::PulseRole::probe, frame_) /
                             (4.0 * m4);
  const double pump_field =
      e2 * beams::peak_field_squared(beams::PulseRole::pump, frame_) / (4.0 * m4);
  const double volume = w2e * zr_ * tau;
  prefactor_ = m4 / std::pow(2.0 * kPi, 3) * volume * volume * Constants::fine_structure *
               std::pow(kPi / 120.0, 2) * probe_field * pump_field * pump_field *
               (w1 * w2) * (w1 * w2) / denom_ / s2_;

  const double x0 = frame_.offsets.x0;
  const double y0 = frame_.offsets.y0;
  offset_exponent_ =
      -4.0 * ((w2e + 2.0 * w2 * w2) * x0 * x0 + (w2e + 2.0 * w1 * w1) * y0 * y0) / denom_;
  const double zt = frame_.offsets.z0 + frame_.offsets.t0;
  half_longitudinal_ = 0.5 * 8.0 / (T * T) * (4.0 * zr_ * zr_ - zt * zt) / s2_;
  dk_ = signal::spectrum_width(tau, T);
}

double FullRate::density(const FullRatePoint& pt) const {
  const double tau = frame_.pump.duration;
  const double T = frame_.probe.duration;
  const double omega = frame_.probe.photon_energy;
  const double w1 = frame_.probe.waist_1;
  const double w2 = frame_.probe.waist_2;
  const double k = pt.k;
  const double phi = pt.phi - delta0_;
  const double st = std::sin(pt.theta);
  const double half = std::sin(0.5 * pt.theta);
  const double one_minus_cos = 2.0 * half * half;
  const double sp = std::sin(phi);
  const double cp = std::cos(phi);

  const double beam = w_ * k * st;
  const double angular = -0.5 * beam * beam *
                         (w_ * w_ * (w1 * w1 * cp * cp + w2 * w2 * sp * sp) +
                          2.0 * (w1 * w2) * (w1 * w2)) /
                         denom_;
  const double detuning = (omega - k) / 4.0;
  const double spectral = -tau * tau / s2_ * detuning * detuning;

  const double s = std::sqrt(s2_);
  const double zt = frame_.offsets.z0 + frame_.offsets.t0;
  const double chi0 = 2.0 * zt / T;
  Complex sum = 0.0;
  for (const double l : {1.0, -1.0}) {
    const Complex a(half_longitudinal_ + l * zr_ * (k * one_minus_cos + 8.0 / s2_ * detuning),
                    -l * zr_ * 8.0 / T * chi0 / s2_);
    const Complex z((4.0 * zr_ / T + l * T * detuning + l * T * k / 8.0 * one_minus_cos * s2_) / s,
                    -l * chi0 / s);
    try {
      sum += special::exp_times_erfc(a, z);
    } catch (const OverflowError& e) {
      throw AccuracyError(std::string("d3n_full: l-term overflow outside the safe envelope: ") +
                              e.what(),
                          INFINITY, INFINITY);
    }
  }
  const double cos_plus = 2.0 - one_minus_cos;
  return prefactor_ * k * cos_plus * cos_plus * std::exp(angular + offset_exponent_ + spectral) *
         std::norm(sum);
}

double FullRate::measure_density(const FullRatePoint& pt) const {
  return pt.k * pt.k * std::sin(pt.theta) * density(pt);
}

double FullRate::k_min() const {
  return std::max(frame_.probe.photon_energy - 6.0 * dk_, 0.0);
}

double FullRate::k_max() const { return frame_.probe.photon_energy + 6.0 * dk_; }

double FullRate::theta_max() const {
  const double narrowest = std::min({frame_.probe.waist_1, frame_.probe.waist_2, w_});
  return std::min(12.0 / (frame_.probe.photon_energy * narrowest), 0.25 * kPi);
}

double d3n_full(const Scenario& s, const FullRatePoint& pt) { return FullRate(s).density(pt); }

double k_marginal(const FullRate& rate, double k, double tol) {
  const auto& probe = rate.frame_scenario().probe;
  const bool circular = probe.waist_1 == probe.waist_2;
  const auto theta_edges = quadrature::panel_edges(0.0, rate.theta_max(), 8);
  // phi enters through cos^2 and sin^2 in the ellipse frame only, so one
  // quadrant of the ellipse-frame azimuth suffices.
  const double phi0 = rate.ellipse_angle();
  const auto phi_integral = [&](double theta) {
    if (circular) return 2.0 * kPi * rate.measure_density({k, theta, 0.0});
    const auto est = quadrature::integrate(
        [&](double phi) { return rate.measure_density({k, theta, phi}); }, phi0,
        phi0 + 0.5 * kPi, 0.1 * tol, 12);
    return 4.0 * est.value;
  };
  const auto est = quadrature::integrate(phi_integral, theta_edges, tol, 14);
  return est.value;
}

Estimate integrate_full(const Scenario& s, double tol) {
  if (!(tol > 0.0 && tol < 1.0)) throw DomainError("integrate_full: tol must lie in (0, 1)");
  const FullRate rate(s);
  const double omega = rate.frame_scenario().probe.photon_energy;
  const double dk = rate.spectral_width();
  const auto edges = quadrature::panel_edges(rate.k_min(), rate.k_max(), kPanels,
                                             {omega, omega - dk, omega + dk});
  const double inner_tol = 0.05 * tol;

  std::vector<Estimate> parts(edges.size() - 1);
  parallel::for_each_index(parts.size(), [&](std::size_t i) {
    const double span[2] = {edges[i], edges[i + 1]};
    const auto est = quadrature::integrate(
        [&](double k) { return k_marginal(rate, k, inner_tol); }, std::span<const double>(span),
        0.5 * tol, 12);
    parts[i] = {est.value, est.error};
  });

  Estimate total;
  for (const auto& p : parts) {
    total.value += p.value;
    total.error += p.error;
  }
  total.error += inner_tol * std::abs(total.value);
  if (!std::isfinite(total.value) || total.error > tol * std::abs(total.value)) {
    throw AccuracyError("integrate_full: error target missed", total.value, total.error);
  }
  return total;
}

SpectralProfile k_marginal_profile(const Scenario& s, double tol) {
  const FullRate rate(s);
  const double omega = rate.frame_scenario().probe.photon_energy;
  const double dk = rate.spectral_width();
  const auto marginal = [&](double k) { return k_marginal(rate, k, tol); };

  SpectralProfile out;
  const auto peak = boost::math::tools::brent_find_minima(
      [&](double k) { return -marginal(k); }, omega - dk, omega + dk, 40);
  out.peak_k = peak.first;
  out.peak_value = -peak.second;
  if (!(out.peak_value > 0.0)) throw AccuracyError("k_marginal_profile: no peak", 0.0, 0.0);

  const double level = out.peak_value * std::exp(-2.0);
  const auto crossing = [&](double a, double b) {
    std::uintmax_t iters = 200;
    const auto bracket = boost::math::tools::toms748_solve(
        [&](double k) { return marginal(k) - level; }, a, b,
        boost::math::tools::eps_tolerance<double>(40), iters);
    return 0.5 * (bracket.first + bracket.second);
  };
  out.lower_k = crossing(std::max(out.peak_k - 6.0 * dk, rate.k_min()), out.peak_k);
  out.upper_k = crossing(out.peak_k, out.peak_k + 6.0 * dk);
  return out;
}

}  // namespace vacbir::oracle
