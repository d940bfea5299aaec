#include "vacbir/signal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "vacbir/errors.hpp"
#include "vacbir/quadrature.hpp"
#include "vacbir/units.hpp"

namespace vacbir::signal {
namespace {

using units::Constants;

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

AngularPoint AngularPoint::from_cartesian(double x, double y) {
  double phi = std::atan2(y, x);
  if (phi < 0.0) phi += 2.0 * kPi;
  return {std::hypot(x, y), phi};
}

double AngularPoint::x() const { return theta * std::cos(phi); }
double AngularPoint::y() const { return theta * std::sin(phi); }

double ReducedWaists::q(double phi) const {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return u1 * u1 * c * c + u2 * u2 * s * s;
}

ReducedWaists reduce(const Scenario& s) {
  ReducedWaists r;
  r.w = beams::effective_waist(s.pump);
  r.u1 = s.probe.waist_1 / r.w;
  r.u2 = s.probe.waist_2 / r.w;
  r.sum = r.u1 + r.u2;
  r.product = r.u1 * r.u2;
  r.denom = 1.0 + 2.0 * r.sum * r.sum;
  return r;
}

SignalModel::SignalModel(const Scenario& s, double f_tol) : f_tol_(f_tol) {
  beams::validate(s);
  frame_ = beams::to_ellipse_frame(s);
  delta0_ = s.probe.ellipse_angle;
  red_ = reduce(frame_);
  args_ = beams::f_args(frame_);
  f_ = ffactor::f(args_, f_tol_);

  const double m = Constants::electron_mass;
  const double a2 = Constants::fine_structure * Constants::fine_structure;
  const double energy = frame_.pump.pulse_energy * frame_.probe.photon_energy / (m * m);
  const double compton = 1.0 / (m * frame_.pump.waist);  // lambda_C/w0 in natural units
  base_ = 4.0 * a2 * a2 / (25.0 * std::pow(3.0 * kPi, 1.5)) * energy * energy *
          std::pow(compton, 4);
}

double SignalModel::offset_factor() const {
  const auto& r = red_;
  const double x = frame_.offsets.x0 / r.w;
  const double y = frame_.offsets.y0 / r.w;
  const double o = (1.0 + 2.0 * r.u2 * r.u2) * x * x + (1.0 + 2.0 * r.u1 * r.u1) * y * y;
  return std::exp(-4.0 * o / r.denom);
}

double SignalModel::angular_coefficient(double phi) const {
  const auto& r = red_;
  const double ow = frame_.probe.photon_energy * r.w;
  return 0.5 * ow * ow * (r.q(phi) + 2.0 * r.product * r.product) / r.denom;
}

double SignalModel::d2n_perp(const AngularPoint& pt) const {
  const double phi = frame_phi(pt.phi);
  const auto& r = red_;
  const double ow = frame_.probe.photon_energy * r.w;
  return frame_.probe.photon_count / (2.0 * kPi) * base_ * ow * ow * r.product / r.denom *
         std::exp(-angular_coefficient(phi) * pt.theta * pt.theta) * offset_factor() * f_;
}

double SignalModel::n_perp_total() const {
  const auto& r = red_;
  return frame_.probe.photon_count * base_ /
         std::sqrt((1.0 + 2.0 * r.u1 * r.u1) * (1.0 + 2.0 * r.u2 * r.u2)) * offset_factor() * f_;
}

double SignalModel::n_perp_point() const {
  const double x = frame_.offsets.x0 / red_.w;
  const double y = frame_.offsets.y0 / red_.w;
  return frame_.probe.photon_count * base_ * std::exp(-4.0 * (x * x + y * y)) * f_;
}

double SignalModel::n_perp_point_nooffset() const {
  if (!f_nooffset_) {
    ffactor::FArgs a = args_;
    a.chi0 = 0.0;
    f_nooffset_ = a.chi0 == args_.chi0 ? f_ : ffactor::f(a, f_tol_);
  }
  return frame_.probe.photon_count * base_ * *f_nooffset_;
}

double SignalModel::probe_d2n(const AngularPoint& pt) const {
  return signal::probe_d2n(frame_.probe, {pt.theta, frame_phi(pt.phi)});
}

double SignalModel::probe_divergence(double phi) const {
  return signal::probe_divergence(frame_.probe, frame_phi(phi));
}

double SignalModel::signal_divergence(double phi) const {
  const double fp = frame_phi(phi);
  const auto& r = red_;
  const double q = r.q(fp);
  return signal::probe_divergence(frame_.probe, fp) * std::sqrt(r.denom) /
         std::sqrt(1.0 + 2.0 * r.product * r.product / q);
}

double SignalModel::forward_ratio(double phi) const {
  return d2n_perp({0.0, phi}) / probe_d2n({0.0, phi});
}

double SignalModel::flip_ratio(const AngularPoint& pt) const {
  const double fp = frame_phi(pt.phi);
  const double ow = frame_.probe.photon_energy * red_.w;
  const double gap = angular_coefficient(fp) - 0.5 * ow * ow * red_.q(fp);
  return base_ * f_ * offset_factor() / red_.denom * std::exp(-gap * pt.theta * pt.theta);
}

double SignalModel::require_purity() const {
  if (!frame_.purity) throw PreconditionError("purity is not set");
  return *frame_.purity;
}

double SignalModel::theta_equal_squared(double phi, double f_scale) const {
  const double purity = require_purity();
  const double fp = frame_phi(phi);
  const auto& r = red_;
  const double arg = base_ * f_ * f_scale / (r.denom * purity);
  if (!(arg > 0.0)) {
    throw DomainError("signal nowhere exceeds purity floor (log argument " + fmt(arg) + ")");
  }
  const double x = frame_.offsets.x0 / r.w;
  const double y = frame_.offsets.y0 / r.w;
  const double o = (1.0 + 2.0 * r.u2 * r.u2) * x * x + (1.0 + 2.0 * r.u1 * r.u1) * y * y;
  const double q = r.q(fp);
  const double den = r.product * r.product - q * r.sum * r.sum;
  const double scale = r.product * r.product + q * r.sum * r.sum;
  if (std::abs(den) <= 1e-9 * scale) {
    throw DomainError("theta_equal: denominator (u1 u2)^2 - q (u1+u2)^2 vanishes (" + fmt(den) +
                      ")");
  }
  const double ow = frame_.probe.photon_energy * r.w;
  const double log_term = r.denom * std::log(arg);
  const double numer = log_term - 4.0 * o;
  // Cancellation floor: purity set exactly to the forward ratio gives 0.
  if (std::abs(numer) <= 1e-12 * (std::abs(log_term) + 4.0 * o + r.denom)) return 0.0;
  return numer / (ow * ow * den);
}

double SignalModel::theta_equal(double phi) const {
  const double t2 = theta_equal_squared(phi);
  if (t2 < 0.0) {
    throw DomainError("theta_equal: forward signal ratio " + fmt(forward_ratio(phi)) +
                      " already exceeds purity " + fmt(require_purity()) +
                      "; theta_equal^2 = " + fmt(t2));
  }
  return std::sqrt(t2);
}

double SignalModel::dn_perp_dphi(double phi) const {
  const double fp = frame_phi(phi);
  const auto& r = red_;
  return frame_.probe.photon_count / (2.0 * kPi) * base_ * f_ * r.product /
         (r.q(fp) + 2.0 * r.product * r.product) * offset_factor();
}

double SignalModel::dn_perp_gt_dphi(double phi) const {
  const double purity = require_purity();
  const double fp = frame_phi(phi);
  const auto& r = red_;
  const double q = r.q(fp);
  const double p2 = r.product * r.product;
  const double split = r.sum * r.sum - p2 / q;
  if (std::abs(split) <= 1e-9 * (r.sum * r.sum + p2 / q)) {
    // Ratio is flat in theta on this locus: all or nothing.
    return forward_ratio(phi) >= purity ? dn_perp_dphi(phi) : 0.0;
  }
  theta_equal(phi);  // existence check
  const double x = frame_.offsets.x0 / r.w;
  const double y = frame_.offsets.y0 / r.w;
  const double o = (1.0 + 2.0 * r.u2 * r.u2) * x * x + (1.0 + 2.0 * r.u1 * r.u1) * y * y;
  const double t2 = theta_equal_squared(phi);
  if (t2 == 0.0) return dn_perp_dphi(phi);
  const double amp = std::sqrt(base_ * f_ / (r.denom * purity));
  const double expo = r.denom / split;
  return frame_.probe.photon_count / (2.0 * kPi) * purity * r.product * r.denom / (q + 2.0 * p2) *
         std::exp(expo * std::log(amp) - 2.0 * o / split);
}

double SignalModel::theta_integral(double phi, double lo, double hi, double tol) const {
  const double a = angular_coefficient(frame_phi(phi));
  if (!std::isfinite(hi)) hi = std::sqrt(lo * lo + 80.0 / a);
  if (hi <= lo) return 0.0;
  const auto edges = quadrature::panel_edges(lo, hi, 16);
  const auto est = quadrature::integrate(
      [&](double t) { return t * d2n_perp({t, phi}); }, edges, tol);
  quadrature::require_converged(est, tol * 10.0, "theta integral", 1e-300);
  return est.value;
}

double SignalModel::dn_perp_gt_dphi_numeric(double phi, double tol) const {
  return theta_integral(phi, theta_equal(phi), INFINITY, tol);
}

double SignalModel::n_perp_gt_circular() const {
  const double purity = require_purity();
  const auto& r = red_;
  if (std::abs(r.u1 - r.u2) > 1e-12 * std::max(r.u1, r.u2)) {
    throw PreconditionError(
        "n_perp_gt_circular requires w1 == w2; integrate dn_perp_gt_dphi over phi instead");
  }
  theta_equal(0.0);  // existence check
  const double u2 = r.u1 * r.u1;
  const double d = 1.0 + 8.0 * u2;
  const double amp = std::sqrt(base_ * f_ / (d * purity));
  const double rr = (frame_.offsets.x0 * frame_.offsets.x0 + frame_.offsets.y0 * frame_.offsets.y0) /
                    (r.w * r.w);
  return frame_.probe.photon_count * purity * d / (1.0 + 2.0 * u2) *
         std::exp(d / (3.0 * u2) * std::log(amp) - 2.0 * (1.0 + 2.0 * u2) * rr / (3.0 * u2));
}

double SignalModel::n_perp_gt(double tol) const {
  // Integrand depends on phi through cos^2 and sin^2 in the ellipse frame.
  const auto edges = quadrature::panel_edges(delta0_, delta0_ + 0.5 * kPi, 4);
  const auto est =
      quadrature::integrate([&](double phi) { return dn_perp_gt_dphi(phi); }, edges, tol);
  quadrature::require_converged(est, tol * 10.0, "phi integral", 1e-300);
  return 4.0 * est.value;
}

std::pair<double, double> SignalModel::background_crossings(double phi) const {
  if (!frame_.background) throw PreconditionError("background is not set");
  const double b = frame_.background->b;
  const double eps = frame_.background->epsilon;
  const double eps2 = eps * eps;
  const double first2 = theta_equal_squared(phi, 1.0 + b / eps2);

  // Second crossing: the wide halo overtakes the signal again.
  const double purity = require_purity();
  const auto& r = red_;
  const double fp = frame_phi(phi);
  const double q = r.q(fp);
  const double x = frame_.offsets.x0 / r.w;
  const double y = frame_.offsets.y0 / r.w;
  const double o = (1.0 + 2.0 * r.u2 * r.u2) * x * x + (1.0 + 2.0 * r.u1 * r.u1) * y * y;
  const double arg = base_ * f_ * (1.0 / eps2 + 1.0 / b) / (r.denom * purity);
  const double ow = frame_.probe.photon_energy * r.w;
  const double den2 =
      r.product * r.product - q * (eps2 * r.sum * r.sum + 0.5 * (eps2 - 1.0));
  const double second2 = (r.denom * std::log(arg) - 4.0 * o) / (ow * ow * den2);

  const double first = first2 > 0.0 ? std::sqrt(first2) : 0.0;
  if (!(second2 > 0.0) || std::sqrt(second2) <= first) {
    throw DomainError("no discernible window: theta_i^2 = " + fmt(first2) +
                      ", theta_ii^2 = " + fmt(second2));
  }
  return {first, std::sqrt(second2)};
}

double SignalModel::n_perp_gt_background(double tol) const {
  const auto edges = quadrature::panel_edges(delta0_, delta0_ + 0.5 * kPi, 4);
  const auto est = quadrature::integrate(
      [&](double phi) {
        const auto [lo, hi] = background_crossings(phi);
        return theta_integral(phi, lo, hi, 0.1 * tol);
      },
      edges, tol);
  quadrature::require_converged(est, tol * 10.0, "background phi integral", 1e-300);
  return 4.0 * est.value;
}

std::pair<double, double> SignalModel::scaling_exponents() const {
  const auto& r = red_;
  const double b1 = 2.0 + (1.0 + 2.0 * r.u2 * r.u2) / (r.u1 * r.u1 + 2.0 * r.u1 * r.u2);
  const double b2 = 2.0 + (1.0 + 2.0 * r.u1 * r.u1) / (r.u2 * r.u2 + 2.0 * r.u1 * r.u2);
  return {b1, b2};
}

double SignalModel::heinzl_estimate() const {
  const double m = Constants::electron_mass;
  const double a2 = Constants::fine_structure * Constants::fine_structure;
  const double energy = frame_.pump.pulse_energy * frame_.probe.photon_energy / (m * m);
  const double compton = 1.0 / (m * frame_.pump.waist);
  const double zt = frame_.pump.rayleigh_range() / frame_.pump.duration;
  return frame_.probe.photon_count * 2048.0 * a2 * a2 / (225.0 * kPi) * energy * energy *
         std::pow(compton, 4) * zt * zt;
}

double SignalModel::heinzl_ratio() const { return heinzl_estimate() / n_perp_point_nooffset(); }

double SignalModel::heinzl_ratio_equal_duration_limit() const {
  const double zr = frame_.pump.rayleigh_range();
  const double tau = frame_.pump.duration;
  const double zt = zr / tau;
  return 512.0 * std::sqrt(kPi / 3.0) * zt * zt /
         ffactor::f_limit_equal_durations_small_zR(zr, tau);
}

double d2n_perp(const Scenario& s, const AngularPoint& pt) { return SignalModel(s).d2n_perp(pt); }
double n_perp_total(const Scenario& s) { return SignalModel(s).n_perp_total(); }
double n_perp_point(const Scenario& s) { return SignalModel(s).n_perp_point(); }
double n_perp_point_nooffset(const Scenario& s) { return SignalModel(s).n_perp_point_nooffset(); }

double probe_d2n(const beams::ProbePulse& probe, const AngularPoint& pt) {
  const double phi = pt.phi - probe.ellipse_angle;
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const double w2q = probe.waist_1 * probe.waist_1 * c * c + probe.waist_2 * probe.waist_2 * s * s;
  const double om = probe.photon_energy;
  return probe.photon_count / (2.0 * kPi) * om * om * probe.waist_1 * probe.waist_2 *
         std::exp(-0.5 * om * om * pt.theta * pt.theta * w2q);
}

double probe_divergence(const beams::ProbePulse& probe, double phi) {
  const double p = phi - probe.ellipse_angle;
  const double c = std::cos(p);
  const double s = std::sin(p);
  return 2.0 / (probe.photon_energy *
                std::sqrt(probe.waist_1 * probe.waist_1 * c * c + probe.waist_2 * probe.waist_2 * s * s));
}

double signal_divergence(const Scenario& s, double phi) {
  return SignalModel(s).signal_divergence(phi);
}
double theta_equal(const Scenario& s, double phi) { return SignalModel(s).theta_equal(phi); }
double dn_perp_dphi(const Scenario& s, double phi) { return SignalModel(s).dn_perp_dphi(phi); }
double dn_perp_gt_dphi(const Scenario& s, double phi) {
  return SignalModel(s).dn_perp_gt_dphi(phi);
}
double n_perp_gt_circular(const Scenario& s) { return SignalModel(s).n_perp_gt_circular(); }
std::pair<double, double> background_crossings(const Scenario& s, double phi) {
  return SignalModel(s).background_crossings(phi);
}
double n_perp_gt_background(const Scenario& s) { return SignalModel(s).n_perp_gt_background(); }
std::pair<double, double> scaling_exponents(const Scenario& s) {
  return SignalModel(s).scaling_exponents();
}
double heinzl_estimate(const Scenario& s) { return SignalModel(s).heinzl_estimate(); }
double heinzl_ratio(const Scenario& s) { return SignalModel(s).heinzl_ratio(); }

double spectrum_width(double tau, double T) {
  if (!(tau > 0.0) || !(T > 0.0)) throw DomainError("spectrum_width: durations must be positive");
  const double r = tau / T;
  return 8.0 / tau * std::sqrt(2.0 + r * r);
}

SignalReport make_report(const Scenario& s) {
  const SignalModel model(s);
  SignalReport rep;
  rep.n_perp = model.n_perp_total();
  rep.n_perp_over_n = rep.n_perp / model.frame_scenario().probe.photon_count;
  rep.f_value = model.f_value();
  rep.f_args = model.f_arguments();
  const double delta0 = s.probe.ellipse_angle;
  for (int k = 0; k <= 6; ++k) {
    const double phi = delta0 + k * kPi / 12.0;
    rep.divergence_by_phi.push_back({phi, model.probe_divergence(phi), model.signal_divergence(phi)});
  }
  if (s.purity) {
    const auto& r = model.reduced();
    if (s.background) {
      rep.discernible_n_perp = model.n_perp_gt_background();
    } else if (std::abs(r.u1 - r.u2) <= 1e-12 * std::max(r.u1, r.u2)) {
      rep.discernible_n_perp = model.n_perp_gt_circular();
    } else {
      rep.discernible_n_perp = model.n_perp_gt();
    }
  }
  rep.warnings = beams::scenario_warnings(s);
  return rep;
}

}  // namespace vacbir::signal
