#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "vacbir/beams.hpp"
#include "vacbir/ffactor.hpp"

namespace vacbir::signal {

using beams::Scenario;

/// Far-field direction in the small-angle regime.
struct AngularPoint {
  double theta = 0.0;  ///< polar angle, >= 0
  double phi = 0.0;    ///< azimuth

  static AngularPoint from_cartesian(double x, double y);
  double x() const;  ///< theta cos(phi)
  double y() const;  ///< theta sin(phi)
};

/// Waists measured in units of the effective pump waist w.
struct ReducedWaists {
  double w = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
  double sum = 0.0;      ///< u1 + u2
  double product = 0.0;  ///< u1 u2
  double denom = 0.0;    ///< 1 + 2 (u1 + u2)^2

  double q(double phi) const;  ///< u1^2 cos^2 phi + u2^2 sin^2 phi
};

/// Evaluates the reduced observables for one scenario.
///
/// The constructor validates, rotates into the probe-ellipse frame and
/// evaluates F once. Azimuths passed to member functions are in the
/// user's frame. All counts are absolute photon numbers.
class SignalModel {
 public:
  explicit SignalModel(const Scenario& s, double f_tol = 1e-8);

  const Scenario& frame_scenario() const { return frame_; }
  const ReducedWaists& reduced() const { return red_; }
  const ffactor::FArgs& f_arguments() const { return args_; }
  double f_value() const { return f_; }

  /// 4 alpha^4/(25 (3 pi)^{3/2}) (W omega/m^2)^2 (lambda_C/w0)^4.
  double base() const { return base_; }

  /// exp(-4 [(1+2u2^2)(x0/w)^2 + (1+2u1^2)(y0/w)^2] / (1+2S^2)).
  double offset_factor() const;

  double d2n_perp(const AngularPoint& pt) const;
  double n_perp_total() const;
  double n_perp_point() const;
  double n_perp_point_nooffset() const;

  double probe_d2n(const AngularPoint& pt) const;
  double probe_divergence(double phi) const;
  double signal_divergence(double phi) const;

  /// d2n_perp / probe_d2n at theta = 0.
  double forward_ratio(double phi) const;
  /// d2n_perp / probe_d2n, formed from the exponent difference so it stays
  /// finite where the probe density underflows.
  double flip_ratio(const AngularPoint& pt) const;

  /// Squared crossing angle with F scaled by `f_scale`; may be negative.
  double theta_equal_squared(double phi, double f_scale = 1.0) const;
  double theta_equal(double phi) const;

  double dn_perp_dphi(double phi) const;
  double dn_perp_gt_dphi(double phi) const;
  /// Direct theta quadrature of d2n_perp from theta_equal(phi).
  double dn_perp_gt_dphi_numeric(double phi, double tol = 1e-10) const;
  double n_perp_gt_circular() const;
  /// Azimuthal quadrature of dn_perp_gt_dphi.
  double n_perp_gt(double tol = 1e-10) const;

  std::pair<double, double> background_crossings(double phi) const;
  double n_perp_gt_background(double tol = 1e-8) const;

  std::pair<double, double> scaling_exponents() const;
  double heinzl_estimate() const;
  double heinzl_ratio() const;
  /// The ratio with F replaced by its equal-duration small-zR limit.
  double heinzl_ratio_equal_duration_limit() const;

 private:
  double frame_phi(double phi) const { return phi - delta0_; }
  double angular_coefficient(double phi) const;
  double theta_integral(double phi, double lo, double hi, double tol) const;
  double require_purity() const;

  Scenario frame_;
  double delta0_ = 0.0;
  ReducedWaists red_;
  ffactor::FArgs args_;
  double f_tol_ = 1e-8;
  double f_ = 0.0;
  double base_ = 0.0;
  mutable std::optional<double> f_nooffset_;
};

ReducedWaists reduce(const Scenario& s);

// Free-function forms; each builds a SignalModel.
double d2n_perp(const Scenario& s, const AngularPoint& pt);
double n_perp_total(const Scenario& s);
double n_perp_point(const Scenario& s);
double n_perp_point_nooffset(const Scenario& s);
double probe_d2n(const beams::ProbePulse& probe, const AngularPoint& pt);
double probe_divergence(const beams::ProbePulse& probe, double phi);
double signal_divergence(const Scenario& s, double phi);
double theta_equal(const Scenario& s, double phi);
double dn_perp_dphi(const Scenario& s, double phi);
double dn_perp_gt_dphi(const Scenario& s, double phi);
double n_perp_gt_circular(const Scenario& s);
std::pair<double, double> background_crossings(const Scenario& s, double phi);
double n_perp_gt_background(const Scenario& s);
std::pair<double, double> scaling_exponents(const Scenario& s);
double heinzl_estimate(const Scenario& s);
double heinzl_ratio(const Scenario& s);

/// 1/e^2 spectral width (8/tau) sqrt(2 + (tau/T)^2), natural units.
double spectrum_width(double tau, double T);

struct DivergenceSample {
  double phi = 0.0;
  double probe = 0.0;
  double signal = 0.0;
};

struct SignalReport {
  double n_perp = 0.0;
  double n_perp_over_n = 0.0;
  double f_value = 0.0;
  ffactor::FArgs f_args;
  std::vector<DivergenceSample> divergence_by_phi;
  std::optional<double> discernible_n_perp;
  std::vector<beams::Warning> warnings;
};

/// Divergences are sampled at phi = k pi/12, k = 0..6. The discernible
/// count uses the background window when a background is configured,
/// the circular closed form for w1 = w2, and azimuthal quadrature
/// otherwise.
SignalReport make_report(const Scenario& s);

}  // namespace vacbir::signal
