#pragma once

#include "vacbir/beams.hpp"

namespace vacbir::oracle {

using beams::Scenario;

/// Signal photon momentum k (cos phi sin theta, -sin phi sin theta, -cos theta).
struct FullRatePoint {
  double k = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Unreduced differential rate: the full trigonometric theta dependence,
/// the exact k dependence of every factor, and the l = +-1 erfc sum with
/// complex arguments. Only the counter-propagating q = +1 channel is
/// modelled; the (omega + k) channel is excluded here exactly as in the
/// reduced formulas, so comparisons isolate the reduction error.
class FullRate {
 public:
  explicit FullRate(const Scenario& s);

  /// d^3N / d^3k. Throws AccuracyError if an l-term overflows after the
  /// exponents are combined.
  double density(const FullRatePoint& pt) const;

  /// d^3N / (dk dtheta dphi) = k^2 sin(theta) density.
  double measure_density(const FullRatePoint& pt) const;

  const Scenario& frame_scenario() const { return frame_; }
  /// Lab-frame azimuth of the probe ellipse axis.
  double ellipse_angle() const { return delta0_; }
  double k_min() const;
  double k_max() const;
  double theta_max() const;
  double spectral_width() const { return dk_; }

 private:
  Scenario frame_;
  double delta0_ = 0.0;
  double w_ = 0.0;
  double zr_ = 0.0;
  double s2_ = 0.0;
  double denom_ = 0.0;  // w^4 + 2 w^2 (w1^2 + w2^2) + 4 (w1 w2)^2
  double prefactor_ = 0.0;
  double offset_exponent_ = 0.0;
  double half_longitudinal_ = 0.0;
  double dk_ = 0.0;
};

double d3n_full(const Scenario& s, const FullRatePoint& pt);

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Nested adaptive Gauss-Kronrod over k in omega +- 6 dk, theta in
/// [0, min(12/(omega min(w1, w2, w)), pi/4)] and phi in [0, 2 pi). The
/// k panels run concurrently and are summed in panel order. Beyond pi/4
/// the integrand is negligible for any paraxial probe (omega w_i >= 10).
/// Throws AccuracyError carrying the best estimate if the error target
/// `tol` (relative) is missed.
Estimate integrate_full(const Scenario& s, double tol = 1e-3);

/// dN/dk: the theta and phi integral at fixed k.
double k_marginal(const FullRate& rate, double k, double tol = 1e-6);

struct SpectralProfile {
  double peak_k = 0.0;
  double peak_value = 0.0;
  double lower_k = 0.0;  ///< 1/e^2 point below the peak
  double upper_k = 0.0;  ///< 1/e^2 point above the peak
  double width() const { return upper_k - lower_k; }
};

/// Locates the maximum of dN/dk and its two 1/e^2 points.
SpectralProfile k_marginal_profile(const Scenario& s, double tol = 1e-6);

}  // namespace vacbir::oracle
