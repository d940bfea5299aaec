#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vacbir/ffactor.hpp"

namespace vacbir::beams {

// All fields below are natural units (hbar = c = 1): lengths and times in
// 1/eV, energies in eV. Conversion from laboratory units happens in
// vacbir::units and the config loader.

enum class EffectiveWaistMode {
  average,   ///< w(z) averaged over one Rayleigh range, ~1.148 w0
  naive,     ///< w = w0
  explicit_value,
};

/// Optical high-intensity pump.
struct PumpPulse {
  double wavelength = 0.0;
  double pulse_energy = 0.0;
  double duration = 0.0;  ///< tau, taken literally as the field-model symbol
  double waist = 0.0;     ///< w0
  EffectiveWaistMode waist_mode = EffectiveWaistMode::average;
  double explicit_waist = 0.0;  ///< used only with EffectiveWaistMode::explicit_value

  double rayleigh_range() const;
};

/// XFEL probe with an elliptical transverse profile.
struct ProbePulse {
  double photon_energy = 0.0;  ///< omega
  double photon_count = 0.0;   ///< N
  double duration = 0.0;       ///< T
  double waist_1 = 0.0;
  double waist_2 = 0.0;
  double ellipse_angle = 0.0;  ///< delta0, radians
};

/// Spatial and temporal focus misalignment.
struct CollisionOffsets {
  double x0 = 0.0;
  double y0 = 0.0;
  double z0 = 0.0;
  double t0 = 0.0;
};

/// Probe halo of wider divergence theta/epsilon carrying a fraction b of
/// the forward photon density.
struct Background {
  double b = 0.0;
  double epsilon = 0.0;
};

struct Scenario {
  PumpPulse pump;
  ProbePulse probe;
  CollisionOffsets offsets;
  std::optional<double> purity;
  std::optional<Background> background;
};

/// Throws ValidationError (field named by config path) on the first
/// violated invariant.
void validate(const Scenario& s);

/// Rotates the transverse offsets into the probe-ellipse frame so that
/// w1 lies along x, and sets the ellipse angle to zero. Every reduced
/// formula assumes this frame.
Scenario to_ellipse_frame(const Scenario& s);

double effective_waist(const PumpPulse& pump);

enum class PulseRole { pump, probe };

/// Squared peak field amplitude in natural units (eV^4).
double peak_field_squared(PulseRole role, const Scenario& s);

/// chi = (4 zR/T)/s, chi0 = (2(z0+t0)/T)/s, rho = T/tau with
/// s = sqrt(1 + (tau/T)^2/2).
ffactor::FArgs f_args(const Scenario& s);

/// Non-fatal applicability notes attached to results.
struct Warning {
  std::string code;
  std::string message;
};

/// Flags paraxial (omega w_i < 10) and infinite-Rayleigh-range
/// ((w_i/w0)^2 lambda/lambda_p < 10) violations.
std::vector<Warning> scenario_warnings(const Scenario& s);

/// Intensity-FWHM to the literal duration symbol: divides by sqrt(2 ln 2).
double duration_from_fwhm(double fwhm);

}  // namespace vacbir::beams
