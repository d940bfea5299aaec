#include "vacbir/beams.hpp"

#include <cmath>

#include "vacbir/errors.hpp"

namespace vacbir::beams {
namespace {

constexpr double kPi = 3.14159265358979323846;

void require_positive(double v, const char* field) {
  if (!std::isfinite(v) || v <= 0.0) throw ValidationError(field, "must be finite and > 0");
}

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) throw ValidationError(field, "must be finite");
}

}  // namespace

double PumpPulse::rayleigh_range() const { return kPi * waist * waist / wavelength; }

void validate(const Scenario& s) {
  require_positive(s.pump.wavelength, "pump.wavelength");
  require_positive(s.pump.pulse_energy, "pump.pulse_energy");
  require_positive(s.pump.duration, "pump.duration");
  require_positive(s.pump.waist, "pump.waist");
  if (s.pump.waist_mode == EffectiveWaistMode::explicit_value) {
    require_positive(s.pump.explicit_waist, "pump.explicit_waist");
    if (s.pump.explicit_waist < s.pump.waist) {
      throw ValidationError("pump.explicit_waist", "effective waist must not be below w0");
    }
  }

  require_positive(s.probe.photon_energy, "probe.photon_energy");
  require_positive(s.probe.photon_count, "probe.photon_count");
  require_positive(s.probe.duration, "probe.duration");
  require_positive(s.probe.waist_1, "probe.waist_1");
  require_positive(s.probe.waist_2, "probe.waist_2");
  require_finite(s.probe.ellipse_angle, "probe.ellipse_angle");

  require_finite(s.offsets.x0, "offsets.x0");
  require_finite(s.offsets.y0, "offsets.y0");
  require_finite(s.offsets.z0, "offsets.z0");
  require_finite(s.offsets.t0, "offsets.t0");

  if (s.purity) {
    const double p = *s.purity;
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0) {
      throw ValidationError("purity", "must lie strictly between 0 and 1");
    }
  }
  if (s.background) {
    const double eps = s.background->epsilon;
    const double b = s.background->b;
    if (!std::isfinite(eps) || eps <= 0.0 || eps >= 0.5) {
      throw ValidationError("background.epsilon", "must lie in (0, 0.5)");
    }
    if (!std::isfinite(b) || b <= 0.0) throw ValidationError("background.b", "must be > 0");
    if (b >= eps * eps) {
      throw ValidationError("background.b", "must be below epsilon^2");
    }
  }
}

Scenario to_ellipse_frame(const Scenario& s) {
  Scenario out = s;
  const double c = std::cos(s.probe.ellipse_angle);
  const double sn = std::sin(s.probe.ellipse_angle);
  out.offsets.x0 = s.offsets.x0 * c - s.offsets.y0 * sn;
  out.offsets.y0 = s.offsets.x0 * sn + s.offsets.y0 * c;
  out.probe.ellipse_angle = 0.0;
  return out;
}

double effective_waist(const PumpPulse& pump) {
  switch (pump.waist_mode) {
    case EffectiveWaistMode::average:
      return 0.5 * pump.waist * (std::sqrt(2.0) + std::asinh(1.0));
    case EffectiveWaistMode::naive:
      return pump.waist;
    case EffectiveWaistMode::explicit_value:
      if (!(pump.explicit_waist >= pump.waist)) {
        throw ValidationError("pump.explicit_waist", "effective waist must not be below w0");
      }
      return pump.explicit_waist;
  }
  throw ValidationError("pump.waist_mode", "unknown mode");
}

double peak_field_squared(PulseRole role, const Scenario& s) {
  const double norm = 8.0 * std::sqrt(2.0 / kPi) / kPi;
  if (role == PulseRole::pump) {
    const auto& p = s.pump;
    return norm * p.pulse_energy / (p.waist * p.waist * p.duration);
  }
  const auto& p = s.probe;
  return norm * p.photon_count * p.photon_energy / (p.waist_1 * p.waist_2 * p.duration);
}

ffactor::FArgs f_args(const Scenario& s) {
  const double tau = s.pump.duration;
  const double T = s.probe.duration;
  const double r = tau / T;
  const double root = std::sqrt(1.0 + 0.5 * r * r);
  return {4.0 * s.pump.rayleigh_range() / T / root,
          2.0 * (s.offsets.z0 + s.offsets.t0) / T / root, T / tau};
}

std::vector<Warning> scenario_warnings(const Scenario& s) {
  std::vector<Warning> out;
  const double omega = s.probe.photon_energy;
  const double probe_wavelength = 2.0 * kPi / omega;
  const double waists[2] = {s.probe.waist_1, s.probe.waist_2};
  for (int i = 0; i < 2; ++i) {
    const std::string tag = "probe.waist_" + std::to_string(i + 1);
    const double w = waists[i];
    if (omega * w < 10.0) {
      out.push_back({"paraxial", tag + ": omega*w = " + std::to_string(omega * w) + " < 10"});
    }
    const double rr = (w / s.pump.waist) * (w / s.pump.waist) * s.pump.wavelength /
                      probe_wavelength;
    if (rr < 10.0) {
      out.push_back({"rayleigh_range",
                     tag + ": (w/w0)^2 lambda/lambda_p = " + std::to_string(rr) + " < 10"});
    }
  }
  return out;
}

double duration_from_fwhm(double fwhm) { return fwhm / std::sqrt(2.0 * std::log(2.0)); }

}  // namespace vacbir::beams
